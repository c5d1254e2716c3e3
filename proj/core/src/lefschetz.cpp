#include "scw/lefschetz.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "scw/groups.hpp"
#include "scw/lattice.hpp"

namespace scw {

InvolutionCounts involution_counts(const Integer& kr, const Integer& r2) { return {kr + 4, 2 - r2}; }

std::pair<Integer, Integer> involution_profile(const Integer& k, const Integer& tr) { return {k - 4, 2 - tr}; }

std::variant<Order3Counts, Infeasible> order3_counts(const Integer& kr, const Integer& r2, const Integer& tr) {
  const Rational sum = Rational(tr + 2 + kr + r2);
  const Rational weighted = 6 + make_rational(3 * kr, 2) - make_rational(r2, 2);
  if (!is_integral(weighted))
    return Infeasible{"r1 + 2 r2 = " + to_string(weighted) + " is not an integer"};
  const Rational r2_count = weighted - sum;
  const Rational r1_count = sum - r2_count;
  if (r1_count < 0 || r2_count < 0)
    return Infeasible{"negative fixed point count (r1, r2) = (" + to_string(r1_count) + ", " + to_string(r2_count) + ")"};
  return Order3Counts{r1_count.get_num(), r2_count.get_num()};
}

std::vector<Integer> involution_range_filter(const Integer& k2, const RangeConstraints& constraints) {
  if (k2 <= 0) throw std::invalid_argument("range filter requires K^2 > 0");
  std::vector<Integer> out;
  for (Integer kr = 1; kr + 4 <= constraints.max_fixed_points; ++kr) {
    const Integer k = kr + 4;
    if (k % 2 == 0) continue;
    if (constraints.hodge_r2 && kr * kr < k2 * *constraints.hodge_r2) continue;
    if (constraints.exclusions.count(kr)) continue;
    out.push_back(kr);
  }
  return out;
}

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

void Polynomial::add_term(const Integer& coeff, Monomial exponents) {
  exponents.resize(variables_.size(), 0);
  Integer& c = terms_[exponents];
  c += coeff;
  if (c == 0) terms_.erase(exponents);
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  // returns (coefficient, variable -> exponent) per term
  std::vector<std::pair<Integer, std::map<std::string, unsigned>>> terms() {
    std::vector<std::pair<Integer, std::map<std::string, unsigned>>> out;
    skip();
    if (at_end()) throw ParseError("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out.push_back(term(sign));
      first = false;
      skip();
    }
    return out;
  }

 private:
  std::pair<Integer, std::map<std::string, unsigned>> term(int sign) {
    Integer coeff = sign;
    std::map<std::string, unsigned> powers;
    for (;;) {
      skip();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff *= number();
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name += s_[pos_++];
        unsigned e = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          e = static_cast<unsigned>(number().get_ui());
        }
        if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) vars_.push_back(name);
        powers[name] += e;
      } else {
        fail("expected a number or variable");
      }
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    return {coeff, powers};
  }

  Integer number() {
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += s_[pos_++];
    if (digits.empty()) fail("expected digits");
    return Integer(digits);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  const std::string& s_;
  std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, std::vector<std::string> variables) {
  const bool fixed = !variables.empty();
  std::vector<std::string> vars = variables;
  auto terms = PolyParser(text, vars).terms();
  if (fixed && vars.size() != variables.size())
    throw ParseError("polynomial '" + text + "' uses a variable outside the declared list");
  Polynomial p(vars);
  for (const auto& [coeff, powers] : terms) {
    Monomial m(vars.size(), 0);
    for (const auto& [name, e] : powers) {
      m[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin())] = e;
    }
    p.add_term(coeff, m);
  }
  return p;
}

Integer Polynomial::evaluate(const std::vector<Integer>& values) const {
  if (values.size() != variables_.size()) throw std::invalid_argument("wrong number of polynomial arguments");
  Integer total = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), values[i].get_mpz_t(), m[i]);
      t *= p;
    }
    total += t;
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Integer mag = abs(c);
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += variables_[i];
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty()) out += mag.get_str();
    else if (mag == 1) out += factors;
    else out += mag.get_str() + "*" + factors;
  }
  return out;
}

std::vector<Point> diophantine_enumerate(const Polynomial& p, const std::vector<std::vector<Integer>>& domains,
                                         const std::set<Integer>& targets) {
  if (domains.size() != p.variables().size())
    throw std::invalid_argument("one domain per polynomial variable is required");
  std::vector<Point> out;
  Point cur(domains.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == domains.size()) {
      if (targets.count(p.evaluate(cur))) out.push_back(cur);
      return;
    }
    for (const auto& v : domains[i]) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<Integer> range(long lo, long hi) {
  std::vector<Integer> out;
  for (long v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

std::vector<TripleCase> classification_cases() {
  auto ints = [](std::initializer_list<long> v) {
    std::vector<Integer> out;
    for (long x : v) out.emplace_back(x);
    return out;
  };
  return {
      {"a", ints({7, 5, 5}), ints({5, 9, 7})},
      {"b", ints({5, 5, 3}), ints({7, 5, 1})},
      {"c", ints({5, 3, 1}), ints({1, 3, 1})},
  };
}

namespace {

std::string join(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string set_string(const std::vector<Integer>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + "}";
}

bool is_square(const Integer& v) {
  return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

}  // namespace

VerificationReport theorem11_consistency(const TripleCase& c) {
  VerificationReport r;
  if (c.kr.size() != 3 || c.products.size() != 3 || c.r2.size() != 3)
    throw std::invalid_argument("a case needs three K.R values, three products and three squares");
  const auto admissible = involution_range_filter(c.k2);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string n = "R" + std::to_string(i + 1);
    const bool ok = std::find(admissible.begin(), admissible.end(), c.kr[i]) != admissible.end();
    r.add("admissible:" + n, ok, "K.R = " + c.kr[i].get_str(), "in " + set_string(admissible));
    r.add("square:" + n, c.r2[i] == -1, "R^2 = " + c.r2[i].get_str(), "-1");
    const auto counts = involution_counts(c.kr[i], c.r2[i]);
    r.add("fixed-points:" + n, counts.k % 2 != 0 && counts.k <= 11 && counts.k >= 0, "k = " + counts.k.get_str(),
          "odd, at most 11");
    r.add("trace:" + n, counts.tr == 3, "tr = " + counts.tr.get_str(), "3");
  }
  // index pairs matching the order of `products`
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto [i, j] = pairs[p];
    const std::string n = "R" + std::to_string(i + 1) + "+R" + std::to_string(j + 1);
    const Integer square = c.r2[i] + c.r2[j] + 2 * c.products[p];
    const Integer kd = c.kr[i] + c.kr[j];
    r.add("parity:" + n, (square + kd) % 2 == 0, "D^2 + K.D = " + Integer(square + kd).get_str(), "even");
    r.add("effective-product:" + n, c.products[p] >= 0, "R.R' = " + c.products[p].get_str(), ">= 0");
  }
  // Gram matrix of K, R1, R2, R3 in a rank-3 unimodular lattice
  RationalMatrix g(4, std::vector<Rational>(4));
  g[0][0] = c.k2;
  for (std::size_t i = 0; i < 3; ++i) {
    g[0][i + 1] = g[i + 1][0] = c.kr[i];
    g[i + 1][i + 1] = c.r2[i];
  }
  for (std::size_t p = 0; p < 3; ++p) {
    g[pairs[p][0] + 1][pairs[p][1] + 1] = g[pairs[p][1] + 1][pairs[p][0] + 1] = c.products[p];
  }
  const Rational det4 = gram_det(g);
  r.add("picard-rank", det4 == 0, "det = " + to_string(det4), "0");
  std::vector<std::string> bad;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    RationalMatrix m;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == skip) continue;
      std::vector<Rational> row;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j != skip) row.push_back(g[i][j]);
      }
      m.push_back(std::move(row));
    }
    const Rational d = gram_det(m);
    if (!is_integral(d) || !is_square(d.get_num())) bad.push_back("minor without row " + std::to_string(skip) + " = " + to_string(d));
  }
  r.add("unimodular-minors", bad.empty(), bad.empty() ? "all squares" : bad.front(), "nonnegative squares");
  return r;
}

namespace {

Integer int_param(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  Rational v = parse_rational(it->second);
  if (!is_integral(v)) throw std::invalid_argument("parameter '" + key + "' must be an integer");
  return v.get_num();
}

VerificationReport involution_check(const std::map<std::string, std::string>& params) {
  VerificationReport r;
  const Integer kr = int_param(params, "KR"), r2 = int_param(params, "R2");
  const auto c = involution_counts(kr, r2);
  r.add("k", true, c.k.get_str(), "K.R + 4");
  r.add("tr", true, c.tr.get_str(), "2 - R^2");
  if (params.count("k")) r.add("k-expected", c.k == int_param(params, "k"), c.k.get_str(), params.at("k"));
  if (params.count("tr")) r.add("tr-expected", c.tr == int_param(params, "tr"), c.tr.get_str(), params.at("tr"));
  return r;
}

VerificationReport order3_check(const std::map<std::string, std::string>& params) {
  VerificationReport r;
  auto res = order3_counts(int_param(params, "KR"), int_param(params, "R2"), int_param(params, "tr"));
  if (auto* bad = std::get_if<Infeasible>(&res)) {
    r.add("feasible", false, "infeasible", "nonnegative integers", "", bad->reason);
    return r;
  }
  const auto& c = std::get<Order3Counts>(res);
  r.add("feasible", true, "(" + c.r1.get_str() + ", " + c.r2.get_str() + ")", "nonnegative integers");
  if (params.count("r1")) r.add("r1-expected", c.r1 == int_param(params, "r1"), c.r1.get_str(), params.at("r1"));
  if (params.count("r2")) r.add("r2-expected", c.r2 == int_param(params, "r2"), c.r2.get_str(), params.at("r2"));
  return r;
}

VerificationReport involution_range_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  const auto plain = involution_range_filter(7);
  r.add("range", plain == std::vector<Integer>{1, 3, 5, 7}, set_string(plain),
        "{1, 3, 5, 7}");
  RangeConstraints hodge;
  hodge.hodge_r2 = 1;
  const auto filtered = involution_range_filter(7, hodge);
  r.add("range-hodge", filtered == std::vector<Integer>{3, 5, 7}, set_string(filtered), "{3, 5, 7}");
  hodge.exclusions = {5, 7};
  const auto forced = involution_range_filter(7, hodge);
  r.add("range-excluded", forced == std::vector<Integer>{3}, set_string(forced), "{3}");
  r.add("fixed-points:KR=3", involution_counts(3, 1).k == 7, involution_counts(3, 1).k.get_str(), "7");
  r.add("fixed-points:KR=5", involution_counts(5, -1).k == 9, involution_counts(5, -1).k.get_str(), "9");

  // determinant of K, R, C with K^2 = 7, R^2 = 1, C^2 = -2, K.C = 0
  std::string mismatch;
  for (long a = -7; a <= 7 && mismatch.empty(); ++a) {
    for (long b = -4; b <= 4; ++b) {
      RationalMatrix g = {{7, a, 0}, {a, 1, b}, {0, b, -2}};
      const Rational d = gram_det(g);
      if (d != -14 + 2 * a * a - 7 * b * b) {
        mismatch = "a=" + std::to_string(a) + ", b=" + std::to_string(b) + ": " + to_string(d);
        break;
      }
    }
  }
  r.add("determinant-identity", mismatch.empty(), mismatch.empty() ? "-14 + 2a^2 - 7b^2" : mismatch,
        "-14 + 2a^2 - 7b^2");
  const Polynomial det = Polynomial::parse("-14 + 2*a^2 - 7*b^2", {"a", "b"});
  const auto sols = diophantine_enumerate(det, {{1, 3, 5, 7}, range(-4, 4)});
  r.add("determinant-zero", sols.empty(), std::to_string(sols.size()) + " solutions", "no solutions");
  return r;
}

VerificationReport cubic_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  const Polynomial p = Polynomial::parse("2*x^2*y + 2*x^2 + y^2 - 1", {"x", "y"});
  const auto sols = diophantine_enumerate(p, {range(0, 20), range(0, 20)});
  std::string got;
  for (const auto& s : sols) got += (got.empty() ? "" : " ") + join(s);
  r.add("solutions", sols.size() == 1 && sols[0] == Point{0, 1}, got.empty() ? "none" : got, "(0, 1)");
  std::string mismatch;
  for (long x = -5; x <= 5; ++x) {
    for (long y = -5; y <= 5; ++y) {
      RationalMatrix g = {{-1, x, x}, {x, -1, y}, {x, y, -1}};
      if (gram_det(g) != p.evaluate({x, y})) mismatch = "x=" + std::to_string(x) + ", y=" + std::to_string(y);
    }
  }
  r.add("determinant-identity", mismatch.empty(), mismatch.empty() ? p.to_string() : mismatch, p.to_string());
  return r;
}

VerificationReport index_bound_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  const auto v = hodge_index_bound(7, 6);
  r.add("bound", v.bound == Rational(36, 7), to_string(v.bound), "36/7");
  r.add("integral-bound", v.max_integral_square == 5, v.max_integral_square.get_str(), "5");
  // (R + R')^2 = 2 + 2x <= 5 gives x <= 1
  Integer x = 0;
  while (2 + 2 * (x + 1) <= v.max_integral_square) ++x;
  r.add("product-bound", x == 1, x.get_str(), "1");
  const auto pencil = hodge_index_bound(7, 3, Rational(1));
  r.add("pencil-index", pencil.passes, "9 >= 7", "pass");
  return r;
}

VerificationReport decomposition_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  // K^2 = 7, K.F = 3, F^2 = 1, K.A = 1, F.A = 0, A^2 = a
  std::string mismatch;
  for (long a : {-1L, -3L}) {
    RationalMatrix g = {{7, 3, 1}, {3, 1, 0}, {1, 0, a}};
    if (gram_det(g) != -2 * a - 1) mismatch = "a=" + std::to_string(a);
  }
  r.add("determinant-identity", mismatch.empty(), mismatch.empty() ? "-2a - 1" : mismatch, "-2a - 1");
  const auto sols = diophantine_enumerate(Polynomial::parse("-2*a - 1", {"a"}), {{-1, -3}}, {-1, 1});
  r.add("unimodular", sols.size() == 1 && sols[0] == Point{-1}, sols.empty() ? "none" : join(sols[0]), "(-1)");
  std::vector<Integer> genus_ok;
  for (long a = -5; a < 0; ++a) {
    Rational pa = 1 + make_rational(a + 1, 2);
    if (is_integral(pa) && pa >= 0) genus_ok.emplace_back(a);
  }
  r.add("adjunction", genus_ok == std::vector<Integer>{-3, -1}, set_string(genus_ok), "{-3, -1}");
  return r;
}

VerificationReport degree_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  auto lat = Lattice::abstract({"K", "F"}, {{7, 3}, {3, 1}});
  const auto k = DivisorClass::basis(lat, "K"), f = DivisorClass::basis(lat, "F");
  const Rational pa = adjunction_genus(f, k);
  r.add("genus-F", pa == 3, to_string(pa), "3");
  const Rational kf2 = self_intersection(k + f);
  r.add("square-K+F", kf2 == 14, to_string(kf2), "14");
  r.add("degree", kf2 - 2 == 12, to_string(kf2 - 2), "12");
  r.add("dihedral-order", (kf2 - 2) / 2 == 6, to_string((kf2 - 2) / 2), "6");
  auto lat2 = Lattice::abstract({"K", "A", "B"}, {{7, 2, 1}, {2, 0, 1}, {1, 1, -1}});
  const auto k2 = DivisorClass::basis(lat2, "K");
  r.add("genus-A", adjunction_genus(DivisorClass::basis(lat2, "A"), k2) == 2,
        to_string(adjunction_genus(DivisorClass::basis(lat2, "A"), k2)), "2");
  r.add("genus-B", adjunction_genus(DivisorClass::basis(lat2, "B"), k2) == 1,
        to_string(adjunction_genus(DivisorClass::basis(lat2, "B"), k2)), "1");
  return r;
}

VerificationReport order3_profile_check(const std::map<std::string, std::string>&) {
  return order3_check({{"KR", "2"}, {"R2", "-2"}, {"tr", "3"}, {"r1", "0"}, {"r2", "5"}});
}

VerificationReport quotient_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  auto lat = Lattice::abstract({"K", "F", "B", "aB"}, {{7, 3, 1, 1}, {3, 1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}});
  auto b = [&](const char* s) { return DivisorClass::basis(lat, s); };
  const DivisorClass d = b("K") - Rational(3) * b("F") - Rational(2) * b("B") - Rational(2) * b("aB");
  const Rational sq = self_intersection(d);
  r.add("square", sq == -18, to_string(sq), "-18");
  r.add("quotient-k2", sq / 6 == -3, to_string(sq / 6), "-3");
  return r;
}

VerificationReport fixed_curve_check(const std::map<std::string, std::string>&) {
  return involution_check({{"KR", "-1"}, {"R2", "-1"}, {"k", "3"}, {"tr", "3"}});
}

VerificationReport subgroup_check(const std::map<std::string, std::string>&) {
  VerificationReport r;
  FiniteAbelianGroup z2cubed({2, 2, 2});
  const auto subs = subgroups_of_order(z2cubed, 4);
  r.add("order-4-subgroups", subs.size() == 7, std::to_string(subs.size()), "7");
  r.add("common-involution", pairwise_common_involution(z2cubed, subs), "checked all pairs", "true");
  FiniteAbelianGroup h({2, 4});
  std::size_t klein = 0;
  for (const auto& s : subgroups_of_order(h, 4)) klein += is_elementary_abelian_2(h, s) ? 1 : 0;
  r.add("unique-klein", klein == 1, std::to_string(klein), "1");
  return r;
}

VerificationReport case_check(const std::string& label) {
  for (const auto& c : classification_cases()) {
    if (c.label == label) return theorem11_consistency(c);
  }
  throw std::invalid_argument("unknown case '" + label + "'");
}

}  // namespace

const std::vector<NamedCheck>& named_checks() {
  static const std::vector<NamedCheck> checks = {
      {"prop-2.2:involution",
       "isolated fixed points and trace of an involution",
       {"KR", "R2", "k?", "tr?"},
       involution_check,
       {{{"KR", "3"}, {"R2", "1"}, {"k", "7"}, {"tr", "1"}},
        {{"KR", "5"}, {"R2", "-1"}, {"k", "9"}, {"tr", "3"}},
        {{"KR", "7"}, {"R2", "-1"}, {"k", "11"}, {"tr", "3"}}}},
      {"prop-2.2:order3",
       "isolated fixed point types of an order-3 automorphism",
       {"KR", "R2", "tr", "r1?", "r2?"},
       order3_check,
       {{{"KR", "2"}, {"R2", "-2"}, {"tr", "3"}, {"r1", "0"}, {"r2", "5"}}}},
      {"lemma-2.2", "admissible K.R values and the determinant elimination", {}, involution_range_check, {}},
      {"lemma-3.1", "integer points of the dependency cubic", {}, cubic_check, {}},
      {"lemma-3.2", "index bound on the sum of two fixed curves", {}, index_bound_check, {}},
      {"lemma-3.4", "unimodularity forces A^2 = -1", {}, decomposition_check, {}},
      {"prop-3.5", "genus and degree counts for |K + F|", {}, degree_check, {}},
      {"prop-3.7", "five isolated points of type 1/3(1,2)", {}, order3_profile_check, {}},
      {"theorem-3.1:quotient", "K^2 of the dihedral quotient", {}, quotient_check, {}},
      {"lemma-4.1", "isolated fixed points of the involution fixing a line", {}, fixed_curve_check, {}},
      {"corollary-1.3", "order-4 subgroups of Z2^3 share involutions", {}, subgroup_check, {}},
      {"theorem-1.1:a", "numerical case (a)", {}, [](const auto&) { return case_check("a"); }, {}},
      {"theorem-1.1:b", "numerical case (b)", {}, [](const auto&) { return case_check("b"); }, {}},
      {"theorem-1.1:c", "numerical case (c)", {}, [](const auto&) { return case_check("c"); }, {}},
  };
  return checks;
}

const NamedCheck* find_named_check(const std::string& tag) {
  for (const auto& c : named_checks()) {
    if (c.tag == tag) return &c;
  }
  return nullptr;
}

VerificationReport run_named_check(const std::string& tag, const std::map<std::string, std::string>& params) {
  const NamedCheck* c = find_named_check(tag);
  if (!c) throw std::invalid_argument("unknown check tag '" + tag + "'");
  VerificationReport sub = c->run(params);
  VerificationReport out;
  for (auto check : sub.checks()) {
    check.name = tag + "/" + check.name;
    if (check.citation.empty()) check.citation = tag;
    out.add(std::move(check));
  }
  return out;
}

}  // namespace scw
