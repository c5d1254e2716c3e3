#include "scw/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace scw {

Lattice::Lattice(std::vector<std::string> names, RationalMatrix gram, bool blowup)
    : names_(std::move(names)), gram_(std::move(gram)), blowup_(blowup) {}

LatticePtr Lattice::blowup(std::vector<std::string> exceptional) {
  std::vector<std::string> names;
  names.reserve(exceptional.size() + 1);
  names.emplace_back("L");
  for (auto& e : exceptional) names.push_back(std::move(e));
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw LatticeError("duplicate basis symbol in blowup lattice");
  const std::size_t n = names.size();
  RationalMatrix gram(n, std::vector<Rational>(n, 0));
  gram[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) gram[i][i] = -1;
  return LatticePtr(new Lattice(std::move(names), std::move(gram), true));
}

LatticePtr Lattice::abstract(std::vector<std::string> names, RationalMatrix gram) {
  const std::size_t n = names.size();
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != n) throw LatticeError("duplicate generator name");
  if (gram.size() != n) throw DimensionError("gram dimension does not match generator count");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) throw DimensionError("gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram[i][j] != gram[j][i])
        throw LatticeError("gram matrix is not symmetric at (" + names[i] + ", " + names[j] + ")");
    }
  }
  return LatticePtr(new Lattice(std::move(names), std::move(gram), false));
}

std::optional<std::size_t> Lattice::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool Lattice::same_as(const Lattice& other) const {
  return this == &other || (names_ == other.names_ && gram_ == other.gram_);
}

DivisorClass::DivisorClass(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw LatticeError("divisor class without a lattice");
  coeffs_.assign(lattice_->rank(), Rational(0));
}

DivisorClass DivisorClass::basis(LatticePtr lattice, std::string_view symbol) {
  DivisorClass d(std::move(lattice));
  auto i = d.lattice_->index_of(symbol);
  if (!i) throw LatticeError("unknown basis symbol '" + std::string(symbol) + "'");
  d.coeffs_[*i] = 1;
  return d;
}

DivisorClass DivisorClass::from_terms(LatticePtr lattice,
                                      std::span<const std::pair<std::string, Rational>> terms) {
  DivisorClass d(std::move(lattice));
  for (const auto& [symbol, c] : terms) {
    auto i = d.lattice_->index_of(symbol);
    if (!i) throw LatticeError("unknown basis symbol '" + symbol + "'");
    d.coeffs_[*i] += c;
  }
  return d;
}

DivisorClass DivisorClass::from_terms(
    LatticePtr lattice, std::initializer_list<std::pair<std::string, Rational>> terms) {
  return from_terms(std::move(lattice), std::span(terms.begin(), terms.size()));
}

Rational DivisorClass::coeff(std::string_view symbol) const {
  auto i = lattice_->index_of(symbol);
  if (!i) throw LatticeError("unknown basis symbol '" + std::string(symbol) + "'");
  return coeffs_[*i];
}

bool DivisorClass::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return scw::is_integral(c); });
}

bool DivisorClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

void DivisorClass::require_same(const DivisorClass& other) const {
  if (!lattice_ || !other.lattice_ || !lattice_->same_as(*other.lattice_))
    throw LatticeError("divisor classes live on different lattices");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

bool DivisorClass::operator==(const DivisorClass& other) const {
  if (!lattice_ || !other.lattice_) return lattice_ == other.lattice_;
  return lattice_->same_as(*other.lattice_) && coeffs_ == other.coeffs_;
}

std::string DivisorClass::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) {
      out << scw::to_string(mag);
      if (!scw::is_integral(mag)) out << ' ';
    }
    out << lattice_->names()[i];
    first = false;
  }
  if (first) return "0";
  return out.str();
}

std::vector<std::string> DivisorClass::differing_symbols(const DivisorClass& other) const {
  require_same(other);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != other.coeffs_[i]) out.push_back(lattice_->names()[i]);
  }
  return out;
}

DivisorClass canonical_class(const LatticePtr& lattice) {
  if (!lattice || !lattice->is_blowup())
    throw LatticeError("canonical class is only defined on blowup lattices");
  DivisorClass k(lattice);
  k.set(0, -3);
  for (std::size_t i = 1; i < lattice->rank(); ++i) k.set(i, 1);
  return k;
}

Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  if (!a.lattice() || !b.lattice() || !a.lattice()->same_as(*b.lattice()))
    throw LatticeError("cannot intersect classes on different lattices");
  const Lattice& lat = *a.lattice();
  Rational total = 0;
  if (lat.is_blowup()) {
    for (std::size_t i = 0; i < a.size(); ++i) total += lat.form(i, i) * a[i] * b[i];
    return total;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) total += a[i] * lat.form(i, j) * b[j];
  }
  return total;
}

Rational gram_det(const RationalMatrix& gram) { return determinant(gram); }

Rational gram_det(std::span<const DivisorClass> classes) {
  const std::size_t n = classes.size();
  RationalMatrix g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g[i][j] = intersect(classes[i], classes[j]);
      g[j][i] = g[i][j];
    }
  }
  return determinant(g);
}

Rational adjunction_genus(const DivisorClass& d, const DivisorClass& canonical) {
  return 1 + (intersect(d, d) + intersect(canonical, d)) / 2;
}

std::variant<DivisorClass, NotDivisible> solve_divide(const DivisorClass& d, long n) {
  if (n <= 0) throw std::invalid_argument("divisor must be positive");
  DivisorClass out(d.lattice());
  for (std::size_t i = 0; i < d.size(); ++i) {
    Rational q = d[i] / n;
    if (!is_integral(q)) return NotDivisible{d.lattice()->names()[i], d[i]};
    out.set(i, q);
  }
  return out;
}

std::variant<LinearSolution, Unsolvable> solve_linear(const std::vector<Relation>& relations,
                                                      const LatticePtr& lattice) {
  std::set<std::string> unknown_set;
  for (const auto& r : relations) {
    for (const auto& [name, c] : r.unknowns) unknown_set.insert(name);
  }
  const std::vector<std::string> unknowns(unknown_set.begin(), unknown_set.end());
  const std::size_t rows = relations.size();
  const std::size_t cols = unknowns.size();

  IntegerMatrix a(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!relations[i].rhs.lattice() || !relations[i].rhs.lattice()->same_as(*lattice))
      throw LatticeError("relation '" + relations[i].label + "' is over a different lattice");
    for (std::size_t j = 0; j < cols; ++j) {
      auto it = relations[i].unknowns.find(unknowns[j]);
      if (it != relations[i].unknowns.end()) a[i][j] = it->second;
    }
  }

  const SmithForm snf = smith_normal_form(a);
  LinearSolution solution;
  solution.free_dimensions = cols - snf.rank;
  for (const auto& name : unknowns) solution.values.emplace(name, DivisorClass(lattice));

  for (std::size_t c = 0; c < lattice->rank(); ++c) {
    // U b for this basis coordinate
    std::vector<Rational> ub(rows, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t k = 0; k < rows; ++k) ub[i] += snf.U[i][k] * relations[k].rhs[c];
    }
    std::vector<Rational> y(cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
      const bool pivot = i < snf.rank;
      Rational value = pivot ? ub[i] / Rational(snf.S[i][i]) : ub[i];
      if ((pivot && !is_integral(value)) || (!pivot && value != 0)) {
        Unsolvable u;
        u.weights = snf.U[i];
        u.modulus = pivot ? snf.S[i][i] : Integer(0);
        u.symbol = lattice->names()[c];
        u.offending_value = ub[i];
        return u;
      }
      if (pivot) y[i] = value;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      Rational x = 0;
      for (std::size_t k = 0; k < cols; ++k) x += snf.V[j][k] * y[k];
      solution.values.at(unknowns[j]).set(c, x);
    }
  }
  return solution;
}

HodgeVerdict hodge_index_bound(const Rational& k2, const Rational& kd, std::optional<Rational> d2) {
  if (k2 <= 0) throw std::invalid_argument("index bound requires K^2 > 0");
  HodgeVerdict v;
  v.bound = kd * kd / k2;
  v.max_integral_square = floor(v.bound);
  if (d2 && *d2 > 0) v.passes = kd * kd >= k2 * *d2;
  return v;
}

}  // namespace scw
