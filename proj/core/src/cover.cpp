#include "scw/cover.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace scw {

const NamedCharacter* CoverSpec::character(const std::string& name) const {
  for (const auto& c : characters) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const BranchComponent* CoverSpec::component(const std::string& name) const {
  for (const auto& b : branch) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::int64_t CoverSpec::multiplier() const { return canonical_multiplier > 0 ? canonical_multiplier : group.exponent(); }

namespace {

bool same_pair(const FiniteAbelianGroup& g, const CyclicPair& a, const CyclicPair& b) {
  CyclicPair na = normalize(g, a), nb = normalize(g, b);
  return na.generator == nb.generator && na.exponent == nb.exponent;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

DivisorClass zero(const CoverSpec& spec) { return DivisorClass(spec.base->lattice); }

}  // namespace

DivisorClass branch_divisor(const CoverSpec& spec, const CyclicPair& pair) {
  DivisorClass d = zero(spec);
  for (const auto& b : spec.branch) {
    if (same_pair(spec.group, b.pair, pair)) d += b.cls;
  }
  return d;
}

std::vector<CyclicPair> branch_pairs(const CoverSpec& spec) {
  std::vector<CyclicPair> out;
  for (const auto& b : spec.branch) {
    CyclicPair n = normalize(spec.group, b.pair);
    bool seen = std::any_of(out.begin(), out.end(), [&](const CyclicPair& p) {
      return p.generator == n.generator && p.exponent == n.exponent;
    });
    if (!seen) out.push_back(n);
  }
  return out;
}

DivisorClass order_relation_rhs(const CoverSpec& spec, const Residues& psi) {
  const std::int64_t ord = character_order(spec.group, psi);
  DivisorClass rhs = zero(spec);
  for (const auto& b : spec.branch) {
    const std::int64_t m = cyclic_order(spec.group, b.pair);
    const std::int64_t f = restriction_level(spec.group, b.pair, psi);
    rhs += make_rational(ord * f, m) * b.cls;
  }
  return rhs;
}

DivisorClass pair_correction(const CoverSpec& spec, const Residues& psi, const Residues& psi2) {
  DivisorClass corr = zero(spec);
  for (const auto& b : spec.branch) {
    const std::int64_t m = cyclic_order(spec.group, b.pair);
    if (restriction_level(spec.group, b.pair, psi) + restriction_level(spec.group, b.pair, psi2) >= m)
      corr += b.cls;
  }
  return corr;
}

namespace {

struct NamedTriple {
  const NamedCharacter* a;
  const NamedCharacter* b;
  const NamedCharacter* c;
};

// pairs of distinct named characters whose product is a third named one
std::vector<NamedTriple> named_triples(const CoverSpec& spec) {
  std::vector<NamedTriple> out;
  for (std::size_t i = 0; i < spec.characters.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.characters.size(); ++j) {
      Residues prod = spec.group.add(spec.characters[i].residues, spec.characters[j].residues);
      for (const auto& c : spec.characters) {
        if (c.name == spec.characters[i].name || c.name == spec.characters[j].name) continue;
        if (spec.group.normalize(c.residues) == prod) out.push_back({&spec.characters[i], &spec.characters[j], &c});
      }
    }
  }
  return out;
}

}  // namespace

VerificationReport validate_cover_data(const CoverSpec& spec, InterpolationOracle& oracle) {
  VerificationReport report;
  const auto& g = spec.group;

  bool pairs_ok = true;
  for (const auto& b : spec.branch) {
    try {
      normalize(g, b.pair);
      if (cyclic_order(g, b.pair) == 1) throw GroupError("trivial inertia subgroup");
    } catch (const GroupError& e) {
      pairs_ok = false;
      report.add("pair:" + b.name, false, format_residues(b.pair.generator) + "^" + std::to_string(b.pair.exponent),
                 "faithful character on a nontrivial cyclic subgroup", "", e.what());
    }
  }
  if (!pairs_ok) return report;

  // reducedness proxy: no curve listed twice; a class may repeat only when
  // it moves in a pencil (distinct members of one linear system)
  {
    std::vector<std::string> problems;
    std::set<std::string> names;
    for (std::size_t i = 0; i < spec.branch.size(); ++i) {
      if (!names.insert(spec.branch[i].name).second) problems.push_back("component '" + spec.branch[i].name + "' repeated");
      for (std::size_t j = i + 1; j < spec.branch.size(); ++j) {
        if (!(spec.branch[i].cls == spec.branch[j].cls)) continue;
        if (oracle.h0(*spec.base, spec.branch[i].cls) < 2)
          problems.push_back("'" + spec.branch[i].name + "' and '" + spec.branch[j].name + "' are the same rigid curve");
      }
    }
    report.add("reduced", problems.empty(), problems.empty() ? "reduced" : join(problems, "; "), "reduced");
  }

  for (const auto& b : spec.branch) {
    const std::size_t h = oracle.h0(*spec.base, b.cls);
    report.add("effective:" + b.name, h >= 1, "h0 = " + std::to_string(h), "h0 >= 1");
  }

  for (const auto& c : spec.characters) {
    auto it = spec.reduced_L.find(c.name);
    if (it == spec.reduced_L.end()) continue;
    const std::int64_t ord = character_order(g, c.residues);
    const DivisorClass lhs = Rational(ord) * it->second;
    const DivisorClass rhs = order_relation_rhs(spec, c.residues);
    const bool ok = lhs == rhs;
    report.add("order:" + c.name, ok, lhs.to_string(), rhs.to_string(), "",
               ok ? std::to_string(ord) + " L_" + c.name + " matches the branch sum"
                  : "differs at " + join(lhs.differing_symbols(rhs)));
  }

  for (const auto& t : named_triples(spec)) {
    auto la = spec.reduced_L.find(t.a->name), lb = spec.reduced_L.find(t.b->name), lc = spec.reduced_L.find(t.c->name);
    if (la == spec.reduced_L.end() || lb == spec.reduced_L.end() || lc == spec.reduced_L.end()) continue;
    const DivisorClass lhs = la->second + lb->second - pair_correction(spec, t.a->residues, t.b->residues);
    const bool ok = lhs == lc->second;
    report.add("pair:" + t.a->name + "*" + t.b->name, ok, lhs.to_string(), lc->second.to_string(), "",
               ok ? "" : "differs at " + join(lhs.differing_symbols(lc->second)));
  }
  return report;
}

std::variant<std::map<std::string, DivisorClass>, Unsolvable> solve_building_data(const CoverSpec& spec) {
  std::vector<Relation> relations;
  for (const auto& c : spec.characters) {
    const std::int64_t ord = character_order(spec.group, c.residues);
    if (ord == 1) continue;
    relations.push_back({{{c.name, Integer(ord)}}, order_relation_rhs(spec, c.residues), "order:" + c.name});
  }
  for (const auto& t : named_triples(spec)) {
    Relation r;
    r.unknowns[t.a->name] += 1;
    r.unknowns[t.b->name] += 1;
    r.unknowns[t.c->name] -= 1;
    r.rhs = pair_correction(spec, t.a->residues, t.b->residues);
    r.label = "pair:" + t.a->name + "*" + t.b->name;
    relations.push_back(std::move(r));
  }
  auto solved = solve_linear(relations, spec.base->lattice);
  if (auto* u = std::get_if<Unsolvable>(&solved)) return *u;
  return std::get<LinearSolution>(solved).values;
}

std::variant<CharacterSheaves, PathConflict> derive_all_L(const CoverSpec& spec) {
  const auto& g = spec.group;
  CharacterSheaves known;
  known.emplace(g.identity(), zero(spec));
  std::vector<Residues> generators;
  for (const auto& c : spec.characters) {
    auto it = spec.reduced_L.find(c.name);
    if (it == spec.reduced_L.end()) continue;
    Residues r = g.normalize(c.residues);
    auto [pos, inserted] = known.emplace(r, it->second);
    if (!inserted && !(pos->second == it->second))
      return PathConflict{r, pos->second, it->second, "two given classes for one character"};
    generators.push_back(r);
  }

  std::deque<Residues> queue;
  for (const auto& [r, cls] : known) queue.push_back(r);
  while (!queue.empty()) {
    Residues psi = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      Residues prod = g.add(psi, gen);
      DivisorClass candidate = known.at(psi) + known.at(gen) - pair_correction(spec, psi, gen);
      auto it = known.find(prod);
      if (it == known.end()) {
        known.emplace(prod, std::move(candidate));
        queue.push_back(prod);
      } else if (!(it->second == candidate)) {
        return PathConflict{prod, it->second, candidate,
                            "L_" + character_label(spec, psi) + " * L_" + character_label(spec, gen) +
                                " disagrees with an earlier derivation"};
      }
    }
  }
  if (known.size() != static_cast<std::size_t>(g.order()))
    throw CoverError("the given L classes do not generate the character group");

  for (const auto& [a, la] : known) {
    for (const auto& [b, lb] : known) {
      Residues prod = g.add(a, b);
      DivisorClass candidate = la + lb - pair_correction(spec, a, b);
      if (!(known.at(prod) == candidate))
        return PathConflict{prod, known.at(prod), candidate,
                            "pair rule fails for " + character_label(spec, a) + " * " + character_label(spec, b)};
    }
    const DivisorClass lhs = Rational(character_order(g, a)) * la;
    const DivisorClass rhs = order_relation_rhs(spec, a);
    if (!(lhs == rhs))
      return PathConflict{a, lhs, rhs, "order relation fails for " + character_label(spec, a)};
  }
  return known;
}

std::string character_label(const CoverSpec& spec, const Residues& psi) {
  const auto& g = spec.group;
  const Residues target = g.normalize(psi);
  if (g.is_identity(target)) return "1";
  for (const auto& c : spec.characters) {
    if (g.normalize(c.residues) == target) return c.name;
  }
  // smallest total exponent over the named characters
  const std::size_t k = spec.characters.size();
  std::vector<std::int64_t> exps(k, 0), best;
  std::int64_t best_total = -1;
  std::function<void(std::size_t, Residues, std::int64_t)> rec = [&](std::size_t i, Residues acc, std::int64_t total) {
    if (best_total >= 0 && total >= best_total) return;
    if (i == k) {
      if (acc == target) {
        best = exps;
        best_total = total;
      }
      return;
    }
    const std::int64_t ord = character_order(g, spec.characters[i].residues);
    for (std::int64_t e = 0; e < ord; ++e) {
      exps[i] = e;
      rec(i + 1, g.add(acc, g.scale(spec.characters[i].residues, e)), total + e);
    }
    exps[i] = 0;
  };
  rec(0, g.identity(), 0);
  if (best_total < 0) return format_residues(target);
  std::string out;
  for (std::size_t i = 0; i < k; ++i) {
    if (best[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += spec.characters[i].name;
    if (best[i] > 1) out += "^" + std::to_string(best[i]);
  }
  return out;
}

std::string to_string(PointVerdict verdict) {
  switch (verdict) {
    case PointVerdict::Smooth: return "smooth";
    case PointVerdict::NodeA1: return "node-a1";
    case PointVerdict::Unsupported: break;
  }
  return "unsupported";
}

namespace {

bool subset(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<BranchPointAnalysis> classify_branch_points(const CoverSpec& spec) {
  const auto& g = spec.group;
  std::vector<BranchPointAnalysis> out;
  for (std::size_t i = 0; i < spec.branch.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.branch.size(); ++j) {
      const auto& a = spec.branch[i];
      const auto& b = spec.branch[j];
      const Rational k = intersect(a.cls, b.cls);
      if (k <= 0) continue;
      BranchPointAnalysis p;
      p.first = a.name;
      p.second = b.name;
      p.points = floor(k);
      const Subgroup ca = subgroup_of(g, a.pair), cb = subgroup_of(g, b.pair);
      Subgroup common;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::inserter(common, common.end()));
      if (common.size() == 1) {
        p.inertia = generated_subgroup(g, {a.pair.generator, b.pair.generator});
        p.verdict = PointVerdict::Smooth;
      } else {
        const Subgroup& small = ca.size() <= cb.size() ? ca : cb;
        const Subgroup& large = ca.size() <= cb.size() ? cb : ca;
        if (subset(small, large) && large.size() == 4 && small.size() == 2) {
          p.inertia = large;
          p.verdict = PointVerdict::NodeA1;
        } else {
          p.inertia = generated_subgroup(g, {a.pair.generator, b.pair.generator});
          p.verdict = PointVerdict::Unsupported;
        }
      }
      p.preimage_count = g.order() / static_cast<std::int64_t>(p.inertia.size());
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::variant<PullbackRecord, InconsistentAssertion> pullback(const CoverSpec& spec, const BranchComponent& b) {
  PullbackRecord r;
  r.component = b.name;
  r.e = cyclic_order(spec.group, b.pair);
  r.n = b.asserted_components;
  if (r.n <= 0) return InconsistentAssertion{b.name, "component count must be positive"};
  r.d = make_rational(spec.group.order(), r.n * r.e);
  if (!is_integral(r.d))
    return InconsistentAssertion{b.name, "degree |G|/(n e) = " + to_string(r.d) + " is not an integer"};
  r.s = r.d * self_intersection(b.cls) / r.e;
  return r;
}

ConsistencyVerdict preimage_consistency(const CoverSpec& spec, const BranchComponent& b) {
  ConsistencyVerdict v;
  auto fail = [&](std::string why) {
    v.consistent = false;
    v.violations.push_back(std::move(why));
  };
  auto pb = pullback(spec, b);
  if (auto* bad = std::get_if<InconsistentAssertion>(&pb)) {
    fail(bad->detail);
    return v;
  }
  const auto& rec = std::get<PullbackRecord>(pb);
  const auto& g = spec.group;
  if (!is_integral(rec.s * rec.e)) fail("self-intersection " + to_string(rec.s) + " has denominator not dividing e");

  const Rational base_genus = adjunction_genus(b.cls, spec.base->canonical);
  if (!is_integral(base_genus) || base_genus < 0) {
    fail("base curve has genus " + to_string(base_genus));
    return v;
  }
  const Integer d = rec.d.get_num();
  const Subgroup c = subgroup_of(g, b.pair);
  std::vector<Residues> stabilizer_gens{b.pair.generator};
  Rational r = 0;
  Rational nodes = 0;  // A1 points on each component
  for (const auto& other : spec.branch) {
    if (other.name == b.name) continue;
    const Rational k = intersect(b.cls, other.cls);
    if (k <= 0) continue;
    const Subgroup cc = generated_subgroup(g, {b.pair.generator, other.pair.generator});
    const std::int64_t t = static_cast<std::int64_t>(cc.size() / c.size());
    if (d % t != 0) {
      fail("ramification index " + std::to_string(t) + " at crossings with '" + other.name + "' does not divide d = " +
           d.get_str());
      continue;
    }
    stabilizer_gens.push_back(other.pair.generator);
    r += k * Rational(d / t) * (t - 1);
  }
  for (const auto& p : classify_branch_points(spec)) {
    if (p.verdict != PointVerdict::NodeA1 || (p.first != b.name && p.second != b.name)) continue;
    nodes += Rational(p.points * p.preimage_count) / rec.n;
  }
  const Subgroup stab = generated_subgroup(g, stabilizer_gens);
  if ((g.order() / rec.n) % static_cast<std::int64_t>(stab.size()) != 0)
    fail("point stabilizers generate a subgroup of order " + std::to_string(stab.size()) +
         ", not dividing |G|/n = " + std::to_string(g.order() / rec.n));
  if (!v.consistent) return v;

  const Rational genus = (rec.d * (2 * base_genus - 2) + r) / 2 + 1;
  v.genus = genus;
  if (!is_integral(genus) || genus < 0) {
    fail("Hurwitz genus " + to_string(genus) + " is not a nonnegative integer");
    return v;
  }
  try {
    const CanonicalCover cc = canonical_cover(spec);
    const Rational k_dot = rec.d * intersect(cc.P, b.cls) / cc.multiplier;
    const Rational lhs = k_dot + rec.s;
    const Rational rhs = 2 * genus - 2 + nodes / 2;
    if (lhs != rhs)
      fail("adjunction: K.C + C^2 = " + to_string(lhs) + " but 2g - 2 + nodes/2 = " + to_string(rhs));
  } catch (const CoverError& e) {
    v.notes.push_back(std::string("adjunction not checkable: ") + e.what());
  }
  return v;
}

CanonicalCover canonical_cover(const CoverSpec& spec, std::optional<std::int64_t> multiplier) {
  CanonicalCover out;
  out.multiplier = multiplier.value_or(spec.multiplier());
  if (out.multiplier <= 0) throw CoverError("canonical multiplier must be positive");
  const Rational n(out.multiplier);
  out.P = n * spec.base->canonical;
  for (const auto& b : spec.branch) {
    const std::int64_t m = cyclic_order(spec.group, b.pair);
    out.P += n * (1 - make_rational(1, m)) * b.cls;
  }
  if (!out.P.is_integral())
    throw CoverError("multiplier " + std::to_string(out.multiplier) + " leaves a fractional canonical class " +
                     out.P.to_string());
  out.P2 = self_intersection(out.P);
  out.k2 = Rational(spec.group.order()) * out.P2 / (n * n);
  return out;
}

std::variant<CoverInvariants, PathConflict> invariants(const CoverSpec& spec, InterpolationOracle& oracle) {
  auto derived = derive_all_L(spec);
  if (auto* conflict = std::get_if<PathConflict>(&derived)) return *conflict;
  const auto& sheaves = std::get<CharacterSheaves>(derived);
  CoverInvariants inv;
  inv.k2_cover = canonical_cover(spec).k2;
  inv.chi = 0;
  inv.p_g = 0;
  const DivisorClass& k = spec.base->canonical;
  for (const auto& psi : spec.group.elements()) {
    CharacterTerm t;
    t.character = psi;
    t.label = character_label(spec, psi);
    t.L = sheaves.at(psi);
    t.chi_term = 1 + intersect(t.L, t.L + k) / 2;
    t.h0_adjoint = oracle.h0(*spec.base, k + t.L);
    inv.chi += t.chi_term;
    inv.p_g += static_cast<unsigned long>(t.h0_adjoint);
    inv.terms.push_back(std::move(t));
  }
  if (!is_integral(inv.chi)) throw CoverError("holomorphic Euler characteristic " + to_string(inv.chi) + " is fractional");
  inv.q = inv.p_g - inv.chi.get_num() + 1;
  return inv;
}

std::variant<CoverSpec, std::string> quotient_cover(const CoverSpec& spec, const Residues& psi) {
  const auto& g = spec.group;
  const std::int64_t ord = character_order(g, psi);
  const std::string label = character_label(spec, psi);
  if (ord != 2) return "character " + label + " has order " + std::to_string(ord) + ", not 2";
  Subgroup kernel;
  for (const auto& x : g.elements()) {
    if (g.pairing(psi, x) == 0) kernel.insert(x);
  }
  if (!is_elementary_abelian_2(g, kernel))
    return "kernel of " + label + " is not elementary abelian";
  auto derived = derive_all_L(spec);
  if (auto* conflict = std::get_if<PathConflict>(&derived)) return "building data inconsistent: " + conflict->detail;

  CoverSpec q;
  q.id = spec.id + "/" + label;
  q.group = FiniteAbelianGroup({2});
  q.base = spec.base;
  q.characters = {NamedCharacter{label, {1}}};
  q.reduced_L.emplace(label, std::get<CharacterSheaves>(derived).at(g.normalize(psi)));
  q.canonical_multiplier = 2;
  for (const auto& b : spec.branch) {
    if (restriction_level(g, b.pair, psi) == 0) continue;
    q.branch.push_back(BranchComponent{b.name, b.cls, CyclicPair{{1}, 1}, 1});
  }
  return q;
}

std::variant<MinimalModel, InconsistentAssertion> minimal_model(
    const CoverSpec& spec, const ContractionPlan& plan,
    const std::vector<std::pair<std::string, DivisorClass>>& base_curves) {
  const CanonicalCover cc = canonical_cover(spec);
  MinimalModel m;
  m.k2_cover = cc.k2;
  m.P_min = cc.P;
  const Rational n(cc.multiplier);
  auto account = [&](const std::string& name, long weight) -> std::optional<InconsistentAssertion> {
    const BranchComponent* b = spec.component(name);
    if (!b) return InconsistentAssertion{name, "not a branch component"};
    const std::int64_t e = cyclic_order(spec.group, b->pair);
    (weight == 1 ? m.simple : m.threading) += b->asserted_components;
    m.P_min -= n / e * weight * b->cls;
    return std::nullopt;
  };
  for (const auto& name : plan.simple) {
    if (auto bad = account(name, 1)) return *bad;
  }
  for (const auto& name : plan.node_threading) {
    if (auto bad = account(name, 2)) return *bad;
  }
  m.k2_counted = m.k2_cover + m.simple + 2 * m.threading;
  m.k2_class = Rational(spec.group.order()) * self_intersection(m.P_min) / (n * n);
  if (m.k2_counted != m.k2_class)
    return InconsistentAssertion{"", "K^2 by counting is " + to_string(m.k2_counted) + " but the class gives " +
                                         to_string(m.k2_class)};

  std::set<std::string> contracted(plan.base_contracted.begin(), plan.base_contracted.end());
  std::set<std::string> seen;
  for (const auto& [name, cls] : base_curves) {
    const Rational v = intersect(m.P_min, cls);
    if (contracted.count(name)) {
      seen.insert(name);
      if (v != 0) m.ampleness_failures.push_back(name + " is contracted but meets the class in " + to_string(v));
    } else if (v <= 0) {
      m.ampleness_failures.push_back(name + " has degree " + to_string(v));
    }
  }
  for (const auto& name : contracted) {
    if (!seen.count(name)) m.ampleness_failures.push_back(name + " is listed as contracted but not catalogued");
  }
  m.ample = m.ampleness_failures.empty();
  return m;
}

}  // namespace scw
