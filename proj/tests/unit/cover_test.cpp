#include <gtest/gtest.h>

#include <algorithm>

#include "scw/cover.hpp"
#include "test_support.hpp"

using namespace scw;
using scw::testing::cls;
using scw::testing::cover_V;
using scw::testing::cover_X;
using scw::testing::run_property;
using scw::testing::surface_W;
using scw::testing::surface_Y;
using scw::testing::uniform;

namespace {

const Residues chi{1, 0}, rho{0, 1};

// The bidouble fixture lists no L classes; fill them from the solver.
CoverSpec solved_V() {
  CoverSpec spec = cover_V().spec;
  auto solved = solve_building_data(spec);
  EXPECT_TRUE((std::holds_alternative<std::map<std::string, DivisorClass>>(solved)));
  spec.reduced_L = std::get<std::map<std::string, DivisorClass>>(solved);
  return spec;
}

std::vector<std::pair<std::string, DivisorClass>> named_curves(const SurfaceEntry& s) {
  std::vector<std::pair<std::string, DivisorClass>> out;
  for (const auto& c : s.classes) out.emplace_back(c.name, c.cls);
  return out;
}

const BranchComponent& component(const CoverSpec& spec, const std::string& name) {
  const auto* b = spec.component(name);
  if (!b) throw std::runtime_error("no component " + name);
  return *b;
}

}  // namespace

TEST(ValidateCoverData, Z2Z4RelationsHold) {
  const auto& spec = cover_X().spec;
  InterpolationOracle oracle;
  auto report = validate_cover_data(spec, oracle);
  EXPECT_TRUE(report.all_passed()) << report.to_text();
  ASSERT_NE(report.find("order:chi"), nullptr);
  ASSERT_NE(report.find("order:rho"), nullptr);

  const auto& Y = surface_Y();
  EXPECT_EQ(order_relation_rhs(spec, chi), cls(Y, "8L - 4Q - 4Q1 - 2Q2 - 2Q2p - 2Q3 - 4Q3p"));
  EXPECT_EQ(2 * spec.reduced_L.at("chi"), order_relation_rhs(spec, chi));
  EXPECT_EQ(spec.reduced_L.at("chi"), cls(Y, "4L - 2Q - 2Q1 - Q2 - Q2p - Q3 - 2Q3p"));
  EXPECT_EQ(4 * spec.reduced_L.at("rho"), order_relation_rhs(spec, rho));
}

TEST(ValidateCoverData, BidoubleSolvedRelationsHold) {
  InterpolationOracle oracle;
  auto report = validate_cover_data(solved_V(), oracle);
  EXPECT_TRUE(report.all_passed()) << report.to_text();
  EXPECT_NE(report.find("order:chi1"), nullptr);
}

TEST(ValidateCoverData, PerturbedLChiFails) {
  CoverSpec spec = cover_X().spec;
  spec.reduced_L.at("chi") += DivisorClass::basis(spec.base->lattice, "Q3p");
  InterpolationOracle oracle;
  auto report = validate_cover_data(spec, oracle);
  const auto* order = report.find("order:chi");
  ASSERT_NE(order, nullptr);
  EXPECT_EQ(order->status, CheckStatus::Fail);
  EXPECT_NE(order->detail.find("Q3p"), std::string::npos) << order->detail;
  EXPECT_EQ(report.find("order:rho")->status, CheckStatus::Pass);
}

TEST(ValidateCoverData, RepeatedComponentIsNotReduced) {
  CoverSpec spec = cover_X().spec;
  BranchComponent dup = component(spec, "Lambda1");
  dup.name = "Lambda1-again";
  spec.branch.push_back(dup);
  InterpolationOracle oracle;
  auto report = validate_cover_data(spec, oracle);
  ASSERT_NE(report.find("reduced"), nullptr);
  EXPECT_EQ(report.find("reduced")->status, CheckStatus::Fail);
}

TEST(DeriveAllL, RhoSquared) {
  const auto& spec = cover_X().spec;
  auto derived = derive_all_L(spec);
  ASSERT_TRUE(std::holds_alternative<CharacterSheaves>(derived));
  const auto& L = std::get<CharacterSheaves>(derived);
  EXPECT_EQ(L.size(), 8u);
  EXPECT_TRUE(L.at(Residues{0, 0}).is_zero());
  const std::map<std::string, DivisorClass> extra{{"L_rho", spec.reduced_L.at("rho")}};
  auto want = parse_class_expression("2L_rho - Lambda2 - Q1p - Phi - N3 - M2 - M1", surface_Y(), &extra);
  EXPECT_EQ(L.at(Residues{0, 2}), want);
  // The same set read off the pair rule: D2 + D3 + D_(g,-i) + D_(g1g,-i).
  const FiniteAbelianGroup& g = spec.group;
  DivisorClass by_rule = 2 * spec.reduced_L.at("rho");
  by_rule -= branch_divisor(spec, CyclicPair{{0, 2}, 1});
  by_rule -= branch_divisor(spec, CyclicPair{{1, 2}, 1});
  by_rule -= branch_divisor(spec, CyclicPair{{0, 1}, 3});
  by_rule -= branch_divisor(spec, CyclicPair{{1, 1}, 3});
  EXPECT_EQ(L.at(g.normalize({0, 2})), by_rule);
}

TEST(DeriveAllL, BidoubleMatchesSolver) {
  CoverSpec spec = solved_V();
  auto derived = derive_all_L(spec);
  ASSERT_TRUE(std::holds_alternative<CharacterSheaves>(derived));
  const auto& L = std::get<CharacterSheaves>(derived);
  for (const auto& c : spec.characters) EXPECT_EQ(L.at(c.residues), spec.reduced_L.at(c.name)) << c.name;
  // Halving Delta_2 + Delta_3 gives L_1.
  const auto* c1 = spec.character("chi1");
  ASSERT_NE(c1, nullptr);
  EXPECT_EQ(2 * spec.reduced_L.at("chi1"), order_relation_rhs(spec, c1->residues));
}

TEST(ClassifyBranchPoints, TwoNodeLoci) {
  const auto& spec = cover_X().spec;
  auto points = classify_branch_points(spec);
  std::set<std::set<std::string>> nodes;
  for (const auto& p : points) {
    if (p.verdict == PointVerdict::NodeA1) {
      nodes.insert({p.first, p.second});
      EXPECT_EQ(p.preimage_count, 2);
      EXPECT_EQ(p.points, 1);
      EXPECT_EQ(p.inertia, generated_subgroup(spec.group, {{0, 1}}));
    } else {
      EXPECT_EQ(p.verdict, PointVerdict::Smooth) << p.first << "*" << p.second;
      EXPECT_EQ(p.preimage_count * static_cast<std::int64_t>(p.inertia.size()), spec.group.order());
    }
  }
  EXPECT_EQ(nodes, (std::set<std::set<std::string>>{{"Lambda2", "M2"}, {"Lambda2", "N2"}}));
}

TEST(ClassifyBranchPoints, BidoubleIsSmooth) {
  for (const auto& p : classify_branch_points(cover_V().spec)) {
    EXPECT_EQ(p.verdict, PointVerdict::Smooth) << p.first << "*" << p.second;
    EXPECT_EQ(p.preimage_count, 1);
  }
}

TEST(Pullback, Examples) {
  const auto& spec = cover_X().spec;
  struct Want {
    const char* name;
    std::int64_t e, n;
    Rational d, s;
  };
  for (const auto& w : {Want{"M2", 4, 2, 1, make_rational(-1, 2)}, Want{"N2", 4, 2, 1, make_rational(-1, 2)},
                        Want{"M3", 2, 4, 1, -1}, Want{"N3", 2, 4, 1, -1}, Want{"M1", 4, 1, 2, -1}}) {
    auto pb = pullback(spec, component(spec, w.name));
    ASSERT_TRUE(std::holds_alternative<PullbackRecord>(pb)) << w.name;
    const auto& r = std::get<PullbackRecord>(pb);
    EXPECT_EQ(r.e, w.e) << w.name;
    EXPECT_EQ(r.n, w.n) << w.name;
    EXPECT_EQ(r.d, w.d) << w.name;
    EXPECT_EQ(r.s, w.s) << w.name;
    EXPECT_TRUE(preimage_consistency(spec, component(spec, w.name)).consistent) << w.name;
  }
}

TEST(Pullback, NonIntegralDegreeIsInconsistent) {
  CoverSpec spec = cover_X().spec;
  for (auto& b : spec.branch)
    if (b.name == "M1") b.asserted_components = 3;
  EXPECT_TRUE(std::holds_alternative<InconsistentAssertion>(pullback(spec, component(spec, "M1"))));
}

TEST(PreimageConsistency, OnlyOneComponentOverM1) {
  std::vector<std::int64_t> passing;
  for (std::int64_t n : {1, 2, 4}) {
    CoverSpec spec = cover_X().spec;
    for (auto& b : spec.branch)
      if (b.name == "M1") b.asserted_components = n;
    if (preimage_consistency(spec, component(spec, "M1")).consistent) passing.push_back(n);
  }
  EXPECT_EQ(passing, std::vector<std::int64_t>{1});
}

TEST(PreimageConsistency, M1GenusFromHurwitz) {
  auto v = preimage_consistency(cover_X().spec, component(cover_X().spec, "M1"));
  ASSERT_TRUE(v.genus.has_value());
  EXPECT_EQ(*v.genus, 0);
}

TEST(PreimageConsistency, AllFixtureComponents) {
  for (const auto* spec : {&cover_X().spec, &cover_V().spec})
    for (const auto& b : spec->branch) {
      auto v = preimage_consistency(*spec, b);
      EXPECT_TRUE(v.consistent) << b.name << ": " << (v.violations.empty() ? "" : v.violations[0]);
    }
}

TEST(CanonicalCover, Z2Z4) {
  auto cc = canonical_cover(cover_X().spec, 4);
  EXPECT_EQ(cc.P, cls(surface_Y(), "16L - 8Q - 8Q1 - 2Q1p - 6Q2 - 6Q2p - 6Q3 - 6Q3p"));
  EXPECT_EQ(cc.P2, -20);
  EXPECT_EQ(cc.k2, -10);
}

TEST(CanonicalCover, Bidouble) {
  auto cc = canonical_cover(cover_V().spec, 2);
  EXPECT_EQ(cc.P, cls(surface_W(), "9L - 3E1 - 4E2 - 4E3 - 3E1p - 4E2p - 4E3p"));
  EXPECT_EQ(cc.P2, -1);
  EXPECT_EQ(cc.k2, -1);
}

TEST(CanonicalCover, UnbranchedDoubleCover) {
  CoverSpec spec;
  spec.id = "etale";
  spec.group = FiniteAbelianGroup({2});
  spec.base = surface_W().surface;
  spec.characters = {{"c", {1}}};
  spec.reduced_L = {{"c", DivisorClass(spec.base->lattice)}};
  auto cc = canonical_cover(spec);
  EXPECT_EQ(cc.P, 2 * spec.base->canonical);
  EXPECT_EQ(cc.k2, 2 * self_intersection(spec.base->canonical));
}

TEST(CanonicalCover, FractionalMultiplierRejected) {
  // N = 2 still works here since the order-4 components sum to 2 L_(rho^2).
  EXPECT_NO_THROW(canonical_cover(cover_X().spec, 2));
  EXPECT_THROW(canonical_cover(cover_X().spec, 3), CoverError);
}

TEST(Invariants, Z2Z4) {
  InterpolationOracle oracle;
  auto inv = invariants(cover_X().spec, oracle);
  ASSERT_TRUE(std::holds_alternative<CoverInvariants>(inv));
  const auto& v = std::get<CoverInvariants>(inv);
  EXPECT_EQ(v.k2_cover, -10);
  EXPECT_EQ(v.p_g, 0);
  EXPECT_EQ(v.chi, 1);
  EXPECT_EQ(v.q, 0);
  std::size_t nontrivial = 0;
  for (const auto& t : v.terms) {
    if (std::all_of(t.character.begin(), t.character.end(), [](auto r) { return r == 0; })) continue;
    ++nontrivial;
    EXPECT_EQ(t.h0_adjoint, 0u) << t.label;
  }
  EXPECT_EQ(nontrivial, 7u);
}

TEST(Invariants, Bidouble) {
  InterpolationOracle oracle;
  auto inv = invariants(solved_V(), oracle);
  ASSERT_TRUE(std::holds_alternative<CoverInvariants>(inv));
  EXPECT_EQ(std::get<CoverInvariants>(inv).p_g, 0);
  EXPECT_EQ(std::get<CoverInvariants>(inv).chi, 1);
}

TEST(Invariants, TrivialCover) {
  CoverSpec spec;
  spec.id = "trivial";
  spec.group = FiniteAbelianGroup({1});
  spec.base = surface_W().surface;
  InterpolationOracle oracle;
  auto inv = invariants(spec, oracle);
  ASSERT_TRUE(std::holds_alternative<CoverInvariants>(inv));
  EXPECT_EQ(std::get<CoverInvariants>(inv).chi, 1);
  EXPECT_EQ(std::get<CoverInvariants>(inv).p_g, 0);
}

TEST(QuotientCover, RhoSquared) {
  const auto& spec = cover_X().spec;
  auto q = quotient_cover(spec, {0, 2});
  ASSERT_TRUE(std::holds_alternative<CoverSpec>(q)) << std::get<std::string>(q);
  const auto& dc = std::get<CoverSpec>(q);
  std::set<std::string> names;
  for (const auto& b : dc.branch) names.insert(b.name);
  EXPECT_EQ(names, (std::set<std::string>{"M1", "N1", "M2", "N2"}));
  const DivisorClass& L = dc.reduced_L.begin()->second;
  EXPECT_EQ(2 * L, cls(surface_Y(), "M1 + N1 + M2 + N2"));
  EXPECT_EQ(canonical_cover(dc, 2).k2, 0);
  EXPECT_EQ(canonical_cover(dc, 2).P, cls(surface_Y(), "-2L + 2Q3p"));
}

TEST(QuotientCover, ChiIsUnsupported) {
  EXPECT_TRUE(std::holds_alternative<std::string>(quotient_cover(cover_X().spec, chi)));
}

TEST(MinimalModel, Z2Z4) {
  const auto& entry = cover_X();
  ASSERT_TRUE(entry.plan.has_value());
  auto mm = minimal_model(entry.spec, *entry.plan, named_curves(surface_Y()));
  ASSERT_TRUE(std::holds_alternative<MinimalModel>(mm));
  const auto& m = std::get<MinimalModel>(mm);
  EXPECT_EQ(m.k2_cover, -10);
  EXPECT_EQ(m.simple, 9);
  EXPECT_EQ(m.threading, 4);
  EXPECT_EQ(m.k2_counted, 7);
  EXPECT_EQ(m.k2_class, 7);
  EXPECT_TRUE(m.ample) << (m.ampleness_failures.empty() ? "" : m.ampleness_failures[0]);
  auto pencils = cls(surface_Y(), "-K + Phi + Phi1");
  EXPECT_EQ(self_intersection(pencils) / 2, 7);
}

TEST(MinimalModel, Bidouble) {
  const auto& entry = cover_V();
  ASSERT_TRUE(entry.plan.has_value());
  auto mm = minimal_model(entry.spec, *entry.plan, named_curves(surface_W()));
  ASSERT_TRUE(std::holds_alternative<MinimalModel>(mm));
  const auto& m = std::get<MinimalModel>(mm);
  EXPECT_EQ(m.simple, 8);
  EXPECT_EQ(m.k2_counted, 7);
  EXPECT_EQ(m.k2_class, 7);
}

TEST(MinimalModel, EmptyPlan) {
  auto mm = minimal_model(cover_X().spec, ContractionPlan{}, {});
  ASSERT_TRUE(std::holds_alternative<MinimalModel>(mm));
  EXPECT_EQ(std::get<MinimalModel>(mm).k2_counted, std::get<MinimalModel>(mm).k2_cover);
}

TEST(CoverProperties, PairRulePathIndependence) {
  // L of a product of three characters, grouped two ways, against the
  // derived table.
  for (const auto* spec_ptr : {&cover_X().spec}) {
    const auto& spec = *spec_ptr;
    const auto L = std::get<CharacterSheaves>(derive_all_L(spec));
    const auto elems = spec.group.elements();
    auto res = run_property(1000, 31, [&](std::mt19937_64& rng, std::size_t) -> std::string {
      const auto& a = elems[static_cast<std::size_t>(uniform(rng, 0, 7))];
      const auto& b = elems[static_cast<std::size_t>(uniform(rng, 0, 7))];
      const auto& c = elems[static_cast<std::size_t>(uniform(rng, 0, 7))];
      const auto& g = spec.group;
      auto ab = g.add(a, b), bc = g.add(b, c), abc = g.add(ab, c);
      DivisorClass left = L.at(ab) + L.at(c) - pair_correction(spec, ab, c);
      DivisorClass right = L.at(a) + L.at(bc) - pair_correction(spec, a, bc);
      if (left != right) return "grouping of " + format_residues(a) + format_residues(b) + format_residues(c);
      if (left != L.at(abc)) return "table at " + format_residues(abc);
      return {};
    });
    EXPECT_EQ(res.failures, 0u) << res.first_failure;
    EXPECT_GE(res.cases, 1000u);
  }
}

TEST(CoverProperties, RandomBidoubleDataIsPathIndependent) {
  // Random Delta_i with equal parities: the solver finds L and the derived
  // table has no conflicts.
  const auto base = surface_W().surface;
  const auto& lat = base->lattice;
  auto res = run_property(1000, 32, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    CoverSpec spec;
    spec.id = "random";
    spec.group = FiniteAbelianGroup({2, 2});
    spec.base = base;
    spec.characters = {{"c1", {0, 1}}, {"c2", {1, 0}}, {"c3", {1, 1}}};
    std::vector<long> parity;
    for (std::size_t k = 0; k < lat->rank(); ++k) parity.push_back(uniform(rng, 0, 1));
    const Residues gens[3] = {{1, 0}, {0, 1}, {1, 1}};
    for (int i = 0; i < 3; ++i) {
      DivisorClass d(lat);
      for (std::size_t k = 0; k < lat->rank(); ++k) d.set(k, Rational(2 * uniform(rng, -3, 3) + parity[k]));
      spec.branch.push_back({"D" + std::to_string(i + 1), d, {gens[i], 1}, 1});
    }
    auto solved = solve_building_data(spec);
    if (!std::holds_alternative<std::map<std::string, DivisorClass>>(solved)) return "solver failed";
    spec.reduced_L = std::get<std::map<std::string, DivisorClass>>(solved);
    auto derived = derive_all_L(spec);
    if (auto* c = std::get_if<PathConflict>(&derived)) return c->detail;
    return {};
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(CoverProperties, PullbackDegreeIdentity) {
  for (const auto* spec : {&cover_X().spec, &cover_V().spec})
    for (const auto& b : spec->branch) {
      auto pb = pullback(*spec, b);
      ASSERT_TRUE(std::holds_alternative<PullbackRecord>(pb)) << b.name;
      const auto& r = std::get<PullbackRecord>(pb);
      EXPECT_EQ(Rational(r.n * r.e) * r.d, spec->group.order()) << b.name;
      EXPECT_TRUE(is_integral(r.s * r.e)) << b.name;
    }
}

TEST(CoverProperties, InvariantsAreIntegral) {
  InterpolationOracle oracle;
  for (const auto& spec : {cover_X().spec, solved_V()}) {
    auto v = std::get<CoverInvariants>(invariants(spec, oracle));
    EXPECT_TRUE(is_integral(v.chi));
    EXPECT_GE(v.p_g, 0);
    EXPECT_GE(v.q, 0);
    EXPECT_EQ(v.q, v.p_g - v.chi.get_num() + 1);
  }
}
