#include <gtest/gtest.h>

#include "scw/lattice.hpp"
#include "test_support.hpp"

using namespace scw;
using scw::testing::cls;
using scw::testing::run_property;
using scw::testing::uniform;

namespace {

LatticePtr seven_point() { return Lattice::blowup({"E1", "E2", "E3", "E1p", "E2p", "E3p"}); }

DivisorClass random_class(const LatticePtr& lat, std::mt19937_64& rng, long bound = 9) {
  DivisorClass d(lat);
  for (std::size_t i = 0; i < lat->rank(); ++i) d.set(i, Rational(uniform(rng, -bound, bound)));
  return d;
}

// F, B, alpha(B) and K with the intersection data of the dihedral quotient.
LatticePtr quotient_lattice() {
  RationalMatrix g = {{7, 3, 1, 1}, {3, 1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}};
  return Lattice::abstract({"K", "F", "B", "aB"}, g);
}

}  // namespace

TEST(Intersect, ExamplesOnFixtures) {
  const auto& W = scw::testing::surface_W();
  const auto& Y = scw::testing::surface_Y();
  EXPECT_EQ(self_intersection(cls(W, "Gamma2")), -1);
  EXPECT_EQ(self_intersection(cls(W, "L")), 1);
  EXPECT_EQ(intersect(cls(Y, "Lambda1"), cls(Y, "Phi")), 2);
}

TEST(Intersect, MismatchedLatticesThrow) {
  auto a = DivisorClass::basis(Lattice::blowup({"E1"}), "L");
  auto b = DivisorClass::basis(Lattice::blowup({"E2"}), "L");
  EXPECT_THROW(intersect(a, b), LatticeError);
}

TEST(Intersect, UnknownSymbolThrows) { EXPECT_THROW(DivisorClass::basis(seven_point(), "E9"), LatticeError); }

TEST(GramDet, Examples) {
  RationalMatrix m = {{7, 7, 0}, {7, 1, 3}, {0, 3, -2}};
  EXPECT_EQ(gram_det(m), 21);
  EXPECT_EQ(gram_det(RationalMatrix{{1, 0}, {0, 1}}), 1);
  RationalMatrix dep = {{-1, 0, 0}, {0, -1, 1}, {0, 1, -1}};
  EXPECT_EQ(gram_det(dep), 0);
}

TEST(GramDet, BoxIdentity) {
  for (long a = -7; a <= 7; ++a)
    for (long b = -4; b <= 4; ++b) {
      RationalMatrix m = {{7, a, 0}, {a, 1, b}, {0, b, -2}};
      EXPECT_EQ(gram_det(m), Rational(-14 + 2 * a * a - 7 * b * b)) << a << "," << b;
    }
}

TEST(Adjunction, Examples) {
  auto q = quotient_lattice();
  auto K = DivisorClass::basis(q, "K");
  EXPECT_EQ(adjunction_genus(DivisorClass::basis(q, "F"), K), 3);
  EXPECT_EQ(adjunction_genus(DivisorClass::basis(q, "B"), K), 1);
  const auto& W = scw::testing::surface_W();
  EXPECT_EQ(adjunction_genus(cls(W, "Z1"), W.surface->canonical), 0);
}

TEST(Adjunction, DihedralQuotientSquare) {
  auto q = quotient_lattice();
  auto d = DivisorClass::from_terms(q, {{"K", 1}, {"F", -3}, {"B", -2}, {"aB", -2}});
  EXPECT_EQ(make_rational(1, 6) * self_intersection(d), -3);
}

TEST(SolveDivide, Examples) {
  auto lat = seven_point();
  auto d = DivisorClass::from_terms(
      lat, {{"L", 10}, {"E1", -2}, {"E2", -6}, {"E3", -4}, {"E1p", -2}, {"E2p", -4}, {"E3p", -4}});
  auto r = solve_divide(d, 2);
  ASSERT_TRUE(std::holds_alternative<DivisorClass>(r));
  auto expect = DivisorClass::from_terms(
      lat, {{"L", 5}, {"E1", -1}, {"E2", -3}, {"E3", -2}, {"E1p", -1}, {"E2p", -2}, {"E3p", -2}});
  EXPECT_EQ(std::get<DivisorClass>(r), expect);

  auto zero = solve_divide(DivisorClass(lat), 5);
  ASSERT_TRUE(std::holds_alternative<DivisorClass>(zero));
  EXPECT_TRUE(std::get<DivisorClass>(zero).is_zero());

  auto bad = solve_divide(DivisorClass::from_terms(lat, {{"L", 1}, {"E1", -1}}), 2);
  ASSERT_TRUE(std::holds_alternative<NotDivisible>(bad));
  EXPECT_EQ(std::get<NotDivisible>(bad).symbol, "L");
}

TEST(SolveLinear, Examples) {
  auto lat = seven_point();
  auto L = DivisorClass::basis(lat, "L");
  auto ok = solve_linear({Relation{{{"X", 2}}, 2 * L, "double"}}, lat);
  ASSERT_TRUE(std::holds_alternative<LinearSolution>(ok));
  EXPECT_EQ(std::get<LinearSolution>(ok).values.at("X"), L);

  auto bad = solve_linear({Relation{{{"X", 2}}, L, "odd"}}, lat);
  ASSERT_TRUE(std::holds_alternative<Unsolvable>(bad));
  EXPECT_EQ(std::get<Unsolvable>(bad).symbol, "L");
}

TEST(HodgeBound, Examples) {
  EXPECT_TRUE(hodge_index_bound(7, 3, Rational(1)).passes);
  auto b = hodge_index_bound(7, 6);
  EXPECT_EQ(b.bound, make_rational(36, 7));
  EXPECT_EQ(b.max_integral_square, 5);
  EXPECT_FALSE(hodge_index_bound(7, 3, Rational(2)).passes);
}

TEST(LatticeProperties, Bilinearity) {
  auto lat = seven_point();
  auto res = run_property(1000, 11, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    auto a = random_class(lat, rng), b = random_class(lat, rng), c = random_class(lat, rng);
    Rational s(uniform(rng, -5, 5));
    if (intersect(a + s * b, c) != intersect(a, c) + s * intersect(b, c)) return "linearity";
    if (intersect(a, b) != intersect(b, a)) return "symmetry";
    return {};
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
  EXPECT_GE(res.cases, 1000u);
}

TEST(LatticeProperties, BlowupDeterminant) {
  auto res = run_property(1000, 12, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    long n = uniform(rng, 0, 9);
    std::vector<std::string> names;
    for (long i = 0; i < n; ++i) names.push_back("E" + std::to_string(i + 1));
    auto lat = Lattice::blowup(names);
    Rational expect = (n % 2 == 0) ? 1 : -1;
    return gram_det(lat->gram()) == expect ? "" : "n=" + std::to_string(n);
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(LatticeProperties, AdjunctionParity) {
  auto lat = seven_point();
  auto K = canonical_class(lat);
  auto res = run_property(1000, 13, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    auto d = random_class(lat, rng);
    Rational g = adjunction_genus(d, K);
    return is_integral(g) ? "" : d.to_string();
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(LatticeProperties, DivideRoundTrip) {
  auto lat = seven_point();
  auto res = run_property(1000, 14, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    auto x = random_class(lat, rng);
    long n = uniform(rng, 1, 6);
    auto r = solve_divide(Rational(n) * x, n);
    if (!std::holds_alternative<DivisorClass>(r)) return "not divisible";
    return std::get<DivisorClass>(r) == x ? "" : x.to_string();
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(LatticeProperties, GramDetMatchesCofactorExpansion) {
  auto res = run_property(1000, 15, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 5));
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rational v = make_rational(uniform(rng, -6, 6), uniform(rng, 1, 3));
        m[i][j] = v;
        m[j][i] = v;
      }
    return gram_det(m) == scw::testing::cofactor_det(m) ? "" : "n=" + std::to_string(n);
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}
