#include <gtest/gtest.h>

#include "scw/interp.hpp"
#include "scw/surface.hpp"
#include "test_support.hpp"

using namespace scw;
using scw::testing::cls;
using scw::testing::run_property;
using scw::testing::surface_W;
using scw::testing::surface_Y;
using scw::testing::uniform;

namespace {

std::size_t collinear_triples(const Realization& r, const std::vector<std::string>& pts) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        n += det3(r.points.at(pts[i]), r.points.at(pts[j]), r.points.at(pts[k])) == 0;
  return n;
}

}  // namespace

TEST(Realization, FigureOneIncidences) {
  const auto& s = *surface_W().surface;
  auto r = realize_configuration(s.script, s.blown_up_points(), 0);
  EXPECT_EQ(s.blown_up_points().size(), 6u);
  EXPECT_EQ(collinear_triples(r, s.blown_up_points()), 4u);
}

TEST(Realization, FigureTwoIncidences) {
  const auto& s = *surface_Y().surface;
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    auto r = realize_configuration(s.script, s.blown_up_points(), seed);
    EXPECT_EQ(s.blown_up_points().size(), 7u);
    EXPECT_EQ(collinear_triples(r, s.blown_up_points()), 6u) << seed;
  }
}

TEST(Realization, ContradictoryScriptFails) {
  // x is forced to coincide with p, and both are blown up.
  ConstructionScript script{FreePoint{"p"}, FreePoint{"q"}, FreePoint{"r"}, LineThrough{"l", "p", "q"},
                            LineThrough{"m", "p", "r"}, IntersectionPoint{"x", "l", "m"}};
  EXPECT_THROW(realize_configuration(script, {"p", "x"}, 0), RealizationError);
}

TEST(H0, Examples) {
  InterpolationOracle oracle;
  const auto& W = surface_W();
  const auto& Y = surface_Y();
  EXPECT_EQ(oracle.h0(*W.surface, cls(W, "2L - 2E2 - E3 - E2p - E3p")), 0u);
  EXPECT_EQ(oracle.h0(*Y.surface, cls(Y, "Phi")), 2u);
  EXPECT_EQ(oracle.h0(*Y.surface, DivisorClass(Y.surface->lattice)), 1u);
  EXPECT_EQ(oracle.h0(*W.surface, cls(W, "3L")), 10u);
  EXPECT_EQ(oracle.h0(*W.surface, cls(W, "-L")), 0u);
}

TEST(H0, AdjointOfLChiVanishes) {
  // No line passes through q, q1 and q3p.
  InterpolationOracle oracle;
  const auto& Y = surface_Y();
  EXPECT_EQ(oracle.h0(*Y.surface, cls(Y, "L - Q - Q1 + Q1p - Q3p")), 0u);
}

TEST(InterpProperties, SeedIndependence) {
  const auto& Y = surface_Y();
  std::vector<std::string> classes{"Phi", "2L - Q - Q1", "3L - Q - Q1 - Q2 - Q3 - Q1p", "M1", "-K", "L - Q2p - Q3p"};
  for (const auto& c : classes) {
    std::set<std::size_t> values;
    for (std::uint64_t seed : {0u, 3u, 12345u}) {
      InterpolationOracle oracle(SeedPolicy{seed, 3});
      values.insert(oracle.h0(*Y.surface, cls(Y, c)));
    }
    EXPECT_EQ(values.size(), 1u) << c;
  }
}

TEST(InterpProperties, Monotone) {
  const auto& W = surface_W();
  InterpolationOracle oracle;
  const auto& lat = W.surface->lattice;
  auto res = run_property(60, 21, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    DivisorClass d(lat);
    d.set(0, Rational(uniform(rng, 0, 3)));
    for (std::size_t i = 1; i < lat->rank(); ++i) d.set(i, Rational(-uniform(rng, 0, 2)));
    // D + E_i and D + L both contain D plus an effective curve.
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(lat->rank()) - 1));
    DivisorClass bigger = d;
    bigger.set(i, d[i] + 1);
    if (oracle.h0(*W.surface, d) > oracle.h0(*W.surface, bigger)) return d.to_string();
    return {};
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(InterpProperties, MinusTwoClassesHaveOneSection) {
  InterpolationOracle oracle;
  for (auto c : {"Z", "Z1", "Z2", "Z3"}) EXPECT_EQ(oracle.h0(*surface_W().surface, cls(surface_W(), c)), 1u) << c;
  for (auto c : {"M1", "M2", "M3", "N1", "N2", "N3"})
    EXPECT_EQ(oracle.h0(*surface_Y().surface, cls(surface_Y(), c)), 1u) << c;
}

TEST(InterpProperties, GenericAgreement) {
  auto res = scw::testing::h0_generic_agreement(50, 2024);
  EXPECT_EQ(res.cases, 50u);
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(InterpProperties, DimensionMatchesTaylorOracle) {
  auto res = run_property(200, 22, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    long d = uniform(rng, 0, 5);
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, 6));
    std::vector<std::pair<Vec3, long>> lib;
    std::vector<std::pair<std::array<long, 3>, long>> naive;
    for (std::size_t i = 0; i < k; ++i) {
      // Small coordinates so special position (including repeats) shows up.
      long x = uniform(rng, -3, 3), y = uniform(rng, -3, 3), m = uniform(rng, 1, 3);
      lib.push_back({Vec3{Integer(x), Integer(y), Integer(1)}, m});
      naive.push_back({{x, y, 1}, m});
    }
    auto a = interpolation_dimension(d, lib);
    auto b = scw::testing::naive_interpolation_dimension(d, naive);
    return a == b ? "" : "d=" + std::to_string(d) + " lib=" + std::to_string(a) + " naive=" + std::to_string(b);
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}
