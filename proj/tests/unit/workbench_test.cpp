#include <gtest/gtest.h>

#include <unistd.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "scw/workbench.hpp"
#include "test_support.hpp"

using namespace scw;
using scw::testing::data_dir;
using scw::testing::run_property;
using scw::testing::uniform;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A fresh directory under the build tree's temp location.
std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("scw-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::map<std::string, CheckStatus> statuses(const VerificationReport& r) {
  std::map<std::string, CheckStatus> out;
  for (const auto& c : r.checks()) out[c.name] = c.status;
  return out;
}

const char* kSmallDoc = R"({
  "version": 1,
  "surfaces": [
    {
      "id": "P",
      "script": [{"op": "free_point", "id": "a"}, {"op": "free_point", "id": "b"}, {"op": "free_point", "id": "c"}],
      "blowups": [{"point": "a", "symbol": "A"}, {"point": "b", "symbol": "B"}, {"point": "c", "symbol": "C"}],
      "classes": {"Lab": {"L": 1, "A": -1, "B": -1}}
    }
  ],
  "covers": [],
  "checks": []
})";

}  // namespace

TEST(ParseSpec, BundledFixtures) {
  for (auto name : {"inoue_bidouble.json", "inoue_z2z4.json"}) {
    auto f = parse_spec(data_dir() / name);
    EXPECT_EQ(f.version, kWorkbenchVersion);
    EXPECT_EQ(f.surfaces.size(), 1u) << name;
    EXPECT_EQ(f.covers.size(), 1u) << name;
    EXPECT_FALSE(f.checks.empty()) << name;
  }
}

TEST(ParseSpec, UnknownBasisSymbolIsNamed) {
  auto doc = nlohmann::json::parse(kSmallDoc);
  doc["surfaces"][0]["classes"]["Bad"] = {{"L", 1}, {"E7", -1}};
  try {
    parse_workbench(doc.dump());
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("E7"), std::string::npos) << e.what();
    EXPECT_NE(e.path().find("/surfaces/0/classes"), std::string::npos) << e.path();
  }
}

TEST(ParseSpec, Rejections) {
  EXPECT_THROW(parse_workbench("{ not json"), InputError);
  EXPECT_THROW(parse_spec(data_dir() / "no_such_file.json"), InputError);

  auto doc = nlohmann::json::parse(kSmallDoc);
  doc["version"] = 99;
  EXPECT_THROW(parse_workbench(doc.dump()), InputError);

  doc = nlohmann::json::parse(kSmallDoc);
  doc["surfaces"].push_back(doc["surfaces"][0]);
  EXPECT_THROW(parse_workbench(doc.dump()), InputError);

  doc = nlohmann::json::parse(kSmallDoc);
  doc["checks"].push_back({{"name", "x"}, {"kind", "no_such_kind"}, {"params", nlohmann::json::object()}});
  EXPECT_THROW(parse_workbench(doc.dump()), InputError);
}

TEST(ClassExpression, Parsing) {
  auto f = parse_workbench(kSmallDoc);
  const auto& s = f.surfaces[0];
  auto lat = s.surface->lattice;
  EXPECT_EQ(parse_class_expression("2L - A - Lab", s), DivisorClass::from_terms(lat, {{"L", 1}, {"B", 1}}));
  EXPECT_EQ(parse_class_expression("-K", s), -s.surface->canonical);
  EXPECT_EQ(parse_class_expression("1/2 L + 3*A", s),
            DivisorClass::from_terms(lat, {{"L", make_rational(1, 2)}, {"A", 3}}));
  EXPECT_EQ(parse_class_json(R"({"L": 2, "A": "-1/3"})", s),
            DivisorClass::from_terms(lat, {{"L", 2}, {"A", make_rational(-1, 3)}}));
  EXPECT_THROW(parse_class_expression("L - Bogus", s), InputError);
}

TEST(RoundTrip, BundledFixtures) {
  for (auto name : {"inoue_bidouble.json", "inoue_z2z4.json"}) {
    auto a = parse_spec(data_dir() / name);
    const std::string text = serialize(a);
    auto b = parse_workbench(text);
    EXPECT_TRUE(equivalent(a, b)) << name;
    EXPECT_EQ(serialize(b), text) << name;
  }
}

TEST(RoundTrip, RandomDocuments) {
  auto res = run_property(1000, 51, [&](std::mt19937_64& rng, std::size_t i) -> std::string {
    auto doc = nlohmann::json::parse(kSmallDoc);
    long n = uniform(rng, 0, 4);
    for (long k = 0; k < n; ++k) {
      nlohmann::json c = nlohmann::json::object();
      for (auto sym : {"L", "A", "B", "C"}) {
        long num = uniform(rng, -9, 9), den = uniform(rng, 1, 4);
        if (num == 0) continue;
        if (den == 1)
          c[sym] = num;
        else
          c[sym] = std::to_string(num) + "/" + std::to_string(den);
      }
      doc["surfaces"][0]["classes"]["R" + std::to_string(k)] = c;
      doc["checks"].push_back({{"name", "c" + std::to_string(i) + "-" + std::to_string(k)},
                               {"kind", "self_intersection"},
                               {"params", {{"surface", "P"}, {"class", "R" + std::to_string(k)}}},
                               {"expected", std::to_string(uniform(rng, -5, 5))}});
    }
    auto a = parse_workbench(doc.dump());
    auto b = parse_workbench(serialize(a));
    if (!equivalent(a, b)) return "not equivalent";
    if (serialize(a) != serialize(b)) return "bytes differ";
    return {};
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
  EXPECT_GE(res.cases, 1000u);
}

TEST(RoundTrip, ClassTextParsesBack) {
  auto f = parse_workbench(kSmallDoc);
  const auto& s = f.surfaces[0];
  auto res = run_property(1000, 52, [&](std::mt19937_64& rng, std::size_t) -> std::string {
    DivisorClass d(s.surface->lattice);
    for (std::size_t k = 0; k < d.size(); ++k) d.set(k, make_rational(uniform(rng, -9, 9), uniform(rng, 1, 3)));
    return parse_class_expression(d.to_string(), s) == d ? "" : d.to_string();
  });
  EXPECT_EQ(res.failures, 0u) << res.first_failure;
}

TEST(RunSuite, Z2Z4CoverRelations) {
  auto f = parse_spec(data_dir() / "inoue_z2z4.json");
  InterpolationOracle oracle;
  auto r = run_suite(f, Suite::Cover, oracle);
  EXPECT_EQ(r.count(CheckStatus::Fail), 0u) << r.to_text();
  ASSERT_NE(r.find("X/relations/order:chi"), nullptr);
  EXPECT_EQ(r.find("X/relations/order:chi")->status, CheckStatus::Pass);
  EXPECT_EQ(r.find("X/relations/order:rho")->status, CheckStatus::Pass);
  EXPECT_EQ(exit_code(r), 0);
}

TEST(RunSuite, BidoubleAll) {
  auto f = parse_spec(data_dir() / "inoue_bidouble.json");
  InterpolationOracle oracle;
  auto r = run_suite(f, Suite::All, oracle);
  EXPECT_TRUE(r.all_passed()) << r.to_text();
  for (auto name : {"S/K2", "S/p_g", "S/chi"}) {
    ASSERT_NE(r.find(name), nullptr) << name;
    EXPECT_EQ(r.find(name)->status, CheckStatus::Pass) << name;
  }
}

TEST(RunSuite, EmptyCheckListPasses) {
  auto f = parse_workbench(kSmallDoc);
  InterpolationOracle oracle;
  auto r = run_suite(f, Suite::All, oracle);
  EXPECT_TRUE(r.checks().empty());
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(exit_code(r), 0);
}

TEST(RunSuite, WrongExpectationFails) {
  auto doc = nlohmann::json::parse(kSmallDoc);
  doc["checks"].push_back(
      {{"name", "bad"}, {"kind", "self_intersection"}, {"params", {{"surface", "P"}, {"class", "Lab"}}}, {"expected", "5"}});
  auto f = parse_workbench(doc.dump());
  InterpolationOracle oracle;
  auto r = run_suite(f, Suite::Lattice, oracle);
  EXPECT_EQ(r.count(CheckStatus::Fail), 1u);
  EXPECT_EQ(exit_code(r), 1);
}

TEST(RunSuite, SuiteNames) {
  EXPECT_EQ(parse_suite("cover"), Suite::Cover);
  EXPECT_EQ(to_string(Suite::Lefschetz), "lefschetz");
  EXPECT_THROW(parse_suite("nope"), InputError);
  EXPECT_EQ(suite_of_kind("h0"), Suite::Surface);
}

TEST(PaperSuite, FreshCheckoutPasses) {
  auto r = paper_suite(data_dir(), SeedPolicy{});
  EXPECT_TRUE(r.all_passed()) << r.to_text();
  EXPECT_GT(r.checks().size(), 100u);
}

TEST(PaperSuite, ByteStableReports) {
  auto a = paper_suite(data_dir(), SeedPolicy{7, 3});
  auto b = paper_suite(data_dir(), SeedPolicy{7, 3});
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(PaperSuite, SeedDoesNotChangeOutcomes) {
  auto base = statuses(paper_suite(data_dir(), SeedPolicy{0, 3}));
  for (std::uint64_t seed : {1u, 99u, 123456789u}) EXPECT_EQ(statuses(paper_suite(data_dir(), SeedPolicy{seed, 3})), base);
}

TEST(PaperSuite, MutatedLChiFailsOnlyTheRelations) {
  auto dir = scratch_dir("mutated");
  for (auto name : {"inoue_bidouble.json", "inoue_z2z4.json"})
    std::filesystem::copy_file(data_dir() / name, dir / name);
  auto doc = nlohmann::ordered_json::parse(read_file(dir / "inoue_z2z4.json"));
  auto& L = doc["covers"][0]["L"]["chi"];
  ASSERT_TRUE(L.is_object());
  L["Q3p"] = L.value("Q3p", 0) + 1;
  std::ofstream(dir / "inoue_z2z4.json") << doc.dump(2);

  auto r = paper_suite(dir, SeedPolicy{});
  auto failed = r.names_with(CheckStatus::Fail);
  ASSERT_FALSE(failed.empty());
  for (const auto& n : failed)
    EXPECT_TRUE(n.rfind("inoue_z2z4/X/relations/order:", 0) == 0 || n.rfind("inoue_z2z4/X/relations/pair:", 0) == 0)
        << n;
  EXPECT_NE(std::find(failed.begin(), failed.end(), "inoue_z2z4/X/relations/order:chi"), failed.end());

  // Quantities built on the character sheaves are not evaluated.
  auto unsupported = r.names_with(CheckStatus::Unsupported);
  EXPECT_NE(std::find(unsupported.begin(), unsupported.end(), "inoue_z2z4/X/L/rho^2"), unsupported.end());
  EXPECT_NE(std::find(unsupported.begin(), unsupported.end(), "inoue_z2z4/S/p_g"), unsupported.end());
  EXPECT_EQ(exit_code(r), 1);

  // Everything outside the mutated file is untouched.
  auto fresh = statuses(paper_suite(data_dir(), SeedPolicy{}));
  for (const auto& [name, st] : statuses(r))
    if (name.rfind("inoue_z2z4/", 0) != 0) EXPECT_EQ(st, fresh.at(name)) << name;
  std::filesystem::remove_all(dir);
}
