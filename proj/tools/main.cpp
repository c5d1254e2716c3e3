// scw: verify workbench files, run the bundled suite, query h0 and the
// fixed-point checks.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "scw/lefschetz.hpp"
#include "scw/workbench.hpp"

namespace {

constexpr int kInputError = 2;

std::uint64_t seed_from_env() {
  const char* env = std::getenv("SCW_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw scw::InputError("", std::string("SCW_SEED is not an unsigned integer: '") + env + "'");
  }
}

int emit(const scw::VerificationReport& report, const std::string& report_path) {
  std::cout << report.to_text();
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw scw::InputError("", "cannot write report to '" + report_path + "'");
    out << report.to_json();
  }
  return scw::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification workbench for blowup surfaces and their abelian covers"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  std::string report_path;

  std::string file, suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the checks of a workbench file");
  verify->add_option("file", file, "Workbench JSON file")->required();
  verify->add_option("--suite", suite, "lattice, surface, cover, lefschetz or all")
      ->check(CLI::IsMember({"lattice", "surface", "cover", "lefschetz", "all"}));
  verify->add_option("--seed", seed_flag, "Realization seed (overrides SCW_SEED)");
  verify->add_option("--report", report_path, "Also write the report as JSON");

  std::string data_dir = SCW_DEFAULT_DATA_DIR;
  auto* paper = app.add_subcommand("paper-suite", "Run every bundled fixture and the registered numerical checks");
  paper->add_option("--seed", seed_flag, "Realization seed (overrides SCW_SEED)");
  paper->add_option("--data-dir", data_dir, "Directory holding the fixtures");
  paper->add_option("--report", report_path, "Also write the report as JSON");

  std::string surface_id, class_text;
  auto* h0 = app.add_subcommand("h0", "Number of sections of a class on a surface");
  h0->add_option("file", file, "Workbench JSON file")->required();
  h0->add_option("surface", surface_id, "Surface id")->required();
  h0->add_option("class", class_text, "Class as a JSON object or an expression such as '2L - Q - Q1'")->required();
  h0->add_option("--seed", seed_flag, "Realization seed (overrides SCW_SEED)");

  std::string tag;
  std::vector<std::string> params;
  bool list = false;
  auto* lef = app.add_subcommand("lefschetz", "Run a registered fixed-point check");
  lef->add_option("tag", tag, "Check tag");
  lef->add_option("params", params, "Parameters as key=value");
  lef->add_flag("--list", list, "List the registered tags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    scw::SeedPolicy policy;
    policy.seed = seed_flag ? *seed_flag : seed_from_env();

    if (*verify) {
      const scw::WorkbenchFile wb = scw::parse_spec(file);
      scw::InterpolationOracle oracle(policy);
      return emit(scw::run_suite(wb, scw::parse_suite(suite), oracle), report_path);
    }
    if (*paper) return emit(scw::paper_suite(data_dir, policy), report_path);
    if (*h0) {
      const scw::WorkbenchFile wb = scw::parse_spec(file);
      const scw::SurfaceEntry* s = wb.surface(surface_id);
      if (!s) throw scw::InputError("", "unknown surface '" + surface_id + "'");
      const scw::DivisorClass d = scw::parse_class_json(class_text, *s);
      scw::InterpolationOracle oracle(policy);
      std::cout << oracle.h0(*s->surface, d) << '\n';
      return 0;
    }
    if (*lef) {
      if (list || tag.empty()) {
        for (const auto& c : scw::named_checks()) {
          std::cout << c.tag << "  " << c.summary;
          if (!c.params.empty()) {
            std::cout << "  [";
            for (std::size_t i = 0; i < c.params.size(); ++i) std::cout << (i ? " " : "") << c.params[i];
            std::cout << ']';
          }
          std::cout << '\n';
        }
        return tag.empty() && !list ? kInputError : 0;
      }
      std::map<std::string, std::string> kv;
      for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw scw::InputError("", "parameter '" + p + "' is not key=value");
        kv[p.substr(0, eq)] = p.substr(eq + 1);
      }
      try {
        return emit(scw::run_named_check(tag, kv), "");
      } catch (const std::invalid_argument& e) {
        throw scw::InputError("", e.what());
      }
    }
  } catch (const scw::InputError& e) {
    std::cerr << "scw: " << e.what() << '\n';
    return kInputError;
  } catch (const scw::ParseError& e) {
    std::cerr << "scw: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "scw: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
