#pragma once

// Workbench files: surfaces, covers and check requests in one JSON document,
// plus the verification suites that run over them.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scw/cover.hpp"
#include "scw/interp.hpp"
#include "scw/report.hpp"
#include "scw/surface.hpp"

namespace scw {

inline constexpr int kWorkbenchVersion = 1;

/// Malformed or inconsistent input. `path` is a JSON pointer into the
/// document (empty when the text itself does not parse).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct NamedClass {
  std::string name;
  DivisorClass cls;
};

struct SurfaceEntry {
  std::shared_ptr<const BlowupSurface> surface;
  std::vector<NamedClass> classes;

  const DivisorClass* named(std::string_view name) const;
};

struct CoverEntry {
  std::string surface;
  CoverSpec spec;
  /// Per branch component: the named class it refers to, or empty when the
  /// class was written out.
  std::vector<std::string> class_refs;
  std::optional<ContractionPlan> plan;
};

struct CheckRequest {
  std::string name;
  std::string kind;
  std::map<std::string, std::string> params;
  std::string expected;
  std::string citation;
};

struct WorkbenchFile {
  int version = kWorkbenchVersion;
  std::vector<SurfaceEntry> surfaces;
  std::vector<CoverEntry> covers;
  std::vector<CheckRequest> checks;

  const SurfaceEntry* surface(std::string_view id) const;
  const CoverEntry* cover(std::string_view id) const;
};

WorkbenchFile parse_workbench(std::string_view text);
/// Reads and parses a file; unreadable files raise InputError.
WorkbenchFile parse_spec(const std::filesystem::path& path);
std::string serialize(const WorkbenchFile& file);

/// Structural equality of two object models.
bool equivalent(const WorkbenchFile& a, const WorkbenchFile& b);

/// A linear combination such as "2L - Q - Q1p" or "-K + Phi + 1/2 Phi1".
/// Names resolve to the surface's named classes, then "K", then basis
/// symbols; `extra` is consulted first when given.
DivisorClass parse_class_expression(std::string_view text, const SurfaceEntry& surface,
                                    const std::map<std::string, DivisorClass>* extra = nullptr);

/// A class given either as a {symbol: coefficient} JSON object or as a JSON
/// string holding a class expression.
DivisorClass parse_class_json(std::string_view json_text, const SurfaceEntry& surface);

enum class Suite { Lattice, Surface, Cover, Lefschetz, All };

Suite parse_suite(std::string_view name);
std::string to_string(Suite suite);

/// The suite a check kind belongs to; throws InputError for unknown kinds.
Suite suite_of_kind(std::string_view kind);

VerificationReport run_suite(const WorkbenchFile& file, Suite suite, InterpolationOracle& oracle);

/// Every bundled fixture under `data_dir` plus the registered numerical
/// checks.
VerificationReport paper_suite(const std::filesystem::path& data_dir, const SeedPolicy& policy);

/// 0 when nothing failed, 1 otherwise.
int exit_code(const VerificationReport& report);

}  // namespace scw
