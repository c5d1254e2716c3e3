#pragma once

// Plane point/line configurations given as construction scripts, their
// exact integer realizations, and the blowup surfaces built on them.

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "scw/lattice.hpp"

namespace scw {

struct FreePoint {
  std::string id;
};
struct FreeLine {
  std::string id;
};
struct LineThrough {
  std::string id;
  std::string p;
  std::string q;
};
struct PointOnLine {
  std::string id;
  std::string line;
};
struct IntersectionPoint {
  std::string id;
  std::string l1;
  std::string l2;
};

using ConstructionStep = std::variant<FreePoint, FreeLine, LineThrough, PointOnLine, IntersectionPoint>;
using ConstructionScript = std::vector<ConstructionStep>;

const std::string& step_id(const ConstructionStep& step);
bool defines_point(const ConstructionStep& step);

class ScriptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ids unique, references already defined and of the right kind.
void validate_script(const ConstructionScript& script);

/// For each line id, the point ids incident to it by construction.
std::map<std::string, std::set<std::string>> declared_incidences(const ConstructionScript& script);

/// Sets of three or more of `points` that share a constructed line.
std::vector<std::set<std::string>> collinear_sets(const ConstructionScript& script,
                                                  const std::vector<std::string>& points);

using Vec3 = std::array<Integer, 3>;

Vec3 cross(const Vec3& a, const Vec3& b);
Integer dot(const Vec3& a, const Vec3& b);
Integer det3(const Vec3& a, const Vec3& b, const Vec3& c);
bool is_zero(const Vec3& v);

struct Realization {
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::map<std::string, Vec3> points;
  std::map<std::string, Vec3> lines;
};

class RealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer coordinates for the script. Free choices are drawn from
/// [-10^4, 10^4]; a draw is rejected when a point or line degenerates, two
/// of `blown_up` coincide, or three of them are collinear without being
/// declared so. Throws RealizationError naming the seed once the retry
/// budget is spent.
Realization realize_configuration(const ConstructionScript& script,
                                  const std::vector<std::string>& blown_up, std::uint64_t seed,
                                  std::size_t max_attempts = 64);

struct BlownUpPoint {
  std::string point;
  std::string symbol;
};

struct BlowupSurface {
  std::string id;
  ConstructionScript script;
  std::vector<BlownUpPoint> blowups;
  LatticePtr lattice;
  DivisorClass canonical;
  /// Collinear sets expressed in exceptional symbols.
  std::vector<std::set<std::string>> collinear;

  std::vector<std::string> blown_up_points() const;
  /// Stable textual identity of script plus blowups (cache key).
  std::string fingerprint() const;
};

/// Blows up the listed points of the script. An empty blowup list with an
/// empty script gives the plane itself.
BlowupSurface build_surface(std::string id, ConstructionScript script,
                            std::vector<BlownUpPoint> blowups);

/// Every point the script defines is blown up, with the point id as symbol.
BlowupSurface build_surface(std::string id, ConstructionScript script);

}  // namespace scw
