#pragma once

// Negative curves, pencils and contractions on blowup surfaces.

#include <optional>
#include <string>
#include <vector>

#include "scw/configuration.hpp"
#include "scw/interp.hpp"

namespace scw {

enum class CurveKind { MinusOne, MinusTwo, Other };

std::string to_string(CurveKind kind);

struct CurveRecord {
  DivisorClass cls;
  Integer self_int;
  Integer k_degree;
  Rational genus;
  CurveKind kind = CurveKind::Other;
  std::string provenance;
  /// Set by the catalog: no intersection with any catalogued (-2)-curve.
  bool disjoint_from_minus_two = false;
};

/// Fills in self-intersection, K-degree, genus and kind from the class.
CurveRecord make_curve(const BlowupSurface& surface, DivisorClass cls, std::string provenance = {});

/// Exceptional curves plus every class dL - sum m_i E_i (1 <= d <= bound,
/// m_i >= 0) of a smooth rational (-1)- or (-2)-curve with h0 = 1 whose
/// unique member contains no exceptional curve and splits into no two
/// effective classes of lower degree.
std::vector<CurveRecord> catalog_negative_curves(const BlowupSurface& surface, InterpolationOracle& oracle,
                                                 long degree_bound = 3);

struct MemberPart {
  CurveRecord curve;
  long multiplicity = 1;
};
using Decomposition = std::vector<MemberPart>;

struct Pencil {
  DivisorClass cls;
  std::vector<Decomposition> singular_members;
};

DivisorClass decomposition_sum(const Decomposition& parts, const LatticePtr& lattice);
std::string to_string(const Decomposition& parts);

/// Classes F with F^2 = 0, K.F = -2, h0 = 2 and F.C >= 0 for every curve
/// in the catalog. Singular members are not filled in.
std::vector<Pencil> find_pencils(const BlowupSurface& surface, const std::vector<CurveRecord>& catalog,
                                 InterpolationOracle& oracle, long degree_bound = 3);

/// Every way of writing the pencil class as a nonnegative combination of
/// catalogued curves orthogonal to it (with at least two parts).
std::vector<Decomposition> singular_members(const BlowupSurface& surface, const DivisorClass& pencil,
                                            const std::vector<CurveRecord>& catalog);

enum class ContractionTarget { Identity, NodalSurface, SmoothBlowdown };

std::string to_string(ContractionTarget target);

struct ContractionRecord {
  std::vector<CurveRecord> contracted;
  ContractionTarget target = ContractionTarget::Identity;
  std::size_t nodes = 0;
  Integer k2_before;
  Integer k2_after;
  /// Catalogued (-2)-curves left in the smooth locus.
  std::vector<CurveRecord> remaining_minus_two;
};

class ContractionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ContractionRecord contract(const BlowupSurface& surface, const std::vector<CurveRecord>& curves,
                           const std::vector<CurveRecord>& catalog = {});

}  // namespace scw
