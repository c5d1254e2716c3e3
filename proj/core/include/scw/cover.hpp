#pragma once

// Abelian covers of blowup surfaces described by building data: branch
// components tagged with (cyclic subgroup, faithful character) pairs and
// one class L_psi per generating character.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scw/groups.hpp"
#include "scw/interp.hpp"
#include "scw/report.hpp"
#include "scw/surface.hpp"

namespace scw {

class CoverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BranchComponent {
  std::string name;
  DivisorClass cls;
  CyclicPair pair;
  std::int64_t asserted_components = 1;
};

struct NamedCharacter {
  std::string name;
  Residues residues;
};

struct CoverSpec {
  std::string id;
  FiniteAbelianGroup group;
  std::shared_ptr<const BlowupSurface> base;
  std::vector<BranchComponent> branch;
  /// Characters that carry a name; L classes are keyed by these names.
  std::vector<NamedCharacter> characters;
  std::map<std::string, DivisorClass> reduced_L;
  /// N with N * K_cover = pi^*(P); zero means the group exponent.
  std::int64_t canonical_multiplier = 0;

  const NamedCharacter* character(const std::string& name) const;
  const BranchComponent* component(const std::string& name) const;
  std::int64_t multiplier() const;
};

/// D_(C,phi): the sum of branch components carrying this pair.
DivisorClass branch_divisor(const CoverSpec& spec, const CyclicPair& pair);

/// The distinct normalized pairs occurring in the branch, in first-seen order.
std::vector<CyclicPair> branch_pairs(const CoverSpec& spec);

/// Right-hand side of ord(psi) * L_psi == sum (ord(psi) f / m_C) D_(C,phi).
DivisorClass order_relation_rhs(const CoverSpec& spec, const Residues& psi);

/// sum eps * D_(C,phi) with eps = 1 iff f_psi + f_psi' >= m_C.
DivisorClass pair_correction(const CoverSpec& spec, const Residues& psi, const Residues& psi2);

/// Relation checks for every given L plus reducedness and effectivity.
VerificationReport validate_cover_data(const CoverSpec& spec, InterpolationOracle& oracle);

/// Solves for L of every named character from the order and pair
/// relations (used when the building data lists no L classes).
std::variant<std::map<std::string, DivisorClass>, Unsolvable> solve_building_data(const CoverSpec& spec);

struct PathConflict {
  Residues character;
  DivisorClass first;
  DivisorClass second;
  std::string detail;
};

using CharacterSheaves = std::map<Residues, DivisorClass>;

/// L for every character, grown from the given ones by the pair rule and
/// then checked on every pair of characters.
std::variant<CharacterSheaves, PathConflict> derive_all_L(const CoverSpec& spec);

/// "chi*rho^2"-style name of a character in terms of the named ones.
std::string character_label(const CoverSpec& spec, const Residues& psi);

enum class PointVerdict { Smooth, NodeA1, Unsupported };

std::string to_string(PointVerdict verdict);

struct BranchPointAnalysis {
  std::string first;
  std::string second;
  /// Intersection number, read as a count of transverse crossings.
  Integer points;
  Subgroup inertia;
  /// Preimages of each crossing point.
  std::int64_t preimage_count = 0;
  PointVerdict verdict = PointVerdict::Unsupported;
};

std::vector<BranchPointAnalysis> classify_branch_points(const CoverSpec& spec);

struct InconsistentAssertion {
  std::string component;
  std::string detail;
};

struct PullbackRecord {
  std::string component;
  std::int64_t e = 1;  // inertia order
  std::int64_t n = 1;  // asserted components
  Rational d;          // degree of each component over the base curve
  Rational s;          // self-intersection of each component
};

std::variant<PullbackRecord, InconsistentAssertion> pullback(const CoverSpec& spec, const BranchComponent& b);

struct ConsistencyVerdict {
  bool consistent = true;
  std::optional<Rational> genus;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
};

/// Degree, self-intersection denominator, Hurwitz genus, stabilizer and
/// adjunction checks on the asserted component count.
ConsistencyVerdict preimage_consistency(const CoverSpec& spec, const BranchComponent& b);

struct CanonicalCover {
  std::int64_t multiplier = 1;
  DivisorClass P;
  Rational P2;
  Rational k2;
};

/// P = N K + sum N (1 - 1/m_C) D; K^2 of the cover is |G| P^2 / N^2.
CanonicalCover canonical_cover(const CoverSpec& spec, std::optional<std::int64_t> multiplier = std::nullopt);

struct CharacterTerm {
  Residues character;
  std::string label;
  DivisorClass L;
  Rational chi_term;
  std::size_t h0_adjoint = 0;  // h0(K + L_psi)
};

struct CoverInvariants {
  Rational k2_cover;
  Rational chi;
  Integer p_g;
  Integer q;
  std::vector<CharacterTerm> terms;
};

std::variant<CoverInvariants, PathConflict> invariants(const CoverSpec& spec, InterpolationOracle& oracle);

/// The double cover obtained by dividing out the kernel of an order-2
/// character whose kernel is elementary abelian.
std::variant<CoverSpec, std::string> quotient_cover(const CoverSpec& spec, const Residues& psi);

struct ContractionPlan {
  /// Branch components whose preimages are (-1)-curves.
  std::vector<std::string> simple;
  /// Branch components whose preimages pass through a node: (-1) then (-2).
  std::vector<std::string> node_threading;
  /// Base (-2)-curves the canonical model contracts.
  std::vector<std::string> base_contracted;
};

struct MinimalModel {
  Rational k2_cover;
  std::int64_t simple = 0;
  std::int64_t threading = 0;
  Rational k2_counted;
  DivisorClass P_min;
  Rational k2_class;
  bool ample = true;
  std::vector<std::string> ampleness_failures;
};

/// K^2 after the planned contractions, computed by counting and from the
/// pulled-back class; `base_curves` maps names of base curves to classes
/// and supplies the curves for the ampleness proxy.
std::variant<MinimalModel, InconsistentAssertion> minimal_model(
    const CoverSpec& spec, const ContractionPlan& plan,
    const std::vector<std::pair<std::string, DivisorClass>>& base_curves);

}  // namespace scw
