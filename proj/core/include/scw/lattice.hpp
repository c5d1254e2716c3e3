#pragma once

// Divisor classes on Picard lattices of rational surfaces.
//
// Two kinds of lattice are supported. A blowup lattice has the basis
// {L, E_1, ..., E_n} with the diagonal form (+1, -1, ..., -1) and canonical
// class -3L + sum E_i. An abstract lattice carries arbitrary symmetric
// rational Gram data on named generators; it is used when only intersection
// numbers of a few classes are known.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scw/exact.hpp"
#include "scw/linalg.hpp"

namespace scw {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

class Lattice {
 public:
  /// Blowup of the plane at points named by `exceptional` (in order). The
  /// line class is always called "L".
  static LatticePtr blowup(std::vector<std::string> exceptional);

  /// Named generators with an arbitrary symmetric Gram matrix.
  static LatticePtr abstract(std::vector<std::string> names, RationalMatrix gram);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Rational& form(std::size_t i, std::size_t j) const { return gram_[i][j]; }
  const RationalMatrix& gram() const { return gram_; }
  bool is_blowup() const { return blowup_; }

  /// Structural equality (same names, same form).
  bool same_as(const Lattice& other) const;

 private:
  Lattice(std::vector<std::string> names, RationalMatrix gram, bool blowup);

  std::vector<std::string> names_;
  RationalMatrix gram_;
  bool blowup_ = false;
};

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(LatticePtr lattice);

  /// The generator named `symbol`. Throws LatticeError for unknown names.
  static DivisorClass basis(LatticePtr lattice, std::string_view symbol);

  /// Sum of coefficient * symbol; unknown symbols throw LatticeError.
  static DivisorClass from_terms(LatticePtr lattice,
                                 std::span<const std::pair<std::string, Rational>> terms);
  static DivisorClass from_terms(
      LatticePtr lattice, std::initializer_list<std::pair<std::string, Rational>> terms);

  const LatticePtr& lattice() const { return lattice_; }
  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational coeff(std::string_view symbol) const;
  void set(std::size_t i, Rational value) { coeffs_[i] = std::move(value); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_integral() const;
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass& operator*=(const Rational& scalar);
  DivisorClass operator-() const;

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
  friend DivisorClass operator*(DivisorClass a, const Rational& s) { return a *= s; }

  /// Coefficient-wise equality on the same lattice.
  bool operator==(const DivisorClass& other) const;

  /// Human-readable form such as "5L - E1 - 3E2 + 1/2 Q".
  std::string to_string() const;

  /// Symbols whose coefficients differ between this and `other`.
  std::vector<std::string> differing_symbols(const DivisorClass& other) const;

 private:
  void require_same(const DivisorClass& other) const;

  LatticePtr lattice_;
  std::vector<Rational> coeffs_;
};

/// -3L + sum of exceptional classes. Only defined on blowup lattices.
DivisorClass canonical_class(const LatticePtr& lattice);

/// Bilinear intersection pairing. Throws LatticeError on mismatched lattices.
Rational intersect(const DivisorClass& a, const DivisorClass& b);

inline Rational self_intersection(const DivisorClass& d) { return intersect(d, d); }

/// Exact determinant of a symmetric Gram matrix.
Rational gram_det(const RationalMatrix& gram);

/// Determinant of the intersection matrix of the given classes.
Rational gram_det(std::span<const DivisorClass> classes);

/// Arithmetic genus 1 + (D^2 + K.D)/2.
Rational adjunction_genus(const DivisorClass& d, const DivisorClass& canonical);

struct NotDivisible {
  std::string symbol;
  Rational coefficient;
};

/// X with n * X = D, divided coefficient by coefficient over the Z-basis.
std::variant<DivisorClass, NotDivisible> solve_divide(const DivisorClass& d, long n);

/// One linear-equivalence constraint: sum_j a_j * X_j == rhs, where the X_j
/// are unknown classes named by the keys of `unknowns`.
struct Relation {
  std::map<std::string, Integer> unknowns;
  DivisorClass rhs;
  std::string label;
};

struct LinearSolution {
  std::map<std::string, DivisorClass> values;
  /// Dimension of the integral solution set (per basis coordinate).
  std::size_t free_dimensions = 0;
};

/// Certificate of unsolvability: with integer weights w_j on the relations,
/// sum_j w_j * (unknown side) is divisible by `modulus` (identically zero if
/// modulus == 0) while the coefficient of `symbol` in sum_j w_j * rhs_j is
/// not.
struct Unsolvable {
  std::vector<Integer> weights;
  Integer modulus;
  std::string symbol;
  Rational offending_value;
};

/// Integral solution of a linear system of divisor-class relations over a
/// torsion-free lattice. A particular solution is returned; free unknowns
/// are set to zero and counted in free_dimensions.
std::variant<LinearSolution, Unsolvable> solve_linear(const std::vector<Relation>& relations,
                                                      const LatticePtr& lattice);

struct HodgeVerdict {
  bool passes = true;
  /// (K.D)^2 / K^2, an upper bound for D^2.
  Rational bound;
  /// floor of bound: largest admissible integral D^2.
  Integer max_integral_square;
};

/// Algebraic index theorem: with K^2 > 0, (K.D)^2 >= K^2 * D^2. When `d2`
/// is absent only the bound is reported.
HodgeVerdict hodge_index_bound(const Rational& k2, const Rational& kd,
                               std::optional<Rational> d2 = std::nullopt);

}  // namespace scw
