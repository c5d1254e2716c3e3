#pragma once

// Finite abelian groups Z/n1 x ... x Z/nk with elements and characters as
// residue tuples. A character b pairs with an element a as
// exp(2 pi i * sum a_j b_j / n_j); values are kept as exponents over the
// group exponent so nothing is ever rounded.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "scw/exact.hpp"

namespace scw {

using Residues = std::vector<std::int64_t>;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t factors() const { return orders_.size(); }
  std::int64_t order() const { return order_; }
  /// Least common multiple of the factor orders.
  std::int64_t exponent() const { return exponent_; }

  /// Reduces each residue into [0, n_j). Throws on arity mismatch.
  Residues normalize(const Residues& r) const;
  Residues identity() const { return Residues(orders_.size(), 0); }
  Residues add(const Residues& a, const Residues& b) const;
  Residues scale(const Residues& a, std::int64_t k) const;
  std::int64_t element_order(const Residues& a) const;
  bool is_identity(const Residues& a) const;

  /// Every element in lexicographic residue order.
  std::vector<Residues> elements() const;

  /// Pairing exponent t in [0, exponent) with chi(a) = exp(2 pi i t / exponent).
  std::int64_t pairing(const Residues& character, const Residues& element) const;

  bool operator==(const FiniteAbelianGroup& other) const { return orders_ == other.orders_; }

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t order_ = 1;
  std::int64_t exponent_ = 1;
};

/// A subgroup as its sorted element set.
using Subgroup = std::set<Residues>;

/// Subgroup generated by the given elements.
Subgroup generated_subgroup(const FiniteAbelianGroup& g, const std::vector<Residues>& gens);

/// All subgroups of the given order, duplicate free, in a deterministic order.
std::vector<Subgroup> subgroups_of_order(const FiniteAbelianGroup& g, std::int64_t n);

/// True when every element of the subgroup has order dividing 2.
bool is_elementary_abelian_2(const FiniteAbelianGroup& g, const Subgroup& s);

/// Whether every pair of subgroups shares an element of order 2.
bool pairwise_common_involution(const FiniteAbelianGroup& g, const std::vector<Subgroup>& subgroups);

/// A cyclic subgroup C = <generator> together with the faithful character
/// phi of C given by phi(generator) = exp(2 pi i * exponent / |C|).
struct CyclicPair {
  Residues generator;
  std::int64_t exponent = 1;
};

/// Canonical representative: the generator is replaced by the smallest
/// residue tuple generating the same subgroup, with the exponent adjusted
/// so the character is unchanged. Throws if the exponent is not a unit.
CyclicPair normalize(const FiniteAbelianGroup& g, const CyclicPair& pair);

Subgroup subgroup_of(const FiniteAbelianGroup& g, const CyclicPair& pair);
std::int64_t cyclic_order(const FiniteAbelianGroup& g, const CyclicPair& pair);

/// The unique f in [0, |C|) with psi|_C = phi^f.
std::int64_t restriction_level(const FiniteAbelianGroup& g, const CyclicPair& pair,
                               const Residues& character);

/// Order of a character in the dual group (same as the residue tuple order).
inline std::int64_t character_order(const FiniteAbelianGroup& g, const Residues& character) {
  return g.element_order(character);
}

/// Sum of the character over all group elements, as a count of how many
/// elements map to each exponent; zero for nontrivial characters.
bool character_sum_vanishes(const FiniteAbelianGroup& g, const Residues& character);

std::string format_residues(const Residues& r);

}  // namespace scw
