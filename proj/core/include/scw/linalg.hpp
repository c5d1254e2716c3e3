#pragma once

#include <cstddef>
#include <vector>

#include "scw/exact.hpp"

namespace scw {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Thrown for non-square or ragged input where a square system is required.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(IntegerMatrix m);

/// Exact determinant of a square rational matrix. Rows are cleared of
/// denominators first so the elimination itself stays fraction-free.
Rational determinant(const RationalMatrix& m);

/// Rank of an integer matrix (any shape) by fraction-free elimination.
std::size_t rank(IntegerMatrix m);

/// Smith normal form U * A * V = S with U, V unimodular and S diagonal,
/// s_1 | s_2 | ... | s_r, all s_i > 0, trailing entries zero.
struct SmithForm {
  IntegerMatrix U;  // rows x rows
  IntegerMatrix S;  // rows x cols
  IntegerMatrix V;  // cols x cols
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntegerMatrix& a);

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

}  // namespace scw
