#include "scw/linalg.hpp"

#include <algorithm>
#include <utility>

namespace scw {

namespace {

void require_square(std::size_t rows, const auto& m) {
  for (const auto& row : m) {
    if (row.size() != rows) throw DimensionError("matrix is not square");
  }
}

IntegerMatrix identity(std::size_t n) {
  IntegerMatrix id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace

Integer determinant(IntegerMatrix m) {
  const std::size_t n = m.size();
  require_square(n, m);
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  require_square(n, m);
  IntegerMatrix scaled(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) scaled[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    scale *= l;
  }
  return make_rational(determinant(std::move(scaled)), scale);
}

std::size_t rank(IntegerMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer t = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  IntegerMatrix out(a.size(), std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw DimensionError("incompatible matrix product");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

SmithForm smith_normal_form(const IntegerMatrix& a) {
  SmithForm f;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  f.S = a;
  f.U = identity(rows);
  f.V = identity(cols);
  auto& S = f.S;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(S[i], S[j]);
    std::swap(f.U[i], f.U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : S) std::swap(row[i], row[j]);
    for (auto& row : f.V) std::swap(row[i], row[j]);
  };
  // row_i -= q * row_t
  auto sub_row = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < cols; ++j) S[i][j] -= q * S[t][j];
    for (std::size_t j = 0; j < rows; ++j) f.U[i][j] -= q * f.U[t][j];
  };
  auto sub_col = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < rows; ++i) S[i][j] -= q * S[i][t];
    for (std::size_t i = 0; i < cols; ++i) f.V[i][j] -= q * f.V[i][t];
  };

  std::size_t t = 0;
  while (t < std::min(rows, cols)) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (S[i][j] != 0 && (pi == rows || abs(S[i][j]) < abs(S[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S[i][t].get_mpz_t(), S[t][t].get_mpz_t());
        sub_row(i, t, q);
        if (S[i][t] != 0) {
          clean = false;
          if (abs(S[i][t]) < abs(S[t][t])) swap_rows(t, i);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), S[t][j].get_mpz_t(), S[t][t].get_mpz_t());
        sub_col(j, t, q);
        if (S[t][j] != 0) {
          clean = false;
          if (abs(S[t][j]) < abs(S[t][t])) swap_cols(t, j);
        }
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (!mpz_divisible_p(S[i][j].get_mpz_t(), S[t][t].get_mpz_t())) {
            sub_row(t, i, Integer(-1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (S[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) S[t][j] = -S[t][j];
      for (std::size_t j = 0; j < rows; ++j) f.U[t][j] = -f.U[t][j];
    }
    ++t;
  }
  f.rank = t;
  return f;
}

}  // namespace scw
