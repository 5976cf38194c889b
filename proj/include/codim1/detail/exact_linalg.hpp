#pragma once

// Exact rational and integer linear algebra on small dense matrices.

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace codim1 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

struct RowEchelon {
  RationalMatrix rows;               // nonzero rows only, reduced
  std::vector<std::size_t> pivots;   // pivot column of each row
};

inline RowEchelon reduced_row_echelon(RationalMatrix m, std::size_t ncols) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = Rational(1) / m[row][col];
    for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational factor = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) m[i][j] -= factor * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m, std::size_t ncols) {
  return reduced_row_echelon(m, ncols).pivots.size();
}

/// Basis of {x : M x = 0}, one vector per free column.
inline RationalMatrix nullspace(const RationalMatrix& m, std::size_t ncols) {
  const RowEchelon ech = reduced_row_echelon(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) x[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

inline Integer gcd_abs(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Clears denominators and divides by the content; the zero vector maps to zero.
inline std::vector<Integer> primitive_integer(const std::vector<Rational>& x) {
  Integer lcm_den = 1;
  for (const auto& q : x) {
    const Integer d = boost::multiprecision::denominator(q);
    lcm_den = lcm_den / gcd_abs(lcm_den, d) * d;
  }
  std::vector<Integer> out;
  out.reserve(x.size());
  Integer g = 0;
  for (const auto& q : x) {
    out.push_back(boost::multiprecision::numerator(q) * (lcm_den / boost::multiprecision::denominator(q)));
    g = gcd_abs(g, out.back());
  }
  if (g > 1) {
    for (auto& e : out) e /= g;
  }
  return out;
}

struct ExtendedGcd {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};

inline ExtendedGcd extended_gcd(Integer a, Integer b) {
  Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    const Integer q = a / b;
    Integer tmp = a - q * b;
    a = b;
    b = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) return {-a, -s0, -t0};
  return {a, s0, t0};
}

/// Basis of the kernel lattice {x in Z^n : E x = 0} by unimodular column
/// reduction of E; the columns of the accumulated transform that end up
/// zero in E*U span the kernel.
inline IntegerMatrix integer_kernel_basis(IntegerMatrix e, std::size_t ncols) {
  IntegerMatrix u(ncols, std::vector<Integer>(ncols, Integer(0)));
  for (std::size_t i = 0; i < ncols; ++i) u[i][i] = 1;

  auto column_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : e) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto column_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : e) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
  };

  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < e.size() && pivot_col < ncols; ++r) {
    for (;;) {
      std::size_t best = ncols;
      for (std::size_t c = pivot_col; c < ncols; ++c) {
        if (e[r][c] != 0 && (best == ncols || abs(e[r][c]) < abs(e[r][best]))) best = c;
      }
      if (best == ncols) break;
      column_swap(pivot_col, best);
      bool done = true;
      for (std::size_t c = pivot_col + 1; c < ncols; ++c) {
        if (e[r][c] == 0) continue;
        column_axpy(c, pivot_col, e[r][c] / e[r][pivot_col]);
        if (e[r][c] != 0) done = false;
      }
      if (done) {
        ++pivot_col;
        break;
      }
    }
  }

  IntegerMatrix basis;
  for (std::size_t c = pivot_col; c < ncols; ++c) {
    std::vector<Integer> col(ncols);
    for (std::size_t i = 0; i < ncols; ++i) col[i] = u[i][c];
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace detail
}  // namespace codim1
