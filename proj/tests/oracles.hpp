#pragma once

// Brute-force reference computations used only by the tests. None of these
// share code paths with the facet-based hull in codim1/lattice.hpp.

#include <cstdint>
#include <random>
#include <vector>

#include "codim1/codim1.hpp"

namespace oracle {

using codim1::Integer;
using codim1::LatticeVector;
using codim1::Rational;

namespace small {

using Matrix = std::vector<std::vector<long long>>;

// Fraction-free (Bareiss) elimination; returns the rank and, for square
// input, the determinant. Entries stay small for the test inputs.
inline std::pair<std::size_t, long long> bareiss(Matrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  long long prev = 1;
  std::size_t rank = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      std::swap(m[piv], m[rank]);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) m[r][j] = (m[r][j] * m[rank][c] - m[r][c] * m[rank][j]) / prev;
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  const long long det = (rows == cols && rank == rows) ? sign * m[rows - 1][cols - 1] : 0;
  return {rank, det};
}

inline bool next_subset(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t size = idx.size();
  std::size_t pos = size;
  while (pos > 0 && idx[pos - 1] == m - size + pos - 1) --pos;
  if (pos == 0) return false;
  ++idx[pos - 1];
  for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

inline std::vector<std::size_t> first_subset(std::size_t size) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  return idx;
}

}  // namespace small

/// Membership in conv(gens). If the hull has affine dimension d, p lies in
/// it iff p is in the affine hull and, after projecting to d coordinates on
/// which the hull is full-dimensional, some (d+1)-simplex of generators has
/// nonnegative barycentric coordinates for p (Cramer's rule, exact).
inline bool hull_contains(const std::vector<LatticeVector>& gens, const LatticeVector& p) {
  const std::size_t n = p.dim();
  const std::size_t m = gens.size();
  const auto ll = [](const Integer& x) { return x.convert_to<long long>(); };

  small::Matrix diffs;
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<long long> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = ll(gens[i][c] - gens[0][c]);
    diffs.push_back(std::move(row));
  }
  const std::size_t d = diffs.empty() ? 0 : small::bareiss(diffs).first;
  if (d == 0) return p == gens[0];
  {
    small::Matrix with_p = diffs;
    std::vector<long long> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = ll(p[c] - gens[0][c]);
    with_p.push_back(std::move(row));
    if (small::bareiss(with_p).first > d) return false;
  }

  // Coordinates on which the projection of the affine hull is injective.
  std::vector<std::size_t> cols = small::first_subset(d);
  for (;;) {
    small::Matrix sub;
    for (const auto& r : diffs) {
      std::vector<long long> row;
      for (std::size_t c : cols) row.push_back(r[c]);
      sub.push_back(std::move(row));
    }
    if (small::bareiss(sub).first == d) break;
    small::next_subset(cols, n);
  }

  const auto column = [&](const LatticeVector& x) {
    std::vector<long long> col;
    for (std::size_t c : cols) col.push_back(ll(x[c]));
    col.push_back(1);
    return col;
  };
  std::vector<std::vector<long long>> proj;
  for (const auto& g : gens) proj.push_back(column(g));
  const auto target = column(p);

  auto idx = small::first_subset(d + 1);
  do {
    small::Matrix mat(d + 1, std::vector<long long>(d + 1));
    const auto fill = [&](std::size_t replaced) {
      for (std::size_t j = 0; j <= d; ++j) {
        const auto& col = j == replaced ? target : proj[idx[j]];
        for (std::size_t r = 0; r <= d; ++r) mat[r][j] = col[r];
      }
      return small::bareiss(mat).second;
    };
    const long long det0 = fill(d + 1);
    if (det0 == 0) continue;
    bool inside = true;
    for (std::size_t j = 0; j <= d && inside; ++j) {
      const long long dj = fill(j);
      inside = dj == 0 || ((dj > 0) == (det0 > 0));
    }
    if (inside) return true;
  } while (small::next_subset(idx, m));
  return false;
}

/// Full n-dimensional bounding-box scan with Caratheodory membership.
inline std::vector<LatticeVector> lattice_points(const std::vector<LatticeVector>& gens) {
  const std::size_t n = gens.front().dim();
  std::vector<Integer> lo(n), hi(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = gens.front()[i];
    for (const auto& g : gens) {
      if (g[i] < lo[i]) lo[i] = g[i];
      if (g[i] > hi[i]) hi[i] = g[i];
    }
    cur[i] = lo[i];
  }
  std::vector<LatticeVector> out;
  while (true) {
    LatticeVector p(cur);
    if (hull_contains(gens, p)) out.push_back(p);
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++cur[i];
  }
  return out;  // lexicographic order is not guaranteed; callers sort
}

/// Vertices: generators not in the hull of the remaining generators.
inline std::vector<LatticeVector> vertices(std::vector<LatticeVector> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<LatticeVector> rest;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) rest.push_back(gens[j]);
    }
    if (rest.empty() || !hull_contains(rest, gens[i])) out.push_back(gens[i]);
  }
  return out;
}

/// {u, v} is a basis of its saturated lattice iff the 2x2 minors are coprime.
inline bool strip_free_by_minors(const LatticeVector& u, const LatticeVector& v) {
  Integer g = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    for (std::size_t j = i + 1; j < u.dim(); ++j) g = codim1::detail::gcd_abs(g, u[i] * v[j] - u[j] * v[i]);
  }
  return g == 1;
}

/// Scans the fundamental parallelogram {a u + b v : 0 <= a < 1, 0 < b < 1}
/// for lattice points; every point strictly inside the strip translates into it.
inline bool strip_free_by_scan(const LatticeVector& u, const LatticeVector& v) {
  const std::size_t n = u.dim();
  std::vector<Integer> lo(n), hi(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer r = abs(u[i]) + abs(v[i]);
    lo[i] = -r;
    hi[i] = r;
    cur[i] = lo[i];
  }
  codim1::detail::RationalMatrix base(n, std::vector<Rational>(3));
  while (true) {
    auto m = base;
    for (std::size_t i = 0; i < n; ++i) {
      m[i][0] = Rational(u[i]);
      m[i][1] = Rational(v[i]);
      m[i][2] = Rational(cur[i]);
    }
    const auto ech = codim1::detail::reduced_row_echelon(m, 3);
    const bool in_span = ech.pivots.empty() || ech.pivots.back() != 2;
    if (in_span && ech.pivots.size() == 2) {
      const Rational b = ech.rows[1][2];
      if (b > 0 && b < 1) return false;
    }
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++cur[i];
  }
  return true;
}

inline std::vector<LatticeVector> random_points(std::mt19937_64& rng, std::size_t n, std::size_t count, int max_coord) {
  std::uniform_int_distribution<int> coord(0, max_coord);
  std::vector<LatticeVector> pts;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Integer> c(n);
    for (auto& x : c) x = coord(rng);
    pts.emplace_back(std::move(c));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace oracle
