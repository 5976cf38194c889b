#pragma once

// Exact integer lattice geometry: exponent vectors, supports, lattice
// polytopes and their integer points, Minkowski sums, and line detection.
//
// Nothing in this header touches floating point. Coordinates are
// arbitrary-precision integers and hull computations run over the rationals.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "codim1/detail/exact_linalg.hpp"
#include "codim1/error.hpp"

namespace codim1 {

/// Integer exponent vector in Z^n. Ordered lexicographically.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static LatticeVector zero(std::size_t n) { return LatticeVector(std::vector<Integer>(n, Integer(0))); }
  static LatticeVector unit(std::size_t n, std::size_t axis) {
    LatticeVector e = zero(n);
    e.coords_.at(axis) = 1;
    return e;
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Integer> coords() const noexcept { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c >= 0; });
  }

  Integer dot(const LatticeVector& other) const {
    check_dim(other);
    Integer s = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
    return s;
  }

  friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    a.check_dim(b);
    std::vector<Integer> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a.coords_[i] + b.coords_[i];
    return LatticeVector(std::move(out));
  }
  friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    a.check_dim(b);
    std::vector<Integer> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a.coords_[i] - b.coords_[i];
    return LatticeVector(std::move(out));
  }
  friend LatticeVector operator*(const Integer& s, const LatticeVector& a) {
    std::vector<Integer> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a.coords_[i];
    return LatticeVector(std::move(out));
  }
  friend LatticeVector operator-(const LatticeVector& a) { return Integer(-1) * a; }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
  }

 private:
  void check_dim(const LatticeVector& other) const {
    if (other.dim() != dim()) {
      throw Error(ErrorKind::DimensionMismatch, to_string() + " vs " + other.to_string());
    }
  }

  std::vector<Integer> coords_;
};

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.to_string(); }

/// v divided by the gcd of its entries.
inline LatticeVector primitive_vector(const LatticeVector& v) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroVector, "primitive_vector of " + v.to_string());
  Integer g = 0;
  for (const auto& c : v.coords()) g = detail::gcd_abs(g, c);
  std::vector<Integer> out(v.coords().begin(), v.coords().end());
  for (auto& c : out) c /= g;
  return LatticeVector(std::move(out));
}

inline bool is_primitive(const LatticeVector& v) {
  if (v.is_zero()) return false;
  Integer g = 0;
  for (const auto& c : v.coords()) g = detail::gcd_abs(g, c);
  return g == 1;
}

/// True iff a and b are linearly dependent (all 2x2 minors vanish).
inline bool parallel(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, a.to_string() + " vs " + b.to_string());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

/// A nonempty finite set of exponent vectors in N^n, stored sorted.
class SupportSet {
 public:
  /// Rejects empty input, dimension mismatches, negative coordinates and duplicates.
  SupportSet(std::size_t ambient_dim, std::vector<LatticeVector> points)
      : ambient_dim_(ambient_dim), points_(std::move(points)) {
    if (ambient_dim_ == 0) throw Error(ErrorKind::InvalidSupport, "ambient dimension must be positive");
    if (points_.empty()) throw Error(ErrorKind::InvalidSupport, "support set is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dim() != ambient_dim_) {
        throw Error(ErrorKind::DimensionMismatch, "point " + std::to_string(i) + " " + points_[i].to_string() +
                                                      " has length " + std::to_string(points_[i].dim()) +
                                                      ", expected " + std::to_string(ambient_dim_));
      }
      if (!points_[i].is_nonnegative()) {
        throw Error(ErrorKind::InvalidSupport, "point " + std::to_string(i) + " " + points_[i].to_string() +
                                                   " has a negative coordinate");
      }
    }
    std::sort(points_.begin(), points_.end());
    auto dup = std::adjacent_find(points_.begin(), points_.end());
    if (dup != points_.end()) throw Error(ErrorKind::InvalidSupport, "duplicate point " + dup->to_string());
  }

  /// Same as the validating constructor but merges duplicates silently.
  static SupportSet deduplicated(std::size_t ambient_dim, std::vector<LatticeVector> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return SupportSet(ambient_dim, std::move(points));
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<LatticeVector>& points() const noexcept { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const LatticeVector& front() const { return points_.front(); }

  bool contains(const LatticeVector& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.points_ == b.points_;
  }

 private:
  std::size_t ambient_dim_;
  std::vector<LatticeVector> points_;
};

inline std::ostream& operator<<(std::ostream& os, const SupportSet& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s.points()[i];
  return os << '}';
}

namespace detail {

inline RationalMatrix difference_rows(std::span<const LatticeVector> pts, const LatticeVector& base) {
  RationalMatrix rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<Rational> row(base.dim());
    for (std::size_t i = 0; i < base.dim(); ++i) row[i] = Rational(p[i] - base[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Dimension of the affine hull of S.
inline std::size_t affine_dim(const SupportSet& s) {
  return detail::rank(detail::difference_rows(s.points(), s.front()), s.ambient_dim());
}

inline SupportSet minkowski_sum(const SupportSet& a, const SupportSet& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "minkowski_sum of supports in dimensions " +
                                                  std::to_string(a.ambient_dim()) + " and " +
                                                  std::to_string(b.ambient_dim()));
  }
  std::vector<LatticeVector> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a) {
    for (const auto& q : b) out.push_back(p + q);
  }
  return SupportSet::deduplicated(a.ambient_dim(), std::move(out));
}

/// A line base + R*direction with a primitive direction.
struct LineWitness {
  LatticeVector base;
  LatticeVector direction;
};

/// Returns the line through S when S has affine dimension at most one. The
/// base is the lexicographically least point; a single point gets the
/// direction e_1.
inline std::optional<LineWitness> line_containment(const SupportSet& s) {
  if (affine_dim(s) > 1) return std::nullopt;
  const LatticeVector& base = s.front();
  if (s.size() == 1) return LineWitness{base, LatticeVector::unit(s.ambient_dim(), 0)};
  return LineWitness{base, primitive_vector(s.points()[1] - base)};
}

/// Convex hull of a support set. The affine hull, the facet inequalities
/// and the vertices are computed on construction; the integer points are
/// enumerated on first request and cached.
class LatticePolytope {
 public:
  struct Facet {
    LatticeVector normal;  // lies in the linear span of the polytope, primitive
    Integer offset;        // normal . x >= offset on the polytope
  };

  explicit LatticePolytope(SupportSet generators)
      : generators_(std::move(generators)), points_cache_(std::make_shared<PointsCache>()) {
    build_hull();
  }

  std::size_t ambient_dim() const noexcept { return generators_.ambient_dim(); }
  std::size_t dim() const noexcept { return frame_.pivots.size(); }
  const SupportSet& generators() const noexcept { return generators_; }
  const SupportSet& vertices() const { return *vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  bool contains(const LatticeVector& x) const {
    if (x.dim() != ambient_dim()) return false;
    const auto y = lift(x);
    if (!y || !(*y == x)) return false;
    return satisfies_facets(x);
  }

  /// All integer points of the hull, sorted lexicographically.
  const SupportSet& lattice_points() const {
    std::call_once(points_cache_->once, [this] { points_cache_->points.emplace(enumerate()); });
    return *points_cache_->points;
  }

 private:
  struct PointsCache {
    std::once_flag once;
    std::optional<SupportSet> points;
  };

  const LatticeVector& base() const { return generators_.front(); }

  // Point of the affine hull whose pivot coordinates agree with x, if integral.
  std::optional<LatticeVector> lift(const LatticeVector& x) const {
    const std::size_t n = ambient_dim();
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = Rational(base()[i]);
    for (std::size_t r = 0; r < frame_.rows.size(); ++r) {
      const Rational c(x[frame_.pivots[r]] - base()[frame_.pivots[r]]);
      if (c == 0) continue;
      for (std::size_t i = 0; i < n; ++i) y[i] += c * frame_.rows[r][i];
    }
    std::vector<Integer> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (boost::multiprecision::denominator(y[i]) != 1) return std::nullopt;
      out[i] = boost::multiprecision::numerator(y[i]);
    }
    return LatticeVector(std::move(out));
  }

  bool satisfies_facets(const LatticeVector& x) const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Facet& f) { return f.normal.dot(x) >= f.offset; });
  }

  void build_hull() {
    const std::size_t n = ambient_dim();
    const auto& pts = generators_.points();
    frame_ = detail::reduced_row_echelon(detail::difference_rows(pts, base()), n);
    const std::size_t d = frame_.pivots.size();

    if (d > 0) {
      // Each affinely independent d-subset spans a candidate hyperplane
      // inside the affine hull; keep those that support every generator.
      std::vector<std::size_t> idx(d);
      for (std::size_t i = 0; i < d; ++i) idx[i] = i;
      std::vector<std::pair<LatticeVector, Integer>> found;
      const std::size_t m = pts.size();
      while (true) {
        consider_subset(idx, found);
        std::size_t pos = d;
        while (pos > 0 && idx[pos - 1] == m - d + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < d; ++j) idx[j] = idx[j - 1] + 1;
      }
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end()), found.end());
      for (auto& [normal, offset] : found) facets_.push_back({std::move(normal), std::move(offset)});
    }

    std::vector<LatticeVector> verts;
    for (const auto& g : pts) {
      detail::RationalMatrix tight;
      for (const auto& f : facets_) {
        if (f.normal.dot(g) == f.offset) {
          std::vector<Rational> row(n);
          for (std::size_t i = 0; i < n; ++i) row[i] = Rational(f.normal[i]);
          tight.push_back(std::move(row));
        }
      }
      if (detail::rank(tight, n) == d) verts.push_back(g);
    }
    vertices_.emplace(n, std::move(verts));
  }

  void consider_subset(const std::vector<std::size_t>& idx, std::vector<std::pair<LatticeVector, Integer>>& found) {
    const std::size_t n = ambient_dim();
    const std::size_t d = idx.size();
    const auto& pts = generators_.points();
    const LatticeVector& s0 = pts[idx[0]];
    // Coefficients c with normal = sum_j c_j * frame row j, orthogonal to s_i - s0.
    detail::RationalMatrix eqs;
    for (std::size_t i = 1; i < d; ++i) {
      std::vector<Rational> eq(d);
      for (std::size_t j = 0; j < d; ++j) {
        Rational s = 0;
        for (std::size_t t = 0; t < n; ++t) s += frame_.rows[j][t] * Rational(pts[idx[i]][t] - s0[t]);
        eq[j] = s;
      }
      eqs.push_back(std::move(eq));
    }
    const auto ker = detail::nullspace(eqs, d);
    if (ker.size() != 1) return;
    std::vector<Rational> normal(n, Rational(0));
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t t = 0; t < n; ++t) normal[t] += ker[0][j] * frame_.rows[j][t];
    }
    LatticeVector a(detail::primitive_integer(normal));
    const Integer at_s0 = a.dot(s0);
    bool any_pos = false, any_neg = false;
    for (const auto& p : pts) {
      const Integer side = a.dot(p) - at_s0;
      if (side > 0) any_pos = true;
      if (side < 0) any_neg = true;
      if (any_pos && any_neg) return;
    }
    if (any_neg) found.emplace_back(-a, -at_s0);
    else found.emplace_back(std::move(a), at_s0);
  }

  // Scan the box of pivot coordinates; every other coordinate is determined
  // by the affine hull.
  SupportSet enumerate() const {
    const std::size_t n = ambient_dim();
    const std::size_t d = dim();
    const auto& pts = generators_.points();
    if (d == 0) return generators_;

    std::vector<Integer> lo(d), hi(d), cur(d);
    for (std::size_t r = 0; r < d; ++r) {
      const std::size_t c = frame_.pivots[r];
      lo[r] = hi[r] = pts.front()[c];
      for (const auto& p : pts) {
        lo[r] = std::min(lo[r], p[c]);
        hi[r] = std::max(hi[r], p[c]);
      }
      cur[r] = lo[r];
    }

    std::vector<LatticeVector> out;
    std::vector<Integer> probe(n, Integer(0));
    while (true) {
      for (std::size_t r = 0; r < d; ++r) probe[frame_.pivots[r]] = cur[r];
      if (auto y = lift(LatticeVector(probe)); y && satisfies_facets(*y)) out.push_back(std::move(*y));
      std::size_t r = 0;
      while (r < d && cur[r] == hi[r]) {
        cur[r] = lo[r];
        ++r;
      }
      if (r == d) break;
      ++cur[r];
    }
    return SupportSet::deduplicated(n, std::move(out));
  }

  SupportSet generators_;
  detail::RowEchelon frame_;
  std::vector<Facet> facets_;
  std::optional<SupportSet> vertices_;
  std::shared_ptr<PointsCache> points_cache_;
};

inline const SupportSet& lattice_points(const LatticePolytope& p) { return p.lattice_points(); }

struct LemmaCheck {
  std::size_t sigma = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;
  bool equality = false;
  bool sum_in_line = false;
};

/// Counts lattice points of A, B and A+B. sigma >= alpha + beta - 1 always;
/// for alpha, beta >= 2 equality holds exactly when A+B lies on a line.
inline LemmaCheck lemma_difr2_check(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "polytopes live in different dimensions");
  }
  const LatticePolytope sum(minkowski_sum(a.vertices(), b.vertices()));
  LemmaCheck out;
  out.alpha = a.lattice_points().size();
  out.beta = b.lattice_points().size();
  out.sigma = sum.lattice_points().size();
  out.equality = out.sigma + 1 == out.alpha + out.beta;
  out.sum_in_line = line_containment(sum.lattice_points()).has_value();
  return out;
}

}  // namespace codim1
