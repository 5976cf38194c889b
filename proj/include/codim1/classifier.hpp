#pragma once

// Decides, from the Newton polytopes alone, whether a generic polynomial map
// (C*)^n -> C^k with those polytopes has points whose fiber has codimension
// one, and how many.
//
// The answer is nonempty exactly when k = 2, Delta_1 is a segment on a line
// L1 through the origin, and Delta_2 lies in the strip between L1 and a
// parallel lattice line L2 with no lattice points strictly between them.
// The number of such points is then |Delta_2 cap L2 cap Z^n| - 1.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "codim1/lattice.hpp"

namespace codim1 {

/// Delta_1, ..., Delta_k in R^n, each with the origin as a vertex.
class PolytopeCollection {
 public:
  PolytopeCollection(std::size_t n, std::vector<LatticePolytope> deltas) : n_(n), deltas_(std::move(deltas)) {
    if (deltas_.empty()) throw Error(ErrorKind::MalformedCollection, "collection is empty");
    const LatticeVector origin = LatticeVector::zero(n_);
    for (std::size_t i = 0; i < deltas_.size(); ++i) {
      if (deltas_[i].ambient_dim() != n_) {
        throw Error(ErrorKind::MalformedCollection, "polytope " + std::to_string(i) + " has ambient dimension " +
                                                        std::to_string(deltas_[i].ambient_dim()) + ", expected " +
                                                        std::to_string(n_));
      }
      if (!deltas_[i].vertices().contains(origin)) {
        throw Error(ErrorKind::MalformedCollection, "polytope " + std::to_string(i) + " does not have the origin as a vertex");
      }
    }
  }

  static PolytopeCollection from_supports(std::size_t n, const std::vector<SupportSet>& supports) {
    std::vector<LatticePolytope> deltas;
    deltas.reserve(supports.size());
    for (const auto& s : supports) deltas.emplace_back(s);
    return PolytopeCollection(n, std::move(deltas));
  }

  std::size_t k() const noexcept { return deltas_.size(); }
  std::size_t n() const noexcept { return n_; }
  const std::vector<LatticePolytope>& deltas() const noexcept { return deltas_; }
  const LatticePolytope& operator[](std::size_t i) const { return deltas_[i]; }

 private:
  std::size_t n_;
  std::vector<LatticePolytope> deltas_;
};

struct IndependenceResult {
  bool independent = true;
  std::optional<std::vector<std::size_t>> witness;  // 0-based indices of a violating subset
};

/// Checks dim(sum_{i in I} Delta_i) >= |I| over every nonempty I. The
/// reported witness is the first violation by cardinality, then
/// lexicographic order.
inline IndependenceResult is_independent(const PolytopeCollection& c) {
  const std::size_t k = c.k();
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      SupportSet sum = c[idx[0]].vertices();
      for (std::size_t j = 1; j < size; ++j) sum = minkowski_sum(sum, c[idx[j]].vertices());
      if (affine_dim(sum) < size) return {false, idx};
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == k - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

/// The saturated rank-2 lattice Z^n cap span(u, v) together with the
/// quotient map onto Z whose kernel is Z*u.
class StripLattice {
 public:
  StripLattice(const LatticeVector& u, const LatticeVector& v) {
    const std::size_t n = u.dim();
    if (v.dim() != n) throw Error(ErrorKind::DimensionMismatch, u.to_string() + " vs " + v.to_string());
    if (!is_primitive(u)) throw Error(ErrorKind::PreconditionViolation, "direction " + u.to_string() + " is not primitive");
    if (parallel(u, v)) throw Error(ErrorKind::DegenerateStrip, v.to_string() + " lies on the line through " + u.to_string());

    detail::RationalMatrix span_rows(2, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
      span_rows[0][i] = Rational(u[i]);
      span_rows[1][i] = Rational(v[i]);
    }
    detail::IntegerMatrix complement;
    for (const auto& row : detail::nullspace(span_rows, n)) complement.push_back(detail::primitive_integer(row));
    const auto basis = detail::integer_kernel_basis(complement, n);
    basis_[0] = LatticeVector(basis.at(0));
    basis_[1] = LatticeVector(basis.at(1));

    const auto [p, q] = coordinates(u);
    u_p_ = p;
    u_q_ = q;
  }

  const LatticeVector& basis(std::size_t i) const { return basis_.at(i); }

  /// Integer coordinates (a, b) of x = a*w1 + b*w2; x must lie in the lattice.
  std::pair<Integer, Integer> coordinates(const LatticeVector& x) const {
    const std::size_t n = x.dim();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Integer det = basis_[0][i] * basis_[1][j] - basis_[0][j] * basis_[1][i];
        if (det == 0) continue;
        const Integer a_num = x[i] * basis_[1][j] - x[j] * basis_[1][i];
        const Integer b_num = basis_[0][i] * x[j] - basis_[0][j] * x[i];
        if (a_num % det == 0 && b_num % det == 0) {
          const Integer a = a_num / det, b = b_num / det;
          if (a * basis_[0] + b * basis_[1] == x) return {a, b};
        }
        throw Error(ErrorKind::PreconditionViolation, x.to_string() + " is not in the strip lattice");
      }
    }
    throw Error(ErrorKind::PreconditionViolation, "strip lattice basis is degenerate");
  }

  /// Image in Lambda / Z*u, identified with Z.
  Integer quotient_coordinate(const LatticeVector& x) const {
    const auto [a, b] = coordinates(x);
    return u_p_ * b - u_q_ * a;
  }

  /// An element with quotient coordinate 1.
  LatticeVector quotient_generator() const {
    // u is primitive in Lambda, so gcd(p, q) = 1 and p*s - q*r = 1 is solvable.
    const auto eg = detail::extended_gcd(u_p_, -u_q_);
    return eg.t * basis_[0] + eg.s * basis_[1];
  }

 private:
  std::array<LatticeVector, 2> basis_;
  Integer u_p_, u_q_;
};

/// True iff no lattice point lies strictly between R*u and v + R*u inside
/// their common plane, i.e. v generates the quotient of the saturated
/// lattice by Z*u.
inline bool strip_interior_lattice_free(const LatticeVector& u, const LatticeVector& v) {
  const StripLattice lattice(u, v);
  return abs(lattice.quotient_coordinate(v)) == 1;
}

enum class Verdict { NonemptyC1, EmptyC1 };

enum class Reason {
  KAtLeast3,
  Dependent,
  Delta1NotLine,
  Delta2NotInStrip,
  StripHasInteriorPoint,
  CountZero,
  Ok,
};

constexpr std::string_view to_string(Verdict v) { return v == Verdict::NonemptyC1 ? "NONEMPTY_C1" : "EMPTY_C1"; }

constexpr std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::KAtLeast3: return "K_AT_LEAST_3";
    case Reason::Dependent: return "DEPENDENT";
    case Reason::Delta1NotLine: return "DELTA1_NOT_LINE";
    case Reason::Delta2NotInStrip: return "DELTA2_NOT_IN_STRIP";
    case Reason::StripHasInteriorPoint: return "STRIP_HAS_INTERIOR_POINT";
    case Reason::CountZero: return "COUNT_ZERO";
    case Reason::Ok: return "OK";
  }
  return "UNKNOWN";
}

struct Classification {
  Verdict verdict = Verdict::EmptyC1;
  Reason reason = Reason::Ok;
  std::optional<LatticeVector> u;           // direction of L1, once Delta_1 passed
  std::optional<LatticeVector> v;           // base point of L2, once Delta_2 passed
  std::optional<SupportSet> l2_points;      // Delta_2 cap L2 cap Z^n
  std::optional<std::size_t> predicted_count;
  std::optional<std::vector<std::size_t>> dependent_witness;
};

/// |l2_points| - 1.
inline std::size_t predicted_count(const SupportSet& l2_points) {
  if (!line_containment(l2_points)) throw Error(ErrorKind::NotCollinear, "points on L2 are not collinear");
  return l2_points.size() - 1;
}

inline Classification classify(const PolytopeCollection& c) {
  if (c.k() < 2 || c.k() > c.n()) {
    throw Error(ErrorKind::MalformedCollection, "classification needs 2 <= k <= n, got k = " + std::to_string(c.k()) +
                                                    ", n = " + std::to_string(c.n()));
  }
  Classification out;
  if (c.k() >= 3) {
    out.reason = Reason::KAtLeast3;
    return out;
  }
  if (auto ind = is_independent(c); !ind.independent) {
    out.reason = Reason::Dependent;
    out.dependent_witness = std::move(ind.witness);
    return out;
  }

  const SupportSet& delta1 = c[0].lattice_points();
  const auto line1 = line_containment(delta1);
  const LatticeVector origin = LatticeVector::zero(c.n());
  if (!line1 || !delta1.contains(origin) ||
      !std::all_of(delta1.begin(), delta1.end(), [&](const LatticeVector& p) { return parallel(p, line1->direction); })) {
    out.reason = Reason::Delta1NotLine;
    return out;
  }
  const LatticeVector u = line1->direction;
  out.u = u;

  std::vector<LatticeVector> off_line;
  for (const auto& p : c[1].lattice_points()) {
    if (!parallel(p, u)) off_line.push_back(p);
  }
  // Independence guarantees off_line is nonempty.
  const auto lowest = std::min_element(off_line.begin(), off_line.end(), [&](const LatticeVector& a, const LatticeVector& b) {
    return a.dot(u) < b.dot(u);
  });
  const LatticeVector v = *lowest;
  for (const auto& p : off_line) {
    if (!parallel(p - v, u)) {
      out.reason = Reason::Delta2NotInStrip;
      return out;
    }
  }
  out.v = v;

  if (!strip_interior_lattice_free(u, v)) {
    out.reason = Reason::StripHasInteriorPoint;
    return out;
  }

  out.l2_points = SupportSet(c.n(), std::move(off_line));
  out.predicted_count = predicted_count(*out.l2_points);
  if (*out.predicted_count == 0) {
    out.reason = Reason::CountZero;
    return out;
  }
  out.verdict = Verdict::NonemptyC1;
  out.reason = Reason::Ok;
  return out;
}

}  // namespace codim1
