#pragma once

// Sparse multivariate polynomials over C, keyed by exponent vector.
//
// Two coefficient types are supported: std::complex<double> for numerics and
// GaussianRational for exact identities. Terms are kept in lexicographic
// exponent order so that every traversal (printing, evaluation) is
// deterministic.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "codim1/lattice.hpp"

namespace codim1 {

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long long r, long long i = 0) : re(r), im(i) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }

  std::complex<double> to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

template <class Coeff>
struct coefficient_traits;

template <>
struct coefficient_traits<std::complex<double>> {
  static constexpr bool exact = false;
  // Terms below this fraction of the largest magnitude are cancellation noise.
  static constexpr double cleanup_ratio = 1e-14;
  static double magnitude(const std::complex<double>& c) { return std::abs(c); }
  static bool is_zero(const std::complex<double>& c) { return c == 0.0; }
};

template <>
struct coefficient_traits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& c) { return c.re == 0 && c.im == 0; }
};

template <class Coeff>
class SparsePolynomial {
 public:
  using coefficient_type = Coeff;
  using Terms = std::map<LatticeVector, Coeff>;

  explicit SparsePolynomial(std::size_t n) : n_(n) {}

  /// Repeated exponents are summed; zero coefficients are dropped.
  SparsePolynomial(std::size_t n, const std::vector<std::pair<LatticeVector, Coeff>>& terms) : n_(n) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  void add_term(const LatticeVector& exponent, const Coeff& c) {
    if (exponent.dim() != n_) {
      throw Error(ErrorKind::DimensionMismatch, "exponent " + exponent.to_string() + " in a polynomial on " +
                                                    std::to_string(n_) + " variables");
    }
    if (!exponent.is_nonnegative()) {
      throw Error(ErrorKind::InvalidSupport, "exponent " + exponent.to_string() + " has a negative entry");
    }
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) it->second += c;
    if (coefficient_traits<Coeff>::is_zero(it->second)) terms_.erase(it);
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Coeff coefficient(const LatticeVector& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  SupportSet support() const {
    if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "the zero polynomial has empty support");
    std::vector<LatticeVector> pts;
    pts.reserve(terms_.size());
    for (const auto& [e, c] : terms_) pts.push_back(e);
    return SupportSet(n_, std::move(pts));
  }

  /// Drops float terms that are negligible relative to the largest one.
  void cleanup() {
    if constexpr (!coefficient_traits<Coeff>::exact) {
      double scale = 0.0;
      for (const auto& [e, c] : terms_) scale = std::max(scale, coefficient_traits<Coeff>::magnitude(c));
      const double cutoff = coefficient_traits<Coeff>::cleanup_ratio * scale;
      std::erase_if(terms_, [&](const auto& kv) { return coefficient_traits<Coeff>::magnitude(kv.second) < cutoff; });
    }
  }

 private:
  std::size_t n_;
  Terms terms_;
};

/// Components f_1, ..., f_k of a map (C*)^n -> C^k.
template <class Coeff>
class PolynomialMap {
 public:
  PolynomialMap(std::size_t n, std::vector<SparsePolynomial<Coeff>> components)
      : n_(n), components_(std::move(components)) {
    if (components_.empty()) throw Error(ErrorKind::PreconditionViolation, "a polynomial map needs k >= 1 components");
    for (const auto& f : components_) {
      if (f.ambient_dim() != n_) throw Error(ErrorKind::DimensionMismatch, "component in the wrong number of variables");
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return components_.size(); }
  const SparsePolynomial<Coeff>& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<SparsePolynomial<Coeff>>& components() const noexcept { return components_; }

 private:
  std::size_t n_;
  std::vector<SparsePolynomial<Coeff>> components_;
};

/// h * g; each output coefficient is the convolution sum over exponent pairs.
template <class Coeff>
SparsePolynomial<Coeff> expand_product(const SparsePolynomial<Coeff>& h, const SparsePolynomial<Coeff>& g) {
  if (h.ambient_dim() != g.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "product of polynomials in " + std::to_string(h.ambient_dim()) + " and " +
                                                  std::to_string(g.ambient_dim()) + " variables");
  }
  SparsePolynomial<Coeff> out(h.ambient_dim());
  for (const auto& [eh, ch] : h.terms()) {
    for (const auto& [eg, cg] : g.terms()) out.add_term(eh + eg, ch * cg);
  }
  out.cleanup();
  return out;
}

template <class Coeff>
LatticePolytope newton_polytope(const SparsePolynomial<Coeff>& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "the zero polynomial has no Newton polytope");
  return LatticePolytope(p.support());
}

namespace detail {

template <class Coeff>
Coeff power(Coeff base, const Integer& exponent) {
  Coeff result(1);
  auto e = exponent.convert_to<unsigned long long>();
  while (e > 0) {
    if (e & 1ULL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace detail

/// Value at a point of the torus. Terms are summed in lexicographic exponent order.
template <class Coeff>
Coeff evaluate(const SparsePolynomial<Coeff>& p, std::span<const Coeff> x) {
  if (x.size() != p.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "evaluation point has " + std::to_string(x.size()) + " coordinates, expected " +
                                                  std::to_string(p.ambient_dim()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (coefficient_traits<Coeff>::is_zero(x[i])) {
      throw Error(ErrorKind::ZeroCoordinate, "coordinate " + std::to_string(i) + " is zero");
    }
  }
  Coeff sum{};
  for (const auto& [e, c] : p.terms()) {
    Coeff term = c;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (e[i] != 0) term *= detail::power(x[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

template <class Coeff>
Coeff evaluate(const SparsePolynomial<Coeff>& p, const std::vector<Coeff>& x) {
  return evaluate(p, std::span<const Coeff>(x));
}

}  // namespace codim1
