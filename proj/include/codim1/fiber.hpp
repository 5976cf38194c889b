#pragma once

// Concrete computation of the codimension-one fiber points of a map
// f = (f1, f2) whose supports pass the classifier.
//
// Writing t = x^u, such a map has the shape
//     f1 = P01(t),    f2 = P02(t) + x^v * Pv2(t),
// and every root t0 != 0 of Pv2 gives the point (P01(t0), P02(t0)), whose
// fiber contains the whole hypersurface {x^u = t0}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "codim1/classifier.hpp"
#include "codim1/detail/random.hpp"
#include "codim1/poly.hpp"

namespace codim1 {

using Complex = std::complex<double>;

/// Dense univariate polynomial, ascending coefficients, trailing zeros trimmed.
template <class Coeff>
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  Coeff operator()(const Coeff& t) const {
    Coeff acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  void set(std::size_t power, const Coeff& c) {
    if (coeffs_.size() <= power) coeffs_.resize(power + 1, Coeff{});
    coeffs_[power] = c;
    trim();
  }

  UnivariatePoly derivative() const {
    std::vector<Coeff> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Coeff(static_cast<long long>(i)));
    return UnivariatePoly(std::move(d));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coefficient_traits<Coeff>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

/// The hypersurface {x^u = t0} of the torus.
struct BinomialFactor {
  LatticeVector u;
  Complex t0;

  BinomialFactor(LatticeVector dir, Complex t) : u(std::move(dir)), t0(t) {
    if (u.is_zero()) throw Error(ErrorKind::NoSolvableCoordinate, "binomial direction is zero");
    if (!is_primitive(u)) throw Error(ErrorKind::PreconditionViolation, "binomial direction " + u.to_string() + " is not primitive");
    if (t0 == 0.0) throw Error(ErrorKind::PreconditionViolation, "t0 must be nonzero");
  }
};

template <class Coeff>
struct Decomposition {
  LatticeVector u;
  LatticeVector v;
  UnivariatePoly<Coeff> p01;
  UnivariatePoly<Coeff> p02;
  UnivariatePoly<Coeff> pv2;

  /// f1 = p01(x^u), f2 = p02(x^u) + x^v * pv2(x^u).
  PolynomialMap<Coeff> reconstruct() const {
    const std::size_t n = u.dim();
    SparsePolynomial<Coeff> f1(n), f2(n);
    for (std::size_t m = 0; m < p01.coeffs().size(); ++m) f1.add_term(Integer(m) * u, p01.coeffs()[m]);
    for (std::size_t m = 0; m < p02.coeffs().size(); ++m) f2.add_term(Integer(m) * u, p02.coeffs()[m]);
    for (std::size_t m = 0; m < pv2.coeffs().size(); ++m) f2.add_term(v + Integer(m) * u, pv2.coeffs()[m]);
    return PolynomialMap<Coeff>(n, {std::move(f1), std::move(f2)});
  }
};

namespace detail {

// m >= 0 with e == m*u, if any.
inline std::optional<std::size_t> ray_index(const LatticeVector& e, const LatticeVector& u) {
  if (!parallel(e, u)) return std::nullopt;
  const Integer uu = u.dot(u);
  const Integer eu = e.dot(u);
  if (eu < 0 || eu % uu != 0) return std::nullopt;
  const Integer m = eu / uu;
  if (!(m * u == e)) return std::nullopt;
  return m.convert_to<std::size_t>();
}

}  // namespace detail

template <class Coeff>
Decomposition<Coeff> decompose(const PolynomialMap<Coeff>& f, const LatticeVector& u, const LatticeVector& v) {
  if (f.k() != 2) throw Error(ErrorKind::PreconditionViolation, "decomposition needs k = 2, got " + std::to_string(f.k()));
  if (u.dim() != f.n() || v.dim() != f.n()) throw Error(ErrorKind::DimensionMismatch, "u, v must have length n");
  if (!is_primitive(u)) throw Error(ErrorKind::PreconditionViolation, "direction " + u.to_string() + " is not primitive");
  if (parallel(u, v)) throw Error(ErrorKind::DegenerateStrip, v.to_string() + " lies on the line through " + u.to_string());

  Decomposition<Coeff> d{u, v, {}, {}, {}};
  for (const auto& [e, c] : f[0].terms()) {
    const auto m = detail::ray_index(e, u);
    if (!m) throw Error(ErrorKind::UnalignedExponent, "f1 monomial " + e.to_string() + " is not a multiple of " + u.to_string());
    d.p01.set(*m, c);
  }
  for (const auto& [e, c] : f[1].terms()) {
    if (const auto m = detail::ray_index(e, u)) {
      d.p02.set(*m, c);
    } else if (const auto mv = detail::ray_index(e - v, u)) {
      d.pv2.set(*mv, c);
    } else {
      throw Error(ErrorKind::UnalignedExponent, "f2 monomial " + e.to_string() + " lies on neither N*" + u.to_string() +
                                                    " nor " + v.to_string() + " + N*" + u.to_string());
    }
  }
  return d;
}

struct Root {
  Complex value;
  std::size_t multiplicity = 1;
};

/// All complex roots, from the eigenvalues of the companion matrix with one
/// Newton step each. Roots closer than cluster_radius (relative to
/// max(1, |z|)) are merged and counted with multiplicity.
inline std::vector<Root> univariate_roots(const UnivariatePoly<Complex>& p, double cluster_radius = 1e-6) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  const auto& c = p.coeffs();
  std::vector<Root> out;

  std::size_t low = 0;
  while (c[low] == 0.0) ++low;
  if (low > 0) out.push_back({Complex(0.0), low});

  const std::size_t deg = c.size() - 1 - low;
  if (deg == 0) return out;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) companion(i, deg - 1) = -c[low + i] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);

  const UnivariatePoly<Complex> dp = p.derivative();
  std::vector<Complex> raw;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    Complex z = solver.eigenvalues()[i];
    const Complex slope = dp(z);
    if (slope != 0.0) {
      const Complex polished = z - p(z) / slope;
      if (std::abs(p(polished)) < std::abs(p(z))) z = polished;
    }
    raw.push_back(z);
  }

  std::vector<bool> used(raw.size(), false);
  std::vector<Root> clustered;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Complex sum = raw[i];
    std::size_t count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) <= cluster_radius * std::max(1.0, std::abs(raw[i]))) {
        used[j] = true;
        sum += raw[j];
        ++count;
      }
    }
    clustered.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(clustered.begin(), clustered.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  out.insert(out.end(), clustered.begin(), clustered.end());
  return out;
}

struct VerifyResult {
  bool pass = false;
  double max_residual = 0.0;
};

/// Samples points of {x^u = t0} and checks that f is constant equal to
/// kappa there, up to tol in the max norm.
inline VerifyResult verify_codim1(const PolynomialMap<Complex>& f, const std::vector<Complex>& kappa,
                                  const BinomialFactor& bin, std::size_t samples, double tol, std::uint64_t seed = 0) {
  if (samples == 0) throw Error(ErrorKind::PreconditionViolation, "samples must be at least 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::PreconditionViolation, "tol must be positive");
  if (kappa.size() != f.k()) throw Error(ErrorKind::DimensionMismatch, "kappa must have k entries");
  if (bin.u.dim() != f.n()) throw Error(ErrorKind::DimensionMismatch, "binomial direction must have length n");

  // Solve for the coordinate with the largest exponent; its root is best conditioned.
  std::size_t solved = 0;
  for (std::size_t i = 1; i < f.n(); ++i) {
    if (abs(bin.u[i]) > abs(bin.u[solved])) solved = i;
  }
  const double solved_exp = bin.u[solved].convert_to<double>();

  std::mt19937_64 rng(seed);
  VerifyResult out;
  std::vector<Complex> x(f.n());
  for (std::size_t s = 0; s < samples; ++s) {
    Complex rest(1.0);
    for (std::size_t i = 0; i < f.n(); ++i) {
      if (i == solved) continue;
      x[i] = detail::sample_torus_coordinate(rng, 0.5, 2.0);
      if (bin.u[i] > 0) rest *= detail::power(x[i], bin.u[i]);
      if (bin.u[i] < 0) rest /= detail::power(x[i], Integer(-bin.u[i]));
    }
    x[solved] = std::pow(bin.t0 / rest, 1.0 / solved_exp);
    for (std::size_t i = 0; i < f.k(); ++i) {
      out.max_residual = std::max(out.max_residual, std::abs(evaluate(f[i], x) - kappa[i]));
    }
  }
  out.pass = out.max_residual <= tol;
  return out;
}

struct C1Point {
  Complex kappa1;
  Complex kappa2;
  Complex t0;
  std::size_t multiplicity = 1;
  double residual = 0.0;
  bool verified = false;
};

struct C1Result {
  std::vector<C1Point> points;
  std::vector<std::string> warnings;
};

struct SolveOptions {
  std::size_t samples = 100;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  double dedup_tol = 1e-8;
};

/// The finite set C1(f) for a two-component map whose exponents lie on
/// N*u and v + N*u, at most deg(Pv2) points.
inline C1Result compute_C1(const PolynomialMap<Complex>& f, const LatticeVector& u, const LatticeVector& v,
                           const SolveOptions& opts = {}) {
  const auto d = decompose(f, u, v);
  C1Result out;
  if (d.pv2.is_zero()) {
    out.warnings.push_back("Pv2 is identically zero; every fiber over the image of f1 is degenerate");
    return out;
  }
  for (const Root& r : univariate_roots(d.pv2)) {
    if (std::abs(r.value) < 1e-12) {
      out.warnings.push_back("dropped root t = 0 of Pv2 (not in the torus)");
      continue;
    }
    const Complex k1 = d.p01(r.value);
    const Complex k2 = d.p02(r.value);
    auto same = std::find_if(out.points.begin(), out.points.end(), [&](const C1Point& p) {
      const double scale = std::max({1.0, std::abs(p.kappa1), std::abs(p.kappa2), std::abs(k1), std::abs(k2)});
      return std::max(std::abs(p.kappa1 - k1), std::abs(p.kappa2 - k2)) / scale < opts.dedup_tol;
    });
    if (same != out.points.end()) {
      same->multiplicity += r.multiplicity;
      continue;
    }
    out.points.push_back({k1, k2, r.value, r.multiplicity, 0.0, false});
  }
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    auto& p = out.points[i];
    const auto check = verify_codim1(f, {p.kappa1, p.kappa2}, BinomialFactor(u, p.t0), opts.samples, opts.tol,
                                     detail::split_seed(opts.seed, i));
    p.residual = check.max_residual;
    p.verified = check.pass;
  }
  return out;
}

/// Generic coefficients for a collection with a nonempty verdict: one
/// annulus-uniform coefficient per lattice point of each polytope, redrawn
/// until Pv2 has full degree, no root at 0, and simple roots.
inline PolynomialMap<Complex> sample_generic(const PolytopeCollection& c, std::uint64_t seed, std::size_t max_retries = 100) {
  const Classification cls = classify(c);
  if (cls.verdict != Verdict::NonemptyC1) {
    throw Error(ErrorKind::PreconditionViolation,
                "sample_generic needs a NONEMPTY_C1 collection, got " + std::string(to_string(cls.reason)));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<SparsePolynomial<Complex>> comps;
    for (const auto& delta : c.deltas()) {
      SparsePolynomial<Complex> f(c.n());
      for (const auto& p : delta.lattice_points()) f.add_term(p, detail::sample_annulus(rng, 0.5, 2.0));
      comps.push_back(std::move(f));
    }
    PolynomialMap<Complex> map(c.n(), std::move(comps));
    const auto d = decompose(map, *cls.u, *cls.v);
    if (d.pv2.degree() != static_cast<long>(*cls.predicted_count) || d.pv2.coeffs().front() == 0.0) continue;
    const auto roots = univariate_roots(d.pv2);
    bool simple = roots.size() == static_cast<std::size_t>(d.pv2.degree());
    for (std::size_t i = 0; simple && i < roots.size(); ++i) {
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (std::abs(roots[i].value - roots[j].value) <= 1e-6) simple = false;
      }
    }
    if (simple) return map;
  }
  throw Error(ErrorKind::RetriesExhausted, "no generic coefficients after " + std::to_string(max_retries) + " draws");
}

}  // namespace codim1
