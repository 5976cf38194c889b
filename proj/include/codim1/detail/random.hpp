#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace codim1::detail {

/// Derives the i-th independent stream seed from a master seed.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Area-uniform sample from the annulus lo <= |z| <= hi.
template <class Rng>
std::complex<double> sample_annulus(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> r2(lo * lo, hi * hi);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return std::polar(std::sqrt(r2(rng)), arg(rng));
}

/// Modulus uniform in [lo, hi], argument uniform.
template <class Rng>
std::complex<double> sample_torus_coordinate(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mod(lo, hi);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return std::polar(mod(rng), arg(rng));
}

}  // namespace codim1::detail
