#pragma once

#include <cmath>
#include <cstdint>

namespace spoamp {

// SplitMix64: 64-bit counter-based generator (Weyl sequence + finalizer).
// Chosen over std::mt19937 + std::*_distribution because the std
// distributions are implementation-defined; this generator plus the explicit
// transforms below produce the same stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double next_double_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (cosine branch; consumes two uniforms).
  double next_normal() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Exponential with rate lambda via inversion.
  double next_exponential(double lambda) {
    return -std::log(next_double_open()) / lambda;
  }

  /// Skew normal with shape alpha, location mu, scale sigma, built from two
  /// normals: delta = alpha/sqrt(1+alpha^2), Z = delta*|U0| + sqrt(1-delta^2)*U1.
  double next_skew_normal(double mu, double sigma, double alpha) {
    const double delta = alpha / std::sqrt(1.0 + alpha * alpha);
    const double u0 = next_normal();
    const double u1 = next_normal();
    const double z = delta * std::abs(u0) + std::sqrt(1.0 - delta * delta) * u1;
    return mu + sigma * z;
  }

 private:
  std::uint64_t state_;
};

}  // namespace spoamp
