#pragma once

// Deterministic sampling streams. Every sample is drawn from its own
// (seed, stream-index) generator, so per-sample work is schedule-independent
// and reports are reproducible byte for byte. Gaussian variates go through an
// explicit Box-Muller transform rather than the implementation-defined
// std::normal_distribution.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "shiftscope/lattice.hpp"

namespace shiftscope {

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream)
      : gen_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const double u = uniform();
    const auto span = static_cast<double>(hi - lo + 1);
    auto v = lo + static_cast<std::int64_t>(u * span);
    return v > hi ? hi : v;
  }

  // Standard complex Gaussian: independent N(0,1) real and imaginary parts.
  std::complex<double> gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::mt19937_64 gen_;
};

enum class DegreeMode {
  uniform,  // degree drawn uniformly from [0, max_degree]
  fixed,    // all coefficients up to max_degree are drawn
};

inline ShiftPolynomial sample_polynomial(SampleStream& s, int max_degree, DegreeMode mode) {
  const int degree = mode == DegreeMode::fixed
                         ? max_degree
                         : static_cast<int>(s.uniform_int(0, max_degree));
  ShiftPolynomial p;
  p.forward.resize(static_cast<std::size_t>(degree) + 1);
  for (auto& c : p.forward) c = s.gaussian();
  return p;
}

// Backward-only polynomial q(W^{-1}) with q(0) = 0: coefficients b_1..b_deg.
inline ShiftPolynomial sample_backward_polynomial(SampleStream& s, int max_degree,
                                                  DegreeMode mode) {
  const int degree = mode == DegreeMode::fixed
                         ? max_degree
                         : static_cast<int>(s.uniform_int(1, max_degree));
  ShiftPolynomial p;
  p.backward.resize(static_cast<std::size_t>(degree));
  for (auto& c : p.backward) c = s.gaussian();
  return p;
}

}  // namespace shiftscope
