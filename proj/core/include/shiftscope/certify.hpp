#pragma once

// Constructive precompactness certificates for the orbit sets
// {p(W) e_k : ||p(W)|| <= 1}, plus empirical probes: greedy epsilon-nets over
// orbit samples and the separated-orbit witness against strong compactness of
// the inverse.
//
// A certificate packages the data extracted from the local spectral argument:
// with d the full-spectrum radius, Cauchy's integral formula over |lambda| = d
// gives |a_n| <= ||p(W)|| / d^n for every polynomial, and once
// ||W^n e_k|| <= c^n holds from n0 on (c < d), the mass of p(W) e_k beyond
// coordinate k + n1 is at most sum_{n > n1} (c/d)^n < epsilon. The subspace
// F = span{e_k, W e_k, ..., W^{n1} e_k} = coordinates {k, ..., k+n1} then
// epsilon-approximates every normalized orbit vector.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftscope/lattice.hpp"
#include "shiftscope/spectral.hpp"

namespace shiftscope {

// Policy constants, echoed into every report that uses them.
inline constexpr double kCauchySlack = 1e-9;
inline constexpr double kWitnessSeparation = 0.5;

struct CompactnessCertificate {
  index_t basis_index = 0;
  double d = 0.0;  // distance from 0 to the boundary of the full spectrum
  double c = 0.0;  // c in (r(e_k, W), d)
  index_t n0 = 0;  // ||W^n e_k|| <= c^n verified for n0 <= n <= horizon_checked
  index_t n1 = 0;  // geometric tail below epsilon from n1 + 1 on
  double epsilon = 0.0;
  index_t horizon_checked = 0;
  bool caveat = true;  // the tail bound beyond the horizon is unverifiable
  double tail_bound = 0.0;  // (c/d)^{n1+1} / (1 - c/d)
};

// d = r(W): the full spectrum of a shift is the closed disk of radius r(W),
// so the origin is interior whenever r(W) > 0. Throws DegenerateSpectrumError
// otherwise.
double full_spectrum_radius(const SpectralProfile& profile);

// pre: 0 < c < d, epsilon > 0, horizon >= 4. Throws HypothesisUnmetError when
// ||W^n e_k|| > c^n persists into the tail quarter of the horizon.
CompactnessCertificate build_certificate(const WeightSequence& w, index_t k, double c,
                                         double epsilon, index_t horizon, double d);

struct ValidationReport {
  index_t num_samples = 0;
  int max_degree = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double max_residual = 0.0;
  index_t worst_sample = 0;
  index_t zero_residual_samples = 0;  // samples of degree <= n1; residual is exactly 0
  bool used_truncated_norm = false;   // diagnostics mode only
};

// Draws seeded random polynomials, normalizes each by op_norm_upper_bound
// (so ||p(W)|| <= 1 is guaranteed), and checks the exact residual past
// coordinate k + n1 against cert.epsilon. Throws CertificateViolatedError on
// any violation. pre: max_degree > cert.n1.
ValidationReport validate_certificate(const WeightSequence& w,
                                      const CompactnessCertificate& cert, index_t num_samples,
                                      int max_degree, std::uint64_t seed);

// Diagnostics mode: normalizes by the compressed norm (a lower bound of the
// true norm), which may push samples past ||p(W)|| <= 1; residuals are
// reported, never asserted.
ValidationReport validate_certificate_diagnostic(const WeightSequence& w,
                                                 const CompactnessCertificate& cert,
                                                 index_t num_samples, int max_degree,
                                                 std::uint64_t seed, index_t trunc_half_width);

struct CauchyReport {
  double d = 0.0;
  double min_margin = 0.0;  // min over n of (d^{-n} + slack - |a_n|)
  int argmin_n = 0;
  index_t samples_checked = 0;
};

// Checks |a_n| <= d^{-n} + kCauchySlack for a single normalized polynomial.
// Throws BoundViolatedError on failure (a diagnostic that d overestimates the
// full-spectrum radius).
CauchyReport cauchy_coefficient_check(const WeightSequence& w, const ShiftPolynomial& p_normalized,
                                      double d);

// Runs the coefficient check over seeded normalized samples and aggregates.
CauchyReport cauchy_sampled_check(const WeightSequence& w, double d, index_t num_samples,
                                  int max_degree, std::uint64_t seed);

struct CoveringReport {
  double epsilon = 0.0;
  index_t num_points = 0;
  index_t net_size = 0;
  double max_residual = 0.0;  // max distance from a point to its nearest center
  std::uint64_t sample_seed = 0;
};

// Farthest-point greedy net: starts at the first point and keeps adding the
// point farthest from the current net until everything is within epsilon.
// Deterministic given the input order.
CoveringReport greedy_net(const std::vector<LatticeVector>& points, double epsilon,
                          std::uint64_t sample_seed = 0);

struct WitnessReport {
  bool witness_found = false;
  double min_pairwise_distance = 0.0;
  index_t horizon = 0;
  double lower_bound_m = 0.0;  // m(W) = inf |w_n|
  std::string reason;
};

// When m(W) >= 1 the monomials q_n(mu) = mu^n satisfy ||q_n(W^{-1})|| <= 1, so
// {W^{-n} e_0 : 1 <= n <= horizon} sits inside the unit-ball orbit of the
// algebra of W^{-1}. If those vectors stay pairwise separated by at least
// kWitnessSeparation, no finite (kWitnessSeparation/2)-net covers the orbit
// and the net size grows without bound in the horizon: a witness against
// strong compactness of W^{-1}. pre: w invertible.
WitnessReport orbit_witness_noncompact(const WeightSequence& w, index_t horizon);

}  // namespace shiftscope
