#pragma once

// Finite-horizon estimators for the spectral quantities of a bilateral
// weighted shift. All products run in the log domain over cached prefix sums.
//
// Per-n values, n = 1..horizon_n (window geometric means, radius units):
//
//   r+  : sup_{0<=k<=K} |w_k ... w_{n+k-1}|^{1/n}        r1+ : inf over the same k
//   r-  : sup_{1<=k<=K} |w_{-n-k+1} ... w_{-k}|^{1/n}    r1- : inf over the same k
//   r2+/r3+ : |w_0 ... w_{n-1}|^{1/n}     (anchored at 0, liminf/limsup target)
//   r2-/r3- : |w_{-n} ... w_{-1}|^{1/n}   (anchored at -1)
//
// The minus-side window is aligned as the n consecutive indices
// {-n-k+1, ..., -k}, so k = 1 reproduces the anchored window {-n, ..., -1}
// and the per-n chain inf_k <= anchored <= sup_k holds structurally.
//
// Limits are never claimed: the point estimate is the horizon-end value of
// the per-n sequence, the running inf/sup over the last ceil(horizon_n/4)
// entries ride along as tail diagnostics, and a bound-direction flag records
// the one-sided error introduced by capping k at horizon_k.

#include <cstdint>
#include <string>
#include <vector>

#include "shiftscope/weights.hpp"

namespace shiftscope {

enum class Quantity { r_minus, r_plus, r1_minus, r1_plus, r2_minus, r2_plus, r3_minus, r3_plus };

enum class BoundDirection { lower, upper, two_sided, heuristic };

const char* to_string(Quantity q);
const char* to_string(BoundDirection b);

struct QuantityEstimate {
  Quantity name = Quantity::r_plus;
  index_t horizon_n = 0;
  index_t horizon_k = 0;
  std::vector<double> sequence;  // a_n for n = 1..horizon_n
  double estimate = 0.0;         // sequence.back()
  double tail_inf = 0.0;         // running inf over the last ceil(horizon_n/4) entries
  double tail_sup = 0.0;         // running sup over the same tail
  BoundDirection bound_direction = BoundDirection::heuristic;
};

// pre: horizon_n >= 2, horizon_k >= 1.
QuantityEstimate estimate_quantity(const WeightSequence& w, Quantity name, index_t horizon_n,
                                   index_t horizon_k);

struct ProfileOptions {
  index_t horizon_n = 4096;
  index_t horizon_k = 4096;
  // Horizon for the k-swept families r+-, r1+- (0 = same as horizon_n). The
  // sup over window positions is only attainable while windows of length n
  // fit inside the structures reachable below horizon_k, so these families
  // are often run at a much shorter n-horizon than the anchored ones.
  index_t windowed_horizon_n = 0;
};

struct SpectralProfile {
  QuantityEstimate r_minus, r_plus;
  QuantityEstimate r1_minus, r1_plus;
  QuantityEstimate r2_minus, r2_plus;
  QuantityEstimate r3_minus, r3_plus;
  double r = 0.0;       // max(r_minus.estimate, r_plus.estimate)
  double r1 = 0.0;      // min(r1_minus.estimate, r1_plus.estimate)
  double m_of_w = 0.0;  // lower bound of W; equals inf |w_n| for a shift
  bool invertible = false;
  ProfileOptions options;

  const QuantityEstimate& quantity(Quantity q) const;
};

// Aggregates the eight estimates and enforces the ordering-chain invariants
// (per-n for every common n; estimate-level when all horizons coincide).
// Throws ChainViolationError if an invariant fails beyond 1e-10.
SpectralProfile spectral_profile(const WeightSequence& w, const ProfileOptions& opts);

struct LocalRadiusEstimate {
  index_t basis_index = 0;
  index_t horizon_n = 0;
  std::vector<double> sequence;  // ||W^n e_k||^{1/n} for n = 1..horizon_n
  double estimate = 0.0;         // running sup over the last ceil(horizon_n/4) entries
};

// Local spectral radius at the basis vector e_k; pre: horizon_n >= 2.
LocalRadiusEstimate local_radius(const WeightSequence& w, index_t k, index_t horizon_n);

struct IdentityReport {
  index_t basis_index = 0;
  index_t horizon_n = 0;
  double max_abs_deviation = 0.0;
};

// Verifies, in the log domain, the regrouped prefix-sum identities
//   k > 0:          ln||W^n e_k|| = ln||W^{n+k} e_0|| - ln||W^k e_0||
//   k < 0, n > -k:  ln||W^n e_k|| = ln||W^{-k} e_k|| + ln||W^{n+k} e_0||
// pre: k != 0 and horizon_n > |k|.
IdentityReport check_local_radius_identities(const WeightSequence& w, index_t k,
                                             index_t horizon_n);

}  // namespace shiftscope
