#pragma once

// Finitely describable bi-infinite weight sequences (w_n), n in Z, defining an
// injective bilateral weighted shift W e_n = w_n e_{n+1}. Every rule keeps all
// weights nonzero and carries exact sup/inf of |w_n|, so boundedness and
// invertibility are decided from the rule data, never sampled.

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "shiftscope/errors.hpp"

namespace shiftscope {

using cplx = std::complex<double>;
using index_t = std::int64_t;

// w_n = value for all n.
struct ConstantRule {
  cplx value;
};

// w_n = values[n mod len], with the nonnegative (mathematical) modulus.
struct PeriodicRule {
  std::vector<cplx> values;
};

// w_n = negative_value for n < 0, nonnegative_value for n >= 0.
struct TwoSidedStepRule {
  cplx negative_value;
  cplx nonnegative_value;
};

// w_k = hi whenever 2^m <= k <= 2^m + m for some integer m >= 1, else lo.
// All k < 2 (in particular every k < 0) take lo.
struct LacunaryBlocksRule {
  cplx hi;
  cplx lo;
};

// Explicit entries on [offset, offset+len); left_fill below, right_fill above.
struct TableRule {
  index_t offset = 0;
  std::vector<cplx> entries;
  cplx left_fill;
  cplx right_fill;
};

using WeightRule =
    std::variant<ConstantRule, PeriodicRule, TwoSidedStepRule, LacunaryBlocksRule, TableRule>;

// True iff k lies in a hi block of the lacunary pattern.
bool lacunary_block_member(index_t k);

class WeightSequence {
 public:
  explicit WeightSequence(WeightRule rule);

  cplx eval(index_t n) const;

  // Exact bounds computed from the rule data.
  double magnitude_sup() const { return magnitude_sup_; }
  double magnitude_inf() const { return magnitude_inf_; }
  bool invertible() const { return magnitude_inf_ > 0.0; }

  const WeightRule& rule() const { return rule_; }

 private:
  WeightRule rule_;
  double magnitude_sup_ = 0.0;
  double magnitude_inf_ = 0.0;
};

// Sum of ln|w_n| over n in [a, b); zero for a == b. Direct accumulation; use
// LogPrefix for bulk window queries.
double log_magnitude_prefix(const WeightSequence& w, index_t a, index_t b);

// Cached prefix sums of ln|w_n| over a fixed index window [lo, hi). Immutable
// after construction; safe for concurrent reads.
class LogPrefix {
 public:
  LogPrefix(const WeightSequence& w, index_t lo, index_t hi);

  // Sum of ln|w_n| over [a, b); requires lo <= a <= b <= hi.
  double sum(index_t a, index_t b) const;

  // Prefix value at position n in [lo, hi]: sum over [lo, n).
  double at(index_t n) const;

  index_t lo() const { return lo_; }
  index_t hi() const { return lo_ + static_cast<index_t>(acc_.size()) - 1; }

 private:
  index_t lo_;
  std::vector<double> acc_;  // acc_[i] = sum of ln|w_n| over [lo, lo+i)
};

// Exact sup / inf over all integer k of ln|w_k ... w_{k+n-1}|, n >= 0.
// Closed forms or finite scans exist for every rule, so ||W^n|| and the lower
// bound of W^n come out exact: ||W^n|| = exp(window_log_sup(n)),
// ||W^{-n}||^{-1} = exp(window_log_inf(n)) for invertible W.
double window_log_sup(const WeightSequence& w, index_t n);
double window_log_inf(const WeightSequence& w, index_t n);

// Weight sequence of V = U* W^{-1} U where U e_n = e_{-n}: v_n = 1/w_{-(n+1)}.
// Rule-typed where a closed form exists; LacunaryBlocks becomes a Table over
// [-table_horizon, 0) (entries exact there, left fill approximates the far
// tail; the nonnegative side is exactly 1/lo).
WeightSequence inverse_conjugate(const WeightSequence& w, index_t table_horizon = 65536);

}  // namespace shiftscope
