#include <cmath>
#include <vector>

#include "doctest.h"
#include "shiftscope/sampling.hpp"
#include "shiftscope/spectral.hpp"

using namespace shiftscope;

namespace {

const double kLn2 = std::log(2.0);
const double kSqrt2 = std::sqrt(2.0);

WeightSequence lacunary() { return WeightSequence(LacunaryBlocksRule{{2.0, 0.0}, {1.0, 0.0}}); }
WeightSequence two_sided() { return WeightSequence(TwoSidedStepRule{{2.0, 0.0}, {1.0, 0.0}}); }
WeightSequence periodic21() { return WeightSequence(PeriodicRule{{{2.0, 0.0}, {1.0, 0.0}}}); }

std::vector<WeightSequence> bundled_rules() {
  return {
      WeightSequence(ConstantRule{{1.0, 0.0}}),
      WeightSequence(ConstantRule{{2.0, 0.0}}),
      periodic21(),
      two_sided(),
      lacunary(),
      WeightSequence(TableRule{-3,
                               {{3.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}, {5.0, 0.0}, {0.25, 0.0},
                                {7.0, 0.0}},
                               {1.0, 0.0},
                               {2.0, 0.0}}),
  };
}

// Independent oracle: hi-weight count below n from the block structure alone.
index_t lacunary_hi_count(index_t n) {
  index_t count = 0;
  for (int m = 1; (index_t{1} << m) < n; ++m) {
    const index_t lo = index_t{1} << m;
    const index_t hi = lo + m;
    count += std::max<index_t>(0, std::min(hi, n - 1) - lo + 1);
  }
  return count;
}

}  // namespace

TEST_CASE("constant rule: every quantity is the magnitude") {
  WeightSequence one(ConstantRule{{1.0, 0.0}});
  for (Quantity q : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus, Quantity::r1_plus,
                     Quantity::r2_minus, Quantity::r2_plus, Quantity::r3_minus,
                     Quantity::r3_plus}) {
    const QuantityEstimate e = estimate_quantity(one, q, 64, 16);
    CHECK(e.estimate == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.sequence.size() == 64);
  }
}

TEST_CASE("lacunary r_plus attains the sup on a hi-block window") {
  const QuantityEstimate e = estimate_quantity(lacunary(), Quantity::r_plus, 16, 1 << 16);
  CHECK(std::abs(e.estimate - 2.0) < 1e-12);
  CHECK(e.bound_direction == BoundDirection::lower);

  // Direct window-search oracle at n = 16 over the same k range.
  WeightSequence w = lacunary();
  double best = -1e300;
  double run = 0.0;
  std::vector<double> logs(static_cast<std::size_t>((1 << 16) + 16));
  for (index_t j = 0; j < static_cast<index_t>(logs.size()); ++j) {
    logs[static_cast<std::size_t>(j)] = std::log(std::abs(w.eval(j)));
  }
  for (index_t j = 0; j < 16; ++j) run += logs[static_cast<std::size_t>(j)];
  best = run;
  for (index_t k = 1; k <= (1 << 16); ++k) {
    run += logs[static_cast<std::size_t>(k + 15)] - logs[static_cast<std::size_t>(k - 1)];
    best = std::max(best, run);
  }
  CHECK(std::exp(best / 16.0) == doctest::Approx(e.estimate).epsilon(1e-12));
}

TEST_CASE("lacunary r3_plus matches the block-count oracle") {
  const index_t horizon = 1 << 16;
  const QuantityEstimate e = estimate_quantity(lacunary(), Quantity::r3_plus, horizon, 1);
  const index_t hi_count = lacunary_hi_count(horizon);  // indices 0..horizon-1
  CHECK(hi_count == 135);
  const double oracle = std::exp(static_cast<double>(hi_count) * kLn2 / 65536.0);
  CHECK(e.estimate == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(e.estimate >= 1.0);
  CHECK(e.estimate <= 1.01);
}

TEST_CASE("two-sided step: anchored minus product is exactly 2") {
  const QuantityEstimate e = estimate_quantity(two_sided(), Quantity::r2_minus, 64, 8);
  CHECK(e.estimate == doctest::Approx(2.0).epsilon(1e-14));
  for (double v : e.sequence) CHECK(v == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("two-sided step profile fills both families exactly") {
  const SpectralProfile p = spectral_profile(two_sided(), {64, 64, 0});
  for (const QuantityEstimate* e : {&p.r_minus, &p.r1_minus, &p.r2_minus, &p.r3_minus}) {
    CHECK(e->estimate == doctest::Approx(2.0).epsilon(1e-14));
  }
  for (const QuantityEstimate* e : {&p.r_plus, &p.r1_plus, &p.r2_plus, &p.r3_plus}) {
    CHECK(e->estimate == 1.0);
  }
  CHECK(p.r == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.r1 == 1.0);
  CHECK(p.m_of_w == 1.0);
  CHECK(p.invertible);
}

TEST_CASE("periodic 2,1 profile converges to sqrt(2)") {
  const SpectralProfile p = spectral_profile(periodic21(), {1 << 12, 1 << 12, 0});
  for (Quantity q : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus, Quantity::r1_plus,
                     Quantity::r2_minus, Quantity::r2_plus, Quantity::r3_minus,
                     Quantity::r3_plus}) {
    CHECK(p.quantity(q).estimate == doctest::Approx(kSqrt2).epsilon(1e-12));
  }
  CHECK(p.r == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK(p.r1 == doctest::Approx(kSqrt2).epsilon(1e-12));

  // Direct product oracle for the anchored value at the horizon.
  WeightSequence w = periodic21();
  double s = 0.0;
  for (index_t j = 0; j < (1 << 12); ++j) s += std::log(std::abs(w.eval(j)));
  CHECK(std::exp(s / static_cast<double>(1 << 12)) ==
        doctest::Approx(p.r3_plus.estimate).epsilon(1e-13));
}

TEST_CASE("per-n chain holds for every bundled rule") {
  for (const WeightSequence& w : bundled_rules()) {
    const SpectralProfile p = spectral_profile(w, {256, 64, 0});
    for (std::size_t i = 0; i < 256; ++i) {
      CHECK(p.r1_plus.sequence[i] <= p.r2_plus.sequence[i] + 1e-10);
      CHECK(p.r2_plus.sequence[i] <= p.r_plus.sequence[i] + 1e-10);
      CHECK(p.r1_minus.sequence[i] <= p.r2_minus.sequence[i] + 1e-10);
      CHECK(p.r2_minus.sequence[i] <= p.r_minus.sequence[i] + 1e-10);
    }
    CHECK(p.r == std::max(p.r_minus.estimate, p.r_plus.estimate));
    CHECK(p.r1 == std::min(p.r1_minus.estimate, p.r1_plus.estimate));
    for (Quantity q : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus,
                       Quantity::r1_plus, Quantity::r2_minus, Quantity::r2_plus,
                       Quantity::r3_minus, Quantity::r3_plus}) {
      const QuantityEstimate& e = p.quantity(q);
      CHECK(e.estimate >= w.magnitude_inf() - 1e-10);
      CHECK(e.estimate <= w.magnitude_sup() + 1e-10);
      CHECK(e.tail_inf <= e.tail_sup + 1e-12);
    }
  }
}

TEST_CASE("scaling covariance") {
  const std::vector<cplx> entries{{3.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}, {5.0, 0.0}, {0.25, 0.0}};
  WeightSequence base(TableRule{-2, entries, {1.0, 0.0}, {2.0, 0.0}});
  const double s = 1.75;
  std::vector<cplx> scaled_entries;
  for (const cplx& e : entries) scaled_entries.push_back(s * e);
  WeightSequence scaled(TableRule{-2, scaled_entries, cplx{s, 0.0}, cplx{2.0 * s, 0.0}});
  for (Quantity q : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus, Quantity::r1_plus,
                     Quantity::r2_minus, Quantity::r2_plus, Quantity::r3_minus,
                     Quantity::r3_plus}) {
    const QuantityEstimate a = estimate_quantity(base, q, 128, 32);
    const QuantityEstimate b = estimate_quantity(scaled, q, 128, 32);
    for (std::size_t i = 0; i < a.sequence.size(); ++i) {
      CHECK(b.sequence[i] == doctest::Approx(s * a.sequence[i]).epsilon(1e-10));
    }
    CHECK(b.estimate == doctest::Approx(s * a.estimate).epsilon(1e-10));
  }
}

TEST_CASE("local radius") {
  WeightSequence one(ConstantRule{{1.0, 0.0}});
  CHECK(local_radius(one, 0, 64).estimate == 1.0);

  const LocalRadiusEstimate lac0 = local_radius(lacunary(), 0, 1 << 16);
  CHECK(lac0.estimate >= 1.0);
  CHECK(lac0.estimate <= 1.01);

  // Sequence entries are the window geometric means starting at k.
  WeightSequence w = lacunary();
  const LocalRadiusEstimate lac3 = local_radius(w, 3, 64);
  for (index_t n = 1; n <= 64; ++n) {
    double s = 0.0;
    for (index_t j = 3; j < 3 + n; ++j) s += std::log(std::abs(w.eval(j)));
    CHECK(lac3.sequence[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(std::exp(s / static_cast<double>(n))).epsilon(1e-12));
  }
}

TEST_CASE("local radius agrees across basis indices at a long horizon") {
  for (const WeightSequence& w : bundled_rules()) {
    const double at0 = local_radius(w, 0, 1 << 12).estimate;
    for (index_t k : {-5, -2, 1, 3, 5}) {
      const double atk = local_radius(w, k, 1 << 12).estimate;
      CHECK(std::abs(atk - at0) < 0.05);
    }
  }
}

TEST_CASE("local radius identities hold exactly in regrouped prefix sums") {
  WeightSequence two(ConstantRule{{2.0, 0.0}});
  CHECK(check_local_radius_identities(two, 5, 64).max_abs_deviation < 1e-10);
  CHECK(check_local_radius_identities(lacunary(), -3, 512).max_abs_deviation < 1e-9);
  CHECK(check_local_radius_identities(periodic21(), 1, 512).max_abs_deviation < 1e-9);
  CHECK_THROWS_AS(check_local_radius_identities(two, 0, 64), ContractError);
  CHECK_THROWS_AS(check_local_radius_identities(two, 5, 5), ContractError);
}

TEST_CASE("estimator preconditions") {
  WeightSequence one(ConstantRule{{1.0, 0.0}});
  CHECK_THROWS_AS(estimate_quantity(one, Quantity::r_plus, 1, 4), ContractError);
  CHECK_THROWS_AS(estimate_quantity(one, Quantity::r_plus, 8, 0), ContractError);
  CHECK_THROWS_AS(spectral_profile(one, {1, 4, 0}), ContractError);
}
