#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "shiftscope/sampling.hpp"
#include "shiftscope/weights.hpp"

using namespace shiftscope;

namespace {

const double kLn2 = std::log(2.0);

std::vector<WeightSequence> bundled_rules() {
  return {
      WeightSequence(ConstantRule{cplx{1.0, 0.0}}),
      WeightSequence(ConstantRule{cplx{2.0, 0.0}}),
      WeightSequence(PeriodicRule{{cplx{2.0, 0.0}, cplx{1.0, 0.0}}}),
      WeightSequence(TwoSidedStepRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}}),
      WeightSequence(LacunaryBlocksRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}}),
      WeightSequence(TableRule{-3,
                               {cplx{3.0, 0.0}, cplx{0.5, 0.0}, cplx{0.0, 2.0}, cplx{5.0, 0.0},
                                cplx{0.25, 0.0}, cplx{-7.0, 0.0}},
                               cplx{1.0, 0.0},
                               cplx{2.0, 0.0}}),
  };
}

}  // namespace

TEST_CASE("eval follows each rule") {
  WeightSequence one(ConstantRule{cplx{1.0, 0.0}});
  CHECK(one.eval(-7) == cplx{1.0, 0.0});

  WeightSequence lac(LacunaryBlocksRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}});
  CHECK(lac.eval(4) == cplx{2.0, 0.0});   // 2^2 <= 4 <= 2^2 + 2
  CHECK(lac.eval(7) == cplx{1.0, 0.0});   // above 2^2 + 2, below 2^3
  CHECK(lac.eval(2) == cplx{2.0, 0.0});   // m = 1 block start
  CHECK(lac.eval(3) == cplx{2.0, 0.0});   // m = 1 block end: 2^1 + 1
  CHECK(lac.eval(0) == cplx{1.0, 0.0});
  CHECK(lac.eval(1) == cplx{1.0, 0.0});
  CHECK(lac.eval(-5) == cplx{1.0, 0.0});
  CHECK(lac.eval(32768) == cplx{2.0, 0.0});  // m = 15 block
  CHECK(lac.eval(32783) == cplx{2.0, 0.0});  // 2^15 + 15
  CHECK(lac.eval(32784) == cplx{1.0, 0.0});

  WeightSequence per(PeriodicRule{{cplx{2.0, 0.0}, cplx{1.0, 0.0}}});
  CHECK(per.eval(0) == cplx{2.0, 0.0});
  CHECK(per.eval(-1) == cplx{1.0, 0.0});
  CHECK(per.eval(-2) == cplx{2.0, 0.0});

  WeightSequence tab(TableRule{2, {cplx{3.0, 0.0}}, cplx{4.0, 0.0}, cplx{5.0, 0.0}});
  CHECK(tab.eval(1) == cplx{4.0, 0.0});
  CHECK(tab.eval(2) == cplx{3.0, 0.0});
  CHECK(tab.eval(3) == cplx{5.0, 0.0});
}

TEST_CASE("zero scalars are rejected") {
  CHECK_THROWS_AS(WeightSequence(ConstantRule{cplx{0.0, 0.0}}), ContractError);
  CHECK_THROWS_AS(WeightSequence(PeriodicRule{{cplx{1.0, 0.0}, cplx{0.0, 0.0}}}), ContractError);
  CHECK_THROWS_AS(WeightSequence(PeriodicRule{{}}), ContractError);
  CHECK_THROWS_AS(
      WeightSequence(TableRule{0, {cplx{0.0, 0.0}}, cplx{1.0, 0.0}, cplx{1.0, 0.0}}),
      ContractError);
}

TEST_CASE("log magnitude prefix") {
  WeightSequence two(ConstantRule{cplx{2.0, 0.0}});
  CHECK(log_magnitude_prefix(two, 0, 3) == doctest::Approx(3.0 * kLn2).epsilon(1e-12));
  CHECK(log_magnitude_prefix(two, 5, 5) == 0.0);

  WeightSequence step(TwoSidedStepRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}});
  // |w_{-2} w_{-1} w_0| = 2 * 2 * 1
  CHECK(log_magnitude_prefix(step, -2, 1) == doctest::Approx(2.0 * kLn2).epsilon(1e-12));

  CHECK_THROWS_AS(log_magnitude_prefix(two, 3, 1), ContractError);
}

TEST_CASE("prefix sums split consistently") {
  for (const WeightSequence& w : bundled_rules()) {
    const LogPrefix pref(w, -300, 300);
    SampleStream s(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
      index_t a = s.uniform_int(-300, 300);
      index_t b = s.uniform_int(-300, 300);
      index_t c = s.uniform_int(-300, 300);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      CHECK(std::abs(pref.sum(a, c) - (pref.sum(a, b) + pref.sum(b, c))) < 1e-10);
      CHECK(std::abs(pref.sum(a, b) - log_magnitude_prefix(w, a, b)) < 1e-10);
    }
  }
}

TEST_CASE("magnitude bounds hold on a wide window") {
  for (const WeightSequence& w : bundled_rules()) {
    double seen_sup = 0.0;
    double seen_inf = std::numeric_limits<double>::infinity();
    for (index_t n = -(1 << 16); n <= (1 << 16); ++n) {
      const double m = std::abs(w.eval(n));
      REQUIRE(m != 0.0);
      seen_sup = std::max(seen_sup, m);
      seen_inf = std::min(seen_inf, m);
    }
    CHECK(seen_sup <= w.magnitude_sup() + 1e-12);
    CHECK(seen_inf >= w.magnitude_inf() - 1e-12);
    // The rule-level bounds are attained for every bundled rule.
    CHECK(seen_sup == doctest::Approx(w.magnitude_sup()).epsilon(1e-12));
    CHECK(seen_inf == doctest::Approx(w.magnitude_inf()).epsilon(1e-12));
  }
}

TEST_CASE("inverse conjugate: closed forms") {
  WeightSequence two(ConstantRule{cplx{2.0, 0.0}});
  const WeightSequence inv = inverse_conjugate(two);
  CHECK(std::get<ConstantRule>(inv.rule()).value == cplx{0.5, 0.0});

  WeightSequence step(TwoSidedStepRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}});
  const WeightSequence vstep = inverse_conjugate(step);
  const auto& r = std::get<TwoSidedStepRule>(vstep.rule());
  CHECK(r.negative_value == cplx{1.0, 0.0});
  CHECK(r.nonnegative_value == cplx{0.5, 0.0});
  for (index_t n = -8; n <= 8; ++n) {
    CHECK(std::abs(vstep.eval(n) - 1.0 / step.eval(-(n + 1))) < 1e-15);
  }

  WeightSequence per(PeriodicRule{{cplx{2.0, 0.0}, cplx{4.0, 0.0}, cplx{8.0, 0.0}}});
  const WeightSequence vper = inverse_conjugate(per);
  CHECK(std::holds_alternative<PeriodicRule>(vper.rule()));
}

TEST_CASE("inverse conjugate: defining identity and involution") {
  for (const WeightSequence& w : bundled_rules()) {
    const WeightSequence v = inverse_conjugate(w, 256);
    for (index_t n = -200; n <= 200; ++n) {
      CHECK(std::abs(v.eval(n) * w.eval(-(n + 1)) - 1.0) < 1e-12);
    }
    // Applying the transform twice restores the sequence on the window where
    // the lacunary table is exact.
    const WeightSequence back = inverse_conjugate(v, 256);
    for (index_t n = -200; n <= 200; ++n) {
      CHECK(std::abs(back.eval(n) - w.eval(n)) < 1e-12);
    }
  }
}

TEST_CASE("window extremes are exact against a direct scan") {
  for (const WeightSequence& w : bundled_rules()) {
    for (index_t n : {1, 2, 3, 5, 8, 13}) {
      double scan_lo = std::numeric_limits<double>::infinity();
      double scan_hi = -std::numeric_limits<double>::infinity();
      for (index_t k = -4096; k <= 4096; ++k) {
        double s = 0.0;
        for (index_t j = k; j < k + n; ++j) s += std::log(std::abs(w.eval(j)));
        scan_lo = std::min(scan_lo, s);
        scan_hi = std::max(scan_hi, s);
      }
      // The scan can only miss extremes (lacunary blocks beyond the window),
      // never beat them.
      CHECK(scan_hi <= window_log_sup(w, n) + 1e-9);
      CHECK(scan_lo >= window_log_inf(w, n) - 1e-9);
      if (!std::holds_alternative<LacunaryBlocksRule>(w.rule())) {
        CHECK(scan_hi == doctest::Approx(window_log_sup(w, n)).epsilon(1e-9));
        CHECK(scan_lo == doctest::Approx(window_log_inf(w, n)).epsilon(1e-9));
      }
    }
  }
  // For the lacunary rule the sup is attained inside any block of at least
  // the window length: length-16 windows inside the m = 15 block.
  WeightSequence lac(LacunaryBlocksRule{cplx{2.0, 0.0}, cplx{1.0, 0.0}});
  CHECK(window_log_sup(lac, 16) == doctest::Approx(16.0 * kLn2).epsilon(1e-12));
  double direct = 0.0;
  for (index_t j = 32768; j < 32784; ++j) direct += std::log(std::abs(lac.eval(j)));
  CHECK(direct == doctest::Approx(window_log_sup(lac, 16)).epsilon(1e-12));
}

TEST_CASE("lacunary block membership and index counting") {
  int count_below_65536 = 0;
  for (index_t k = 0; k < 65536; ++k) {
    if (lacunary_block_member(k)) ++count_below_65536;
  }
  // sum_{m=1}^{15} (m + 1): block m = 16 starts exactly at 65536.
  int expected = 0;
  for (int m = 1; m <= 15; ++m) expected += m + 1;
  CHECK(expected == 135);
  CHECK(count_below_65536 == expected);
  CHECK(lacunary_block_member(65536));
}
