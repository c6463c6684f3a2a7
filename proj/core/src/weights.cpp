#include "shiftscope/weights.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace shiftscope {

namespace {

void require_nonzero(const cplx& z, const char* what) {
  if (z == cplx{0.0, 0.0}) {
    throw ContractError(std::string("weight rule stores a zero scalar: ") + what);
  }
}

void validate(const WeightRule& rule) {
  std::visit(
      [](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          require_nonzero(r.value, "Constant.value");
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          if (r.values.empty()) throw ContractError("Periodic rule needs a nonempty value list");
          for (const auto& v : r.values) require_nonzero(v, "Periodic.values");
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          require_nonzero(r.negative_value, "TwoSidedStep.negative_value");
          require_nonzero(r.nonnegative_value, "TwoSidedStep.nonnegative_value");
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          require_nonzero(r.hi, "LacunaryBlocks.hi");
          require_nonzero(r.lo, "LacunaryBlocks.lo");
        } else {
          if (r.entries.empty()) throw ContractError("Table rule needs a nonempty entry list");
          for (const auto& v : r.entries) require_nonzero(v, "Table.entries");
          require_nonzero(r.left_fill, "Table.left_fill");
          require_nonzero(r.right_fill, "Table.right_fill");
        }
      },
      rule);
}

std::pair<double, double> magnitude_bounds(const WeightRule& rule) {
  auto minmax_of = [](std::initializer_list<cplx> zs) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& z : zs) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
    return std::pair{lo, hi};
  };
  return std::visit(
      [&](const auto& r) -> std::pair<double, double> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return {std::abs(r.value), std::abs(r.value)};
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          double lo = std::numeric_limits<double>::infinity();
          double hi = 0.0;
          for (const auto& v : r.values) {
            lo = std::min(lo, std::abs(v));
            hi = std::max(hi, std::abs(v));
          }
          return {lo, hi};
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          return minmax_of({r.negative_value, r.nonnegative_value});
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          return minmax_of({r.hi, r.lo});
        } else {
          double lo = std::min(std::abs(r.left_fill), std::abs(r.right_fill));
          double hi = std::max(std::abs(r.left_fill), std::abs(r.right_fill));
          for (const auto& v : r.entries) {
            lo = std::min(lo, std::abs(v));
            hi = std::max(hi, std::abs(v));
          }
          return {lo, hi};
        }
      },
      rule);
}

index_t floor_mod(index_t n, index_t m) {
  index_t r = n % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool lacunary_block_member(index_t k) {
  if (k < 2) return false;
  const int m = std::bit_width(static_cast<std::uint64_t>(k)) - 1;  // 2^m <= k < 2^{m+1}
  return k <= (index_t{1} << m) + m;
}

WeightSequence::WeightSequence(WeightRule rule) : rule_(std::move(rule)) {
  validate(rule_);
  auto [lo, hi] = magnitude_bounds(rule_);
  magnitude_inf_ = lo;
  magnitude_sup_ = hi;
}

cplx WeightSequence::eval(index_t n) const {
  return std::visit(
      [n](const auto& r) -> cplx {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return r.value;
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return r.values[static_cast<std::size_t>(
              floor_mod(n, static_cast<index_t>(r.values.size())))];
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          return n < 0 ? r.negative_value : r.nonnegative_value;
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          return lacunary_block_member(n) ? r.hi : r.lo;
        } else {
          const index_t len = static_cast<index_t>(r.entries.size());
          if (n < r.offset) return r.left_fill;
          if (n >= r.offset + len) return r.right_fill;
          return r.entries[static_cast<std::size_t>(n - r.offset)];
        }
      },
      rule_);
}

double log_magnitude_prefix(const WeightSequence& w, index_t a, index_t b) {
  if (a > b) throw ContractError("log_magnitude_prefix requires a <= b");
  double s = 0.0;
  for (index_t n = a; n < b; ++n) s += std::log(std::abs(w.eval(n)));
  return s;
}

LogPrefix::LogPrefix(const WeightSequence& w, index_t lo, index_t hi) : lo_(lo) {
  if (lo > hi) throw ContractError("LogPrefix requires lo <= hi");
  acc_.resize(static_cast<std::size_t>(hi - lo) + 1);
  acc_[0] = 0.0;
  // Neumaier-compensated accumulation keeps each stored prefix within an ulp
  // of the true sum over horizons of 2^16 and more.
  double sum = 0.0;
  double comp = 0.0;
  for (index_t n = lo; n < hi; ++n) {
    const double term = std::log(std::abs(w.eval(n)));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    acc_[static_cast<std::size_t>(n - lo) + 1] = sum + comp;
  }
}

double LogPrefix::at(index_t n) const {
  if (n < lo_ || n > hi()) throw ContractError("LogPrefix query outside cached window");
  return acc_[static_cast<std::size_t>(n - lo_)];
}

double LogPrefix::sum(index_t a, index_t b) const {
  if (a > b) throw ContractError("LogPrefix::sum requires a <= b");
  return at(b) - at(a);
}

namespace {

// Exact window-product extremes for a periodic rule: scan one period of start
// positions with a two-period prefix table. Covers all k in Z.
std::pair<double, double> periodic_window_extremes(const PeriodicRule& r, index_t n) {
  const index_t period = static_cast<index_t>(r.values.size());
  std::vector<double> pref(static_cast<std::size_t>(2 * period) + 1, 0.0);
  for (index_t i = 0; i < 2 * period; ++i) {
    pref[static_cast<std::size_t>(i) + 1] =
        pref[static_cast<std::size_t>(i)] +
        std::log(std::abs(r.values[static_cast<std::size_t>(i % period)]));
  }
  const double full = pref[static_cast<std::size_t>(period)];
  const index_t q = n / period;
  const index_t rem = n % period;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (index_t k = 0; k < period; ++k) {
    const double part =
        pref[static_cast<std::size_t>(k + rem)] - pref[static_cast<std::size_t>(k)];
    const double total = static_cast<double>(q) * full + part;
    lo = std::min(lo, total);
    hi = std::max(hi, total);
  }
  return {lo, hi};
}

// Exact extremes for a table rule: pure-fill windows plus a finite scan of
// every start position whose window intersects the entry block.
std::pair<double, double> table_window_extremes(const WeightSequence& w, const TableRule& r,
                                                index_t n) {
  const index_t len = static_cast<index_t>(r.entries.size());
  double lo = std::min(static_cast<double>(n) * std::log(std::abs(r.left_fill)),
                       static_cast<double>(n) * std::log(std::abs(r.right_fill)));
  double hi = std::max(static_cast<double>(n) * std::log(std::abs(r.left_fill)),
                       static_cast<double>(n) * std::log(std::abs(r.right_fill)));
  const index_t k_first = r.offset - n + 1;
  const index_t k_last = r.offset + len - 1;
  LogPrefix pref(w, k_first, k_last + n);
  for (index_t k = k_first; k <= k_last; ++k) {
    const double s = pref.sum(k, k + n);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

std::pair<double, double> window_extremes(const WeightSequence& w, index_t n) {
  if (n < 0) throw ContractError("window length must be nonnegative");
  if (n == 0) return {0.0, 0.0};
  return std::visit(
      [&](const auto& r) -> std::pair<double, double> {
        using R = std::decay_t<decltype(r)>;
        const double dn = static_cast<double>(n);
        if constexpr (std::is_same_v<R, ConstantRule>) {
          const double v = dn * std::log(std::abs(r.value));
          return {v, v};
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          return periodic_window_extremes(r, n);
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          // Mixed windows interpolate between the pure sides.
          const double a = dn * std::log(std::abs(r.negative_value));
          const double b = dn * std::log(std::abs(r.nonnegative_value));
          return {std::min(a, b), std::max(a, b)};
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          // Hi blocks and lo gaps both reach arbitrary length, so pure
          // windows of either kind exist for every n.
          const double a = dn * std::log(std::abs(r.hi));
          const double b = dn * std::log(std::abs(r.lo));
          return {std::min(a, b), std::max(a, b)};
        } else {
          return table_window_extremes(w, r, n);
        }
      },
      w.rule());
}

}  // namespace

double window_log_sup(const WeightSequence& w, index_t n) { return window_extremes(w, n).second; }

double window_log_inf(const WeightSequence& w, index_t n) { return window_extremes(w, n).first; }

WeightSequence inverse_conjugate(const WeightSequence& w, index_t table_horizon) {
  if (!w.invertible()) throw NotInvertibleError("inverse_conjugate requires magnitude_inf > 0");
  const WeightRule& rule = w.rule();
  return std::visit(
      [&](const auto& r) -> WeightSequence {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          return WeightSequence(ConstantRule{1.0 / r.value});
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          // v_j = 1/w_{-(j+1)} = 1/values[(P-1-j) mod P]: reciprocal, reversed.
          std::vector<cplx> vals(r.values.size());
          const std::size_t period = r.values.size();
          for (std::size_t j = 0; j < period; ++j) vals[j] = 1.0 / r.values[period - 1 - j];
          return WeightSequence(PeriodicRule{std::move(vals)});
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          return WeightSequence(
              TwoSidedStepRule{1.0 / r.nonnegative_value, 1.0 / r.negative_value});
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          if (table_horizon < 1) throw ContractError("table_horizon must be positive");
          // Exact on [-H, infinity); the far-left fill 1/lo is a horizon-bounded
          // stand-in for the reflected block pattern.
          std::vector<cplx> entries(static_cast<std::size_t>(table_horizon));
          for (index_t j = 0; j < table_horizon; ++j) {
            const index_t n = j - table_horizon;  // n in [-H, 0)
            entries[static_cast<std::size_t>(j)] = 1.0 / w.eval(-(n + 1));
          }
          return WeightSequence(TableRule{-table_horizon, std::move(entries), 1.0 / r.lo,
                                          1.0 / r.lo});
        } else {
          const index_t len = static_cast<index_t>(r.entries.size());
          std::vector<cplx> entries(r.entries.size());
          for (index_t i = 0; i < len; ++i) {
            entries[static_cast<std::size_t>(i)] =
                1.0 / r.entries[static_cast<std::size_t>(len - 1 - i)];
          }
          return WeightSequence(TableRule{-r.offset - len, std::move(entries),
                                          1.0 / r.right_fill, 1.0 / r.left_fill});
        }
      },
      rule);
}

}  // namespace shiftscope
