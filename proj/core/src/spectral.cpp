#include "shiftscope/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace shiftscope {

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::r_minus: return "r_minus";
    case Quantity::r_plus: return "r_plus";
    case Quantity::r1_minus: return "r1_minus";
    case Quantity::r1_plus: return "r1_plus";
    case Quantity::r2_minus: return "r2_minus";
    case Quantity::r2_plus: return "r2_plus";
    case Quantity::r3_minus: return "r3_minus";
    case Quantity::r3_plus: return "r3_plus";
  }
  return "?";
}

const char* to_string(BoundDirection b) {
  switch (b) {
    case BoundDirection::lower: return "lower";
    case BoundDirection::upper: return "upper";
    case BoundDirection::two_sided: return "two_sided";
    case BoundDirection::heuristic: return "heuristic";
  }
  return "?";
}

namespace {

bool is_minus(Quantity q) {
  return q == Quantity::r_minus || q == Quantity::r1_minus || q == Quantity::r2_minus ||
         q == Quantity::r3_minus;
}

bool is_swept(Quantity q) {
  return q == Quantity::r_minus || q == Quantity::r_plus || q == Quantity::r1_minus ||
         q == Quantity::r1_plus;
}

bool is_sup_type(Quantity q) { return q == Quantity::r_minus || q == Quantity::r_plus; }

void finalize(QuantityEstimate& e) {
  e.estimate = e.sequence.back();
  const index_t n = static_cast<index_t>(e.sequence.size());
  const index_t tail = (n + 3) / 4;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (index_t i = n - tail; i < n; ++i) {
    lo = std::min(lo, e.sequence[static_cast<std::size_t>(i)]);
    hi = std::max(hi, e.sequence[static_cast<std::size_t>(i)]);
  }
  e.tail_inf = lo;
  e.tail_sup = hi;
}

}  // namespace

QuantityEstimate estimate_quantity(const WeightSequence& w, Quantity name, index_t horizon_n,
                                   index_t horizon_k) {
  if (horizon_n < 2) throw ContractError("estimate_quantity requires horizon_n >= 2");
  if (horizon_k < 1) throw ContractError("estimate_quantity requires horizon_k >= 1");

  QuantityEstimate e;
  e.name = name;
  e.horizon_n = horizon_n;
  e.horizon_k = horizon_k;
  e.sequence.resize(static_cast<std::size_t>(horizon_n));

  const bool minus = is_minus(name);
  const bool swept = is_swept(name);
  const bool sup = is_sup_type(name);

  if (!swept) {
    // Anchored families share a single prefix pass.
    const LogPrefix pref = minus ? LogPrefix(w, -horizon_n, 0) : LogPrefix(w, 0, horizon_n);
    for (index_t n = 1; n <= horizon_n; ++n) {
      const double s = minus ? pref.sum(-n, 0) : pref.sum(0, n);
      e.sequence[static_cast<std::size_t>(n - 1)] = std::exp(s / static_cast<double>(n));
    }
    e.bound_direction = BoundDirection::heuristic;
  } else if (!minus) {
    // Windows [k, k+n) for k in [0, horizon_k].
    const LogPrefix pref(w, 0, horizon_n + horizon_k);
    for (index_t n = 1; n <= horizon_n; ++n) {
      double best = sup ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
      for (index_t k = 0; k <= horizon_k; ++k) {
        const double s = pref.at(k + n) - pref.at(k);
        best = sup ? std::max(best, s) : std::min(best, s);
      }
      e.sequence[static_cast<std::size_t>(n - 1)] = std::exp(best / static_cast<double>(n));
    }
    e.bound_direction = sup ? BoundDirection::lower : BoundDirection::upper;
  } else {
    // Windows {-n-k+1, ..., -k} for k in [1, horizon_k].
    const LogPrefix pref(w, -horizon_n - horizon_k + 1, 1);
    for (index_t n = 1; n <= horizon_n; ++n) {
      double best = sup ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
      for (index_t k = 1; k <= horizon_k; ++k) {
        const double s = pref.at(-k + 1) - pref.at(-n - k + 1);
        best = sup ? std::max(best, s) : std::min(best, s);
      }
      e.sequence[static_cast<std::size_t>(n - 1)] = std::exp(best / static_cast<double>(n));
    }
    e.bound_direction = sup ? BoundDirection::lower : BoundDirection::upper;
  }

  finalize(e);
  return e;
}

const QuantityEstimate& SpectralProfile::quantity(Quantity q) const {
  switch (q) {
    case Quantity::r_minus: return r_minus;
    case Quantity::r_plus: return r_plus;
    case Quantity::r1_minus: return r1_minus;
    case Quantity::r1_plus: return r1_plus;
    case Quantity::r2_minus: return r2_minus;
    case Quantity::r2_plus: return r2_plus;
    case Quantity::r3_minus: return r3_minus;
    case Quantity::r3_plus: return r3_plus;
  }
  return r_plus;
}

namespace {

constexpr double kChainTol = 1e-10;

void check_chain_per_n(const QuantityEstimate& lo, const QuantityEstimate& mid,
                       const QuantityEstimate& hi, const char* side) {
  const std::size_t n_common =
      std::min({lo.sequence.size(), mid.sequence.size(), hi.sequence.size()});
  for (std::size_t i = 0; i < n_common; ++i) {
    if (lo.sequence[i] > mid.sequence[i] + kChainTol ||
        mid.sequence[i] > hi.sequence[i] + kChainTol) {
      std::ostringstream msg;
      msg << "per-n ordering chain violated on the " << side << " side at n = " << (i + 1);
      throw ChainViolationError(msg.str());
    }
  }
}

void check_chain_estimates(const SpectralProfile& p) {
  auto le = [](double a, double b) { return a <= b + kChainTol; };
  const bool minus_ok = le(p.r1_minus.estimate, p.r2_minus.estimate) &&
                        le(p.r2_minus.estimate, p.r3_minus.estimate) &&
                        le(p.r3_minus.estimate, p.r_minus.estimate);
  const bool plus_ok = le(p.r1_plus.estimate, p.r2_plus.estimate) &&
                       le(p.r2_plus.estimate, p.r3_plus.estimate) &&
                       le(p.r3_plus.estimate, p.r_plus.estimate);
  if (!minus_ok || !plus_ok) {
    throw ChainViolationError("estimate-level ordering chain violated");
  }
}

}  // namespace

SpectralProfile spectral_profile(const WeightSequence& w, const ProfileOptions& opts) {
  ProfileOptions o = opts;
  if (o.windowed_horizon_n == 0) o.windowed_horizon_n = o.horizon_n;
  if (o.horizon_n < 2 || o.windowed_horizon_n < 2) {
    throw ContractError("spectral_profile requires horizons >= 2");
  }

  SpectralProfile p;
  p.options = o;
  p.r_minus = estimate_quantity(w, Quantity::r_minus, o.windowed_horizon_n, o.horizon_k);
  p.r_plus = estimate_quantity(w, Quantity::r_plus, o.windowed_horizon_n, o.horizon_k);
  p.r1_minus = estimate_quantity(w, Quantity::r1_minus, o.windowed_horizon_n, o.horizon_k);
  p.r1_plus = estimate_quantity(w, Quantity::r1_plus, o.windowed_horizon_n, o.horizon_k);
  p.r2_minus = estimate_quantity(w, Quantity::r2_minus, o.horizon_n, o.horizon_k);
  p.r2_plus = estimate_quantity(w, Quantity::r2_plus, o.horizon_n, o.horizon_k);
  p.r3_minus = estimate_quantity(w, Quantity::r3_minus, o.horizon_n, o.horizon_k);
  p.r3_plus = estimate_quantity(w, Quantity::r3_plus, o.horizon_n, o.horizon_k);

  p.r = std::max(p.r_minus.estimate, p.r_plus.estimate);
  p.r1 = std::min(p.r1_minus.estimate, p.r1_plus.estimate);
  p.m_of_w = w.magnitude_inf();
  p.invertible = w.invertible();

  check_chain_per_n(p.r1_minus, p.r2_minus, p.r_minus, "minus");
  check_chain_per_n(p.r1_plus, p.r2_plus, p.r_plus, "plus");
  // liminf proxy <= limsup proxy of the same anchored sequence.
  if (p.r2_minus.tail_inf > p.r3_minus.tail_sup + kChainTol ||
      p.r2_plus.tail_inf > p.r3_plus.tail_sup + kChainTol) {
    throw ChainViolationError("anchored tail inf exceeds tail sup");
  }
  if (o.windowed_horizon_n == o.horizon_n) check_chain_estimates(p);

  return p;
}

LocalRadiusEstimate local_radius(const WeightSequence& w, index_t k, index_t horizon_n) {
  if (horizon_n < 2) throw ContractError("local_radius requires horizon_n >= 2");
  LocalRadiusEstimate e;
  e.basis_index = k;
  e.horizon_n = horizon_n;
  e.sequence.resize(static_cast<std::size_t>(horizon_n));
  const LogPrefix pref(w, std::min<index_t>(k, 0), k + horizon_n);
  for (index_t n = 1; n <= horizon_n; ++n) {
    // ||W^n e_k|| = |w_k ... w_{n+k-1}|
    e.sequence[static_cast<std::size_t>(n - 1)] =
        std::exp(pref.sum(k, k + n) / static_cast<double>(n));
  }
  const index_t tail = (horizon_n + 3) / 4;
  double hi = -std::numeric_limits<double>::infinity();
  for (index_t i = horizon_n - tail; i < horizon_n; ++i) {
    hi = std::max(hi, e.sequence[static_cast<std::size_t>(i)]);
  }
  e.estimate = hi;
  return e;
}

IdentityReport check_local_radius_identities(const WeightSequence& w, index_t k,
                                             index_t horizon_n) {
  if (k == 0) throw ContractError("identity check requires k != 0");
  if (horizon_n <= std::abs(k)) throw ContractError("identity check requires horizon_n > |k|");

  IdentityReport rep;
  rep.basis_index = k;
  rep.horizon_n = horizon_n;

  const index_t lo = std::min<index_t>(k, 0);
  const index_t hi = std::max<index_t>(k + horizon_n, horizon_n);
  const LogPrefix pref(w, lo, hi);
  auto log_orbit = [&](index_t from, index_t n) { return pref.sum(from, from + n); };

  double max_dev = 0.0;
  if (k > 0) {
    for (index_t n = 1; n <= horizon_n; ++n) {
      const double lhs = log_orbit(k, n);
      const double rhs = log_orbit(0, n + k) - log_orbit(0, k);
      max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
  } else {
    for (index_t n = -k + 1; n <= horizon_n; ++n) {
      const double lhs = log_orbit(k, n);
      const double rhs = log_orbit(k, -k) + log_orbit(0, n + k);
      max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
  }
  rep.max_abs_deviation = max_dev;
  return rep;
}

}  // namespace shiftscope
