#include "shiftscope/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace shiftscope {

namespace {

constexpr double kMaxLogAmplitude = 690.0;  // |ln 1e299|, safely inside double range

// Window product w_from * ... * w_{from+count-1} as (log magnitude, unit
// phase). Keeping the magnitude in the log domain defers overflow to the
// final recombination with the amplitude it scales.
struct LogFactor {
  double log_mag;
  cplx phase;
};

LogFactor forward_factor(const WeightSequence& w, index_t from, index_t count) {
  LogFactor f{0.0, cplx{1.0, 0.0}};
  for (index_t j = from; j < from + count; ++j) {
    const cplx v = w.eval(j);
    const double m = std::abs(v);
    f.log_mag += std::log(m);
    f.phase *= v / m;
  }
  return f;
}

LogFactor backward_factor(const WeightSequence& w, index_t from, index_t count) {
  // 1 / (w_{from} ... w_{from+count-1})
  LogFactor f = forward_factor(w, from, count);
  f.log_mag = -f.log_mag;
  f.phase = std::conj(f.phase);
  return f;
}

cplx rescale(cplx amp, const LogFactor& f) {
  const double amp_mag = std::abs(amp);
  const double combined = std::log(amp_mag) + f.log_mag;
  if (combined > kMaxLogAmplitude || combined < -kMaxLogAmplitude) {
    throw AmplitudeRangeError("amplitude magnitude left the representable range");
  }
  return (amp / amp_mag) * f.phase * std::exp(combined);
}

LatticeVector from_map(const std::map<index_t, cplx>& m) {
  LatticeVector out;
  out.terms.reserve(m.size());
  for (const auto& [idx, amp] : m) {
    if (amp != cplx{0.0, 0.0}) out.terms.emplace_back(idx, amp);
  }
  return out;
}

}  // namespace

double LatticeVector::norm_squared() const {
  double s = 0.0;
  for (const auto& [idx, amp] : terms) s += std::norm(amp);
  return s;
}

double LatticeVector::norm() const { return std::sqrt(norm_squared()); }

LatticeVector lv_scale(const LatticeVector& x, cplx alpha) {
  if (alpha == cplx{0.0, 0.0}) return {};
  LatticeVector out = x;
  for (auto& [idx, amp] : out.terms) amp *= alpha;
  return out;
}

LatticeVector lv_combine(cplx alpha, const LatticeVector& x, cplx beta, const LatticeVector& y) {
  std::map<index_t, cplx> acc;
  for (const auto& [idx, amp] : x.terms) acc[idx] += alpha * amp;
  for (const auto& [idx, amp] : y.terms) acc[idx] += beta * amp;
  return from_map(acc);
}

LatticeVector lv_add(const LatticeVector& x, const LatticeVector& y) {
  return lv_combine(cplx{1.0, 0.0}, x, cplx{1.0, 0.0}, y);
}

double lv_distance(const LatticeVector& x, const LatticeVector& y) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.terms.size() || j < y.terms.size()) {
    if (j >= y.terms.size() || (i < x.terms.size() && x.terms[i].first < y.terms[j].first)) {
      s += std::norm(x.terms[i].second);
      ++i;
    } else if (i >= x.terms.size() || y.terms[j].first < x.terms[i].first) {
      s += std::norm(y.terms[j].second);
      ++j;
    } else {
      s += std::norm(x.terms[i].second - y.terms[j].second);
      ++i;
      ++j;
    }
  }
  return std::sqrt(s);
}

double lv_tail_norm(const LatticeVector& x, index_t cutoff) {
  double s = 0.0;
  for (const auto& [idx, amp] : x.terms) {
    if (idx > cutoff) s += std::norm(amp);
  }
  return std::sqrt(s);
}

int ShiftPolynomial::degree() const {
  for (int i = static_cast<int>(forward.size()) - 1; i >= 0; --i) {
    if (forward[static_cast<std::size_t>(i)] != cplx{0.0, 0.0}) return i;
  }
  return -1;
}

int ShiftPolynomial::backward_degree() const {
  for (int i = static_cast<int>(backward.size()) - 1; i >= 0; --i) {
    if (backward[static_cast<std::size_t>(i)] != cplx{0.0, 0.0}) return i + 1;
  }
  return 0;
}

ShiftPolynomial ShiftPolynomial::monomial(int n, cplx coeff) {
  if (n < 0) throw ContractError("monomial power must be nonnegative");
  ShiftPolynomial p;
  p.forward.assign(static_cast<std::size_t>(n) + 1, cplx{0.0, 0.0});
  p.forward[static_cast<std::size_t>(n)] = coeff;
  return p;
}

LatticeVector apply_shift(const WeightSequence& w, const LatticeVector& x, index_t power) {
  if (power < 0 && !w.invertible()) {
    throw NotInvertibleError("negative shift power requires an invertible weight sequence");
  }
  LatticeVector out;
  out.terms.reserve(x.terms.size());
  for (const auto& [idx, amp] : x.terms) {
    LogFactor f = power >= 0 ? forward_factor(w, idx, power)
                             : backward_factor(w, idx + power, -power);
    out.terms.emplace_back(idx + power, rescale(amp, f));
  }
  return out;
}

LatticeVector apply_polynomial(const WeightSequence& w, const ShiftPolynomial& p,
                               const LatticeVector& x) {
  std::map<index_t, cplx> acc;
  auto accumulate = [&acc](const LatticeVector& v, cplx coeff) {
    for (const auto& [idx, amp] : v.terms) acc[idx] += coeff * amp;
  };

  if (!p.forward.empty() && p.forward[0] != cplx{0.0, 0.0}) accumulate(x, p.forward[0]);
  LatticeVector cur = x;
  for (std::size_t n = 1; n < p.forward.size(); ++n) {
    cur = apply_shift(w, cur, 1);
    if (p.forward[n] != cplx{0.0, 0.0}) accumulate(cur, p.forward[n]);
  }
  if (!p.backward.empty()) {
    if (!w.invertible()) {
      throw NotInvertibleError("backward polynomial part requires invertibility");
    }
    cur = x;
    for (std::size_t n = 0; n < p.backward.size(); ++n) {
      cur = apply_shift(w, cur, -1);
      if (p.backward[n] != cplx{0.0, 0.0}) accumulate(cur, p.backward[n]);
    }
  }
  return from_map(acc);
}

TruncatedOperator::TruncatedOperator(const WeightSequence& w, const ShiftPolynomial& p,
                                     index_t half_width)
    : half_width_(half_width) {
  const int deg = std::max(p.degree(), 0);
  const int bdeg = p.backward_degree();
  if (half_width < std::max<index_t>(deg, bdeg)) {
    throw ContractError("half_width must cover the polynomial bandwidth");
  }
  if (bdeg > 0 && !w.invertible()) {
    throw NotInvertibleError("backward polynomial part requires invertibility");
  }
  const index_t m = size();
  auto add_band = [&](index_t offset, cplx coeff) {
    if (coeff == cplx{0.0, 0.0}) return;
    Band band{offset, std::vector<cplx>(static_cast<std::size_t>(m), cplx{0.0, 0.0})};
    for (index_t col = -half_width_; col <= half_width_; ++col) {
      const index_t row = col + offset;
      if (row < -half_width_ || row > half_width_) continue;
      LogFactor f = offset >= 0 ? forward_factor(w, col, offset)
                                : backward_factor(w, row, -offset);
      band.factors[static_cast<std::size_t>(col + half_width_)] = rescale(coeff, f);
    }
    bands_.push_back(std::move(band));
  };
  for (std::size_t n = 0; n < p.forward.size(); ++n) {
    add_band(static_cast<index_t>(n), p.forward[n]);
  }
  for (std::size_t n = 0; n < p.backward.size(); ++n) {
    add_band(-static_cast<index_t>(n + 1), p.backward[n]);
  }
}

void TruncatedOperator::apply(const cplx* x, cplx* y) const {
  const index_t m = size();
  std::fill(y, y + m, cplx{0.0, 0.0});
  for (const Band& band : bands_) {
    for (index_t col = 0; col < m; ++col) {
      const index_t row = col + band.offset;
      if (row < 0 || row >= m) continue;
      y[row] += band.factors[static_cast<std::size_t>(col)] * x[col];
    }
  }
}

void TruncatedOperator::apply_adjoint(const cplx* x, cplx* y) const {
  const index_t m = size();
  std::fill(y, y + m, cplx{0.0, 0.0});
  for (const Band& band : bands_) {
    for (index_t col = 0; col < m; ++col) {
      const index_t row = col + band.offset;
      if (row < 0 || row >= m) continue;
      y[col] += std::conj(band.factors[static_cast<std::size_t>(col)]) * x[row];
    }
  }
}

cplx TruncatedOperator::entry(index_t row, index_t col) const {
  cplx v{0.0, 0.0};
  for (const Band& band : bands_) {
    if (col + band.offset == row) v += band.factors[static_cast<std::size_t>(col + half_width_)];
  }
  return v;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal (alpha, beta) below x,
// by the Sturm LDL^T recurrence.
int tridiag_count_below(const std::vector<double>& alpha, const std::vector<double>& beta,
                        double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double off = i == 0 ? 0.0 : beta[i - 1];
    d = alpha[i] - x - (i == 0 ? 0.0 : off * off / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

double tridiag_max_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta) {
  double lo = alpha[0], hi = alpha[0];
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double left = i == 0 ? 0.0 : std::abs(beta[i - 1]);
    const double right = i + 1 < alpha.size() ? std::abs(beta[i]) : 0.0;
    lo = std::min(lo, alpha[i] - left - right);
    hi = std::max(hi, alpha[i] + left + right);
  }
  const int n = static_cast<int>(alpha.size());
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tridiag_count_below(alpha, beta, mid) == n) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double dot_real(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::real(std::conj(a[i]) * b[i]);
  }
  return s;
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

OpNormResult op_norm_truncated(const WeightSequence& w, const ShiftPolynomial& p,
                               index_t half_width, double tol) {
  if (tol <= 0.0) throw ContractError("op_norm_truncated requires tol > 0");
  const TruncatedOperator op(w, p, half_width);
  const std::size_t m = static_cast<std::size_t>(op.size());

  // Deterministic start: all-ones with a fixed incommensurate ripple so no
  // symmetry of the band pattern can hide the top eigenvector.
  std::vector<cplx> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    v[i] = cplx{1.0 + 0.25 * std::sin(0.7390851332151607 * (2.0 * static_cast<double>(i) + 1.0)),
                0.125 * std::sin(1.3247179572447460 * static_cast<double>(i) + 0.5)};
  }
  const double v0n = vec_norm(v);
  for (auto& c : v) c /= v0n;

  const index_t budget = std::min<index_t>(static_cast<index_t>(m), 400);
  std::vector<std::vector<cplx>> basis;
  basis.reserve(static_cast<std::size_t>(budget));
  std::vector<double> alpha, beta;
  std::vector<cplx> scratch(m), u(m);

  OpNormResult res;
  double theta_prev = -1.0;
  int stable = 0;
  for (index_t j = 0; j < budget; ++j) {
    basis.push_back(v);
    op.apply(v.data(), scratch.data());
    op.apply_adjoint(scratch.data(), u.data());
    alpha.push_back(dot_real(basis.back(), u));
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const cplx c = dot(b, u);
        for (std::size_t i = 0; i < m; ++i) u[i] -= c * b[i];
      }
    }
    const double b_norm = vec_norm(u);
    const double theta = tridiag_max_eigenvalue(alpha, beta);
    res.iterations = j + 1;
    if (theta_prev >= 0.0 && std::abs(theta - theta_prev) <= tol * std::max(theta, 1e-300)) {
      if (++stable >= 2) {
        res.value = std::sqrt(std::max(theta, 0.0));
        res.converged = true;
        break;
      }
    } else {
      stable = 0;
    }
    theta_prev = theta;
    if (b_norm <= 1e-13 * std::max(1.0, std::sqrt(std::max(theta, 0.0)))) {
      // Krylov space closed: the Ritz value is exact for the swept subspace.
      res.value = std::sqrt(std::max(theta, 0.0));
      res.converged = true;
      break;
    }
    if (j + 1 == budget) {
      if (budget == static_cast<index_t>(m)) {
        // Full space swept; the tridiagonalization is exact.
        res.value = std::sqrt(std::max(theta, 0.0));
        res.converged = true;
      }
      break;
    }
    beta.push_back(b_norm);
    for (std::size_t i = 0; i < m; ++i) v[i] = u[i] / b_norm;
  }

  if (!res.converged) {
    throw NoConvergenceError("operator norm iteration exhausted its budget");
  }
  res.certified_lower = res.value * (1.0 - 10.0 * tol);
  return res;
}

OpNormBound op_norm_upper_bound(const WeightSequence& w, const ShiftPolynomial& p) {
  OpNormBound bound;
  bound.exact = true;  // window extremes are rule-exact for every bundled rule
  double total = 0.0;
  for (std::size_t n = 0; n < p.forward.size(); ++n) {
    const double a = std::abs(p.forward[n]);
    if (a == 0.0) continue;
    total += a * std::exp(window_log_sup(w, static_cast<index_t>(n)));
  }
  for (std::size_t n = 0; n < p.backward.size(); ++n) {
    const double b = std::abs(p.backward[n]);
    if (b == 0.0) continue;
    if (!w.invertible()) throw NotInvertibleError("backward part requires invertibility");
    total += b * std::exp(-window_log_inf(w, static_cast<index_t>(n + 1)));
  }
  bound.value = total;
  return bound;
}

ShiftPolynomial normalize_by_upper_bound(const WeightSequence& w, const ShiftPolynomial& p) {
  const OpNormBound bound = op_norm_upper_bound(w, p);
  if (bound.value <= 0.0) throw ContractError("cannot normalize the zero polynomial");
  ShiftPolynomial out = p;
  for (auto& c : out.forward) c /= bound.value;
  for (auto& c : out.backward) c /= bound.value;
  return out;
}

}  // namespace shiftscope
