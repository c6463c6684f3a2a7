#include "shiftscope/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shiftscope/sampling.hpp"

namespace shiftscope {

double full_spectrum_radius(const SpectralProfile& profile) {
  if (!(profile.r > 0.0)) {
    throw DegenerateSpectrumError("full spectrum radius requires r(W) > 0");
  }
  return profile.r;
}

CompactnessCertificate build_certificate(const WeightSequence& w, index_t k, double c,
                                         double epsilon, index_t horizon, double d) {
  if (!(d > 0.0)) throw DegenerateSpectrumError("certificate requires d > 0");
  if (!(c > 0.0) || !(c < d)) throw ContractError("certificate requires 0 < c < d");
  if (!(epsilon > 0.0)) throw ContractError("certificate requires epsilon > 0");
  if (horizon < 4) throw ContractError("certificate horizon must be at least 4");

  const LogPrefix pref(w, std::min<index_t>(k, 0), k + horizon);
  const double log_c = std::log(c);

  // ||W^n e_k|| = |w_k ... w_{n+k-1}|; find the last n violating the c^n bound.
  index_t last_violation = -1;
  for (index_t n = 0; n <= horizon; ++n) {
    const double log_orbit = pref.sum(k, k + n);
    if (log_orbit > static_cast<double>(n) * log_c) last_violation = n;
  }
  const index_t tail_start = (3 * horizon + 3) / 4;
  if (last_violation >= tail_start) {
    std::ostringstream msg;
    msg << "||W^n e_k|| > c^n still holds at n = " << last_violation
        << " in the tail quarter of the horizon; c = " << c
        << " is likely below the local spectral radius at e_" << k;
    throw HypothesisUnmetError(msg.str());
  }

  CompactnessCertificate cert;
  cert.basis_index = k;
  cert.d = d;
  cert.c = c;
  cert.epsilon = epsilon;
  cert.horizon_checked = horizon;
  cert.n0 = last_violation + 1;
  cert.caveat = true;

  // Smallest n1 with (c/d)^{n1+1} / (1 - c/d) < epsilon, evaluated in logs.
  const double log_rho = std::log(c / d);
  const double log_geo = -std::log1p(-c / d);
  index_t n1 = 0;
  while (static_cast<double>(n1 + 1) * log_rho + log_geo >= std::log(epsilon)) ++n1;
  cert.n1 = std::max(cert.n0, n1);
  cert.tail_bound = std::exp(static_cast<double>(cert.n1 + 1) * log_rho + log_geo);
  return cert;
}

namespace {

ValidationReport run_validation(const WeightSequence& w, const CompactnessCertificate& cert,
                                index_t num_samples, int max_degree, std::uint64_t seed,
                                std::optional<index_t> trunc_half_width) {
  if (max_degree <= static_cast<int>(cert.n1)) {
    throw ContractError("validation requires max_degree > cert.n1");
  }
  ValidationReport rep;
  rep.num_samples = num_samples;
  rep.max_degree = max_degree;
  rep.seed = seed;
  rep.epsilon = cert.epsilon;
  rep.used_truncated_norm = trunc_half_width.has_value();

  const LatticeVector origin = LatticeVector::basis(cert.basis_index);
  for (index_t s = 0; s < num_samples; ++s) {
    SampleStream stream(seed, static_cast<std::uint64_t>(s));
    ShiftPolynomial p = sample_polynomial(stream, max_degree, DegreeMode::uniform);
    double scale;
    if (trunc_half_width) {
      scale = op_norm_truncated(w, p, *trunc_half_width, 1e-8).value;
    } else {
      scale = op_norm_upper_bound(w, p).value;
    }
    for (auto& coeff : p.forward) coeff /= scale;

    const LatticeVector image = apply_polynomial(w, p, origin);
    const double residual = lv_tail_norm(image, cert.basis_index + cert.n1);
    if (residual > rep.max_residual) {
      rep.max_residual = residual;
      rep.worst_sample = s;
    }
    if (p.degree() <= static_cast<int>(cert.n1)) {
      if (residual != 0.0 && !trunc_half_width) {
        throw CertificateViolatedError("degree <= n1 sample produced a nonzero residual");
      }
      ++rep.zero_residual_samples;
    }
    if (!trunc_half_width && residual >= cert.epsilon) {
      std::ostringstream msg;
      msg << "sample " << s << " has residual " << residual << " >= epsilon " << cert.epsilon;
      throw CertificateViolatedError(msg.str());
    }
  }
  return rep;
}

}  // namespace

ValidationReport validate_certificate(const WeightSequence& w,
                                      const CompactnessCertificate& cert, index_t num_samples,
                                      int max_degree, std::uint64_t seed) {
  return run_validation(w, cert, num_samples, max_degree, seed, std::nullopt);
}

ValidationReport validate_certificate_diagnostic(const WeightSequence& w,
                                                 const CompactnessCertificate& cert,
                                                 index_t num_samples, int max_degree,
                                                 std::uint64_t seed, index_t trunc_half_width) {
  return run_validation(w, cert, num_samples, max_degree, seed, trunc_half_width);
}

CauchyReport cauchy_coefficient_check(const WeightSequence& w,
                                      const ShiftPolynomial& p_normalized, double d) {
  if (!(d > 0.0)) throw ContractError("cauchy check requires d > 0");
  (void)w;
  CauchyReport rep;
  rep.d = d;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < p_normalized.forward.size(); ++n) {
    const double bound = std::pow(d, -static_cast<double>(n)) + kCauchySlack;
    const double margin = bound - std::abs(p_normalized.forward[n]);
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.argmin_n = static_cast<int>(n);
    }
  }
  rep.samples_checked = 1;
  if (rep.min_margin < 0.0) {
    std::ostringstream msg;
    msg << "|a_" << rep.argmin_n << "| exceeds d^-n + slack by " << -rep.min_margin
        << "; d = " << d << " likely overestimates the full-spectrum radius";
    throw BoundViolatedError(msg.str());
  }
  return rep;
}

CauchyReport cauchy_sampled_check(const WeightSequence& w, double d, index_t num_samples,
                                  int max_degree, std::uint64_t seed) {
  CauchyReport agg;
  agg.d = d;
  agg.min_margin = std::numeric_limits<double>::infinity();
  for (index_t s = 0; s < num_samples; ++s) {
    SampleStream stream(seed, static_cast<std::uint64_t>(s));
    const ShiftPolynomial p =
        normalize_by_upper_bound(w, sample_polynomial(stream, max_degree, DegreeMode::uniform));
    const CauchyReport one = cauchy_coefficient_check(w, p, d);
    if (one.min_margin < agg.min_margin) {
      agg.min_margin = one.min_margin;
      agg.argmin_n = one.argmin_n;
    }
  }
  agg.samples_checked = num_samples;
  return agg;
}

CoveringReport greedy_net(const std::vector<LatticeVector>& points, double epsilon,
                          std::uint64_t sample_seed) {
  if (!(epsilon > 0.0)) throw ContractError("greedy_net requires epsilon > 0");
  CoveringReport rep;
  rep.epsilon = epsilon;
  rep.num_points = static_cast<index_t>(points.size());
  rep.sample_seed = sample_seed;
  if (points.empty()) return rep;

  std::vector<double> dist(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) dist[i] = lv_distance(points[i], points[0]);
  rep.net_size = 1;

  while (true) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    if (dist[far] <= epsilon) {
      rep.max_residual = dist[far];
      return rep;
    }
    ++rep.net_size;
    for (std::size_t i = 0; i < points.size(); ++i) {
      dist[i] = std::min(dist[i], lv_distance(points[i], points[far]));
    }
  }
}

WitnessReport orbit_witness_noncompact(const WeightSequence& w, index_t horizon) {
  if (!w.invertible()) throw NotInvertibleError("orbit witness requires an invertible shift");
  if (horizon < 2) throw ContractError("orbit witness requires horizon >= 2");

  WitnessReport rep;
  rep.horizon = horizon;
  rep.lower_bound_m = w.magnitude_inf();
  if (rep.lower_bound_m < 1.0) {
    rep.reason =
        "m(W) < 1, so the inverse monomials are not bounded by 1 and the orbit "
        "is not constrained to the unit-ball orbit set";
    return rep;
  }

  std::vector<LatticeVector> orbit;
  orbit.reserve(static_cast<std::size_t>(horizon));
  LatticeVector v = LatticeVector::basis(0);
  for (index_t n = 1; n <= horizon; ++n) {
    v = apply_shift(w, v, -1);
    orbit.push_back(v);
  }

  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      min_dist = std::min(min_dist, lv_distance(orbit[i], orbit[j]));
    }
  }
  rep.min_pairwise_distance = min_dist;
  if (min_dist >= kWitnessSeparation) {
    rep.witness_found = true;
    std::ostringstream msg;
    msg << "orbit {W^-n e_0} stays pairwise separated by " << min_dist
        << " up to the horizon; no finite " << kWitnessSeparation / 2.0
        << "-net covers it and the required net size grows with the horizon";
    rep.reason = msg.str();
  } else {
    rep.reason = "orbit vectors approach each other within the horizon; no separation witness";
  }
  return rep;
}

}  // namespace shiftscope
