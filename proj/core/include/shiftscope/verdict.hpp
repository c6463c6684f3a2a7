#pragma once

// Decision rules over a spectral profile:
//   R1: r3+ < r(W)          -> W strongly compact
//   R2: r1 < r2- (invertible) -> W^{-1} strongly compact
//   R3: R1 and R2            -> the algebra generated by W and W^{-1}
//   R4: r3+ < r2-            -> the commutant {W}' (quoted prior condition)
//   R5: separated inverse orbit witness -> W^{-1} not strongly compact
// Strictness is decided with the relative margin policy tau = 1e-6 * r;
// margins are always reported so callers can judge the finite-horizon gap.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftscope/certify.hpp"
#include "shiftscope/spectral.hpp"

namespace shiftscope {

inline constexpr double kMarginPolicy = 1e-6;  // relative to r(W)

enum class Subject { W, W_inverse, algebra_W_and_inverse, commutant_W };
enum class Conclusion { strongly_compact, not_strongly_compact, inconclusive };
enum class RuleId {
  R1_thm_shift,
  R2_cor_inverse,
  R3_thm_rational,
  R4_commutant_quoted,
  R5_orbit_witness,
  none,
};

const char* to_string(Subject s);
const char* to_string(Conclusion c);
const char* to_string(RuleId r);

struct Verdict {
  Subject subject = Subject::W;
  Conclusion conclusion = Conclusion::inconclusive;
  RuleId rule = RuleId::none;
  double margin = 0.0;  // signed gap of the deciding strict inequality
  std::string caveats;
};

// Emits one verdict per subject, in the fixed order W, W^{-1}, algebra,
// commutant. Throws ComputeError if contradictory conclusions would be
// reached for the same subject.
std::vector<Verdict> decide(const SpectralProfile& profile, const WitnessReport* witness);

struct CertifyRequest {
  index_t basis_index = 0;
  double epsilon = 1e-3;
  std::optional<double> c;  // absent: suggest (local radius estimate + d) / 2
};

struct AnalyzeOptions {
  ProfileOptions profile;
  bool witness = false;
  index_t witness_horizon = 50;
  std::vector<CertifyRequest> certify;
  index_t cert_samples = 200;
  int cert_max_degree = 60;
  index_t local_radius_horizon = 0;  // 0 = profile.horizon_n
  std::uint64_t seed = 42;
};

struct CertificateRecord {
  CompactnessCertificate certificate;
  double chosen_c = 0.0;
  bool c_was_suggested = false;
  LocalRadiusEstimate local_radius;
  ValidationReport validation;
};

struct AnalysisResult {
  WeightRule rule;
  AnalyzeOptions options;
  double magnitude_sup = 0.0;
  double magnitude_inf = 0.0;
  SpectralProfile profile;
  std::vector<Verdict> verdicts;
  std::optional<WitnessReport> witness;
  std::vector<CertificateRecord> certificates;
  std::string certificates_note;  // set when requested certificates were skipped
};

// Full pipeline: profile -> optional witness -> optional certificates (only
// when R1 fires; otherwise the request is noted and skipped) -> verdicts.
AnalysisResult analyze(const WeightSequence& w, const AnalyzeOptions& options);

// The built-in demo: the lacunary rule with hi = 2, lo = 1 (blocks
// 2^m <= k <= 2^m + m carry hi), run at the horizons where the plus-side sup
// is attained on a hi-block window, with witness scan and a certificate at
// e_0. Name: "paper-example".
WeightSequence demo_rule(const std::string& name);
AnalyzeOptions demo_options(const std::string& name);

}  // namespace shiftscope
