#include <cmath>

#include "doctest.h"
#include "shiftscope/sampling.hpp"
#include "shiftscope/serialize.hpp"
#include "shiftscope/verdict.hpp"

using namespace shiftscope;

namespace {

WeightSequence lacunary() { return WeightSequence(LacunaryBlocksRule{{2.0, 0.0}, {1.0, 0.0}}); }
WeightSequence two_sided() { return WeightSequence(TwoSidedStepRule{{2.0, 0.0}, {1.0, 0.0}}); }

const Verdict& find(const std::vector<Verdict>& vs, Subject s) {
  for (const Verdict& v : vs) {
    if (v.subject == s) return v;
  }
  throw std::logic_error("subject missing");
}

WeightSequence random_table(std::uint64_t seed) {
  SampleStream s(seed, 0);
  const index_t len = s.uniform_int(1, 64);
  auto log_uniform = [&]() {
    return cplx{std::exp(std::log(0.25) + s.uniform() * std::log(16.0)), 0.0};
  };
  TableRule r;
  r.offset = s.uniform_int(-32, 32);
  for (index_t i = 0; i < len; ++i) r.entries.push_back(log_uniform());
  r.left_fill = log_uniform();
  r.right_fill = log_uniform();
  return WeightSequence(std::move(r));
}

}  // namespace

TEST_CASE("paper example: W strongly compact, inverse witnessed non-compact") {
  const AnalysisResult res = analyze(lacunary(), demo_options("paper-example"));

  const Verdict& w = find(res.verdicts, Subject::W);
  CHECK(w.conclusion == Conclusion::strongly_compact);
  CHECK(w.rule == RuleId::R1_thm_shift);
  CHECK(w.margin >= 0.98);

  const Verdict& winv = find(res.verdicts, Subject::W_inverse);
  CHECK(winv.conclusion == Conclusion::not_strongly_compact);
  CHECK(winv.rule == RuleId::R5_orbit_witness);
  REQUIRE(res.witness.has_value());
  CHECK(std::abs(res.witness->min_pairwise_distance - std::sqrt(2.0)) < 1e-12);

  CHECK(find(res.verdicts, Subject::algebra_W_and_inverse).conclusion ==
        Conclusion::inconclusive);
  CHECK(find(res.verdicts, Subject::commutant_W).conclusion == Conclusion::inconclusive);

  REQUIRE(res.certificates.size() == 1);
  CHECK(res.certificates[0].validation.max_residual < res.certificates[0].certificate.epsilon);
}

TEST_CASE("two-sided step fires R1 through R4") {
  AnalyzeOptions opts;
  opts.profile = {64, 64, 0};
  opts.witness = false;
  const AnalysisResult res = analyze(two_sided(), opts);
  CHECK(find(res.verdicts, Subject::W).rule == RuleId::R1_thm_shift);
  CHECK(find(res.verdicts, Subject::W_inverse).rule == RuleId::R2_cor_inverse);
  CHECK(find(res.verdicts, Subject::algebra_W_and_inverse).rule == RuleId::R3_thm_rational);
  CHECK(find(res.verdicts, Subject::commutant_W).rule == RuleId::R4_commutant_quoted);
  for (const Verdict& v : res.verdicts) {
    CHECK(v.conclusion == Conclusion::strongly_compact);
    CHECK(v.margin == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("unweighted shift: all margins zero, witness reported side by side") {
  AnalyzeOptions opts;
  opts.profile = {64, 64, 0};
  opts.witness = true;
  opts.witness_horizon = 40;
  const AnalysisResult res = analyze(WeightSequence(ConstantRule{{1.0, 0.0}}), opts);
  CHECK(find(res.verdicts, Subject::W).conclusion == Conclusion::inconclusive);
  CHECK(find(res.verdicts, Subject::W).margin == doctest::Approx(0.0).epsilon(1e-12));
  const Verdict& winv = find(res.verdicts, Subject::W_inverse);
  CHECK(winv.conclusion == Conclusion::not_strongly_compact);
  CHECK(winv.rule == RuleId::R5_orbit_witness);
  CHECK(find(res.verdicts, Subject::algebra_W_and_inverse).conclusion ==
        Conclusion::inconclusive);
  CHECK(find(res.verdicts, Subject::commutant_W).conclusion == Conclusion::inconclusive);
}

TEST_CASE("periodic rule is inconclusive everywhere") {
  AnalyzeOptions opts;
  opts.profile = {1 << 12, 256, 0};
  const AnalysisResult res =
      analyze(WeightSequence(PeriodicRule{{{2.0, 0.0}, {1.0, 0.0}}}), opts);
  for (const Verdict& v : res.verdicts) CHECK(v.conclusion == Conclusion::inconclusive);
}

TEST_CASE("certificates requested but R1 blocked: noted, not attempted") {
  AnalyzeOptions opts;
  opts.profile = {64, 64, 0};
  opts.certify.push_back(CertifyRequest{0, 1e-3, std::nullopt});
  const AnalysisResult res = analyze(WeightSequence(ConstantRule{{1.0, 0.0}}), opts);
  CHECK(res.certificates.empty());
  CHECK(!res.certificates_note.empty());
}

TEST_CASE("rule monotonicity: R4 firing implies R1 firing") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralProfile p = spectral_profile(random_table(seed), {256, 64, 0});
    const std::vector<Verdict> vs = decide(p, nullptr);
    const bool r4 = find(vs, Subject::commutant_W).rule == RuleId::R4_commutant_quoted;
    const bool r1 = find(vs, Subject::W).rule == RuleId::R1_thm_shift;
    if (r4) CHECK(r1);
  }
}

TEST_CASE("contradictory verdicts on the same subject raise") {
  SpectralProfile p = spectral_profile(two_sided(), {64, 64, 0});  // R2 fires
  WitnessReport fake;
  fake.witness_found = true;
  fake.min_pairwise_distance = 1.4;
  fake.horizon = 10;
  fake.lower_bound_m = 1.0;
  CHECK_THROWS_AS(decide(p, &fake), ComputeError);
}

TEST_CASE("reports are deterministic byte for byte") {
  const AnalysisResult a = analyze(lacunary(), demo_options("paper-example"));
  const AnalysisResult b = analyze(lacunary(), demo_options("paper-example"));
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("config round trip") {
  const auto configs = {
      nlohmann::json{{"kind", "constant"}, {"value", 2.0}},
      nlohmann::json{{"kind", "periodic"}, {"values", {2.0, 1.0}}},
      nlohmann::json{{"kind", "two_sided_step"}, {"negative_value", 2.0},
                     {"nonnegative_value", {0.0, 1.0}}},
      nlohmann::json{{"kind", "lacunary_blocks"}, {"hi", 2.0}, {"lo", 1.0}},
      nlohmann::json{{"kind", "table"},
                     {"offset", -2},
                     {"entries", {3.0, 0.5}},
                     {"left_fill", 1.0},
                     {"right_fill", 2.0}},
  };
  for (const nlohmann::json& cfg : configs) {
    const WeightRule rule = parse_weight_rule(cfg);
    const ordered_json echoed = rule_to_json(rule);
    const WeightRule again = parse_weight_rule(echoed);
    CHECK(rule_to_json(again).dump() == echoed.dump());
  }
  CHECK_THROWS_AS(parse_weight_rule(nlohmann::json{{"kind", "mystery"}}), ContractError);
  CHECK_THROWS_AS(parse_weight_rule(nlohmann::json{{"kind", "constant"}}), ContractError);
  CHECK_THROWS_AS(parse_weight_rule(nlohmann::json::array()), ContractError);
}

TEST_CASE("unknown demo name is a contract violation") {
  CHECK_THROWS_AS(demo_rule("nope"), ContractError);
  CHECK_THROWS_AS(demo_options("nope"), ContractError);
}
