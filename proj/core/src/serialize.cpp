#include "shiftscope/serialize.hpp"

#include <filesystem>
#include <fstream>

namespace shiftscope {

cplx parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return cplx{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx{j[0].get<double>(), j[1].get<double>()};
  }
  throw ContractError("complex scalar must be a number or a [re, im] pair");
}

ordered_json complex_to_json(const cplx& z) { return ordered_json::array({z.real(), z.imag()}); }

WeightRule parse_weight_rule(const nlohmann::json& config) {
  if (!config.is_object() || !config.contains("kind") || !config["kind"].is_string()) {
    throw ContractError("weight rule config must be an object with a string \"kind\"");
  }
  const std::string kind = config["kind"].get<std::string>();
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!config.contains(name)) {
      throw ContractError(std::string("weight rule config misses field \"") + name + "\"");
    }
    return config.at(name);
  };
  if (kind == "constant") {
    return ConstantRule{parse_complex(field("value"))};
  }
  if (kind == "periodic") {
    const auto& vals = field("values");
    if (!vals.is_array() || vals.empty()) {
      throw ContractError("periodic rule needs a nonempty \"values\" array");
    }
    PeriodicRule r;
    for (const auto& v : vals) r.values.push_back(parse_complex(v));
    return r;
  }
  if (kind == "two_sided_step") {
    return TwoSidedStepRule{parse_complex(field("negative_value")),
                            parse_complex(field("nonnegative_value"))};
  }
  if (kind == "lacunary_blocks") {
    return LacunaryBlocksRule{parse_complex(field("hi")), parse_complex(field("lo"))};
  }
  if (kind == "table") {
    const auto& entries = field("entries");
    if (!entries.is_array() || entries.empty()) {
      throw ContractError("table rule needs a nonempty \"entries\" array");
    }
    TableRule r;
    r.offset = field("offset").get<index_t>();
    for (const auto& v : entries) r.entries.push_back(parse_complex(v));
    r.left_fill = parse_complex(field("left_fill"));
    r.right_fill = parse_complex(field("right_fill"));
    return r;
  }
  throw ContractError("unknown weight rule kind: " + kind);
}

ordered_json rule_to_json(const WeightRule& rule) {
  return std::visit(
      [](const auto& r) -> ordered_json {
        using R = std::decay_t<decltype(r)>;
        ordered_json j;
        if constexpr (std::is_same_v<R, ConstantRule>) {
          j["kind"] = "constant";
          j["value"] = complex_to_json(r.value);
        } else if constexpr (std::is_same_v<R, PeriodicRule>) {
          j["kind"] = "periodic";
          auto arr = ordered_json::array();
          for (const auto& v : r.values) arr.push_back(complex_to_json(v));
          j["values"] = std::move(arr);
        } else if constexpr (std::is_same_v<R, TwoSidedStepRule>) {
          j["kind"] = "two_sided_step";
          j["negative_value"] = complex_to_json(r.negative_value);
          j["nonnegative_value"] = complex_to_json(r.nonnegative_value);
        } else if constexpr (std::is_same_v<R, LacunaryBlocksRule>) {
          j["kind"] = "lacunary_blocks";
          j["hi"] = complex_to_json(r.hi);
          j["lo"] = complex_to_json(r.lo);
        } else {
          j["kind"] = "table";
          j["offset"] = r.offset;
          auto arr = ordered_json::array();
          for (const auto& v : r.entries) arr.push_back(complex_to_json(v));
          j["entries"] = std::move(arr);
          j["left_fill"] = complex_to_json(r.left_fill);
          j["right_fill"] = complex_to_json(r.right_fill);
        }
        return j;
      },
      rule);
}

ordered_json to_json(const QuantityEstimate& e, bool include_sequence) {
  ordered_json j;
  j["name"] = to_string(e.name);
  j["horizon_n"] = e.horizon_n;
  j["horizon_k"] = e.horizon_k;
  j["estimate"] = e.estimate;
  j["tail_inf"] = e.tail_inf;
  j["tail_sup"] = e.tail_sup;
  j["bound_direction"] = to_string(e.bound_direction);
  if (include_sequence) j["sequence"] = e.sequence;
  return j;
}

ordered_json to_json(const SpectralProfile& p, bool include_sequences) {
  ordered_json j;
  j["r"] = p.r;
  j["r1"] = p.r1;
  j["m_of_w"] = p.m_of_w;
  j["invertible"] = p.invertible;
  j["minus_window_alignment"] =
      "windows {-n-k+1, ..., -k}; k = 1 coincides with the anchored window {-n, ..., -1}";
  ordered_json q;
  for (Quantity name : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus,
                        Quantity::r1_plus, Quantity::r2_minus, Quantity::r2_plus,
                        Quantity::r3_minus, Quantity::r3_plus}) {
    q[to_string(name)] = to_json(p.quantity(name), include_sequences);
  }
  j["quantities"] = std::move(q);
  return j;
}

ordered_json to_json(const LocalRadiusEstimate& e, bool include_sequence) {
  ordered_json j;
  j["basis_index"] = e.basis_index;
  j["horizon_n"] = e.horizon_n;
  j["estimate"] = e.estimate;
  if (include_sequence) j["sequence"] = e.sequence;
  return j;
}

ordered_json to_json(const Verdict& v) {
  ordered_json j;
  j["subject"] = to_string(v.subject);
  j["conclusion"] = to_string(v.conclusion);
  j["rule"] = to_string(v.rule);
  j["margin"] = v.margin;
  j["caveats"] = v.caveats;
  return j;
}

ordered_json to_json(const CompactnessCertificate& c) {
  ordered_json j;
  j["basis_index"] = c.basis_index;
  j["d"] = c.d;
  j["c"] = c.c;
  j["n0"] = c.n0;
  j["n1"] = c.n1;
  j["epsilon"] = c.epsilon;
  j["horizon_checked"] = c.horizon_checked;
  j["caveat_tail_beyond_horizon_unverified"] = c.caveat;
  j["tail_bound"] = c.tail_bound;
  return j;
}

ordered_json to_json(const ValidationReport& r) {
  ordered_json j;
  j["num_samples"] = r.num_samples;
  j["max_degree"] = r.max_degree;
  j["seed"] = r.seed;
  j["epsilon"] = r.epsilon;
  j["max_residual"] = r.max_residual;
  j["worst_sample"] = r.worst_sample;
  j["zero_residual_samples"] = r.zero_residual_samples;
  j["used_truncated_norm"] = r.used_truncated_norm;
  return j;
}

ordered_json to_json(const CauchyReport& r) {
  ordered_json j;
  j["d"] = r.d;
  j["min_margin"] = r.min_margin;
  j["argmin_n"] = r.argmin_n;
  j["samples_checked"] = r.samples_checked;
  j["slack"] = kCauchySlack;
  return j;
}

ordered_json to_json(const CoveringReport& r) {
  ordered_json j;
  j["epsilon"] = r.epsilon;
  j["num_points"] = r.num_points;
  j["net_size"] = r.net_size;
  j["max_residual"] = r.max_residual;
  j["sample_seed"] = r.sample_seed;
  return j;
}

ordered_json to_json(const WitnessReport& r) {
  ordered_json j;
  j["witness_found"] = r.witness_found;
  j["min_pairwise_distance"] = r.min_pairwise_distance;
  j["horizon"] = r.horizon;
  j["m_of_w"] = r.lower_bound_m;
  j["separation_policy"] = kWitnessSeparation;
  j["reason"] = r.reason;
  return j;
}

ordered_json to_json(const LatticeVector& v) {
  ordered_json j = ordered_json::object();
  for (const auto& [idx, amp] : v.terms) j[std::to_string(idx)] = complex_to_json(amp);
  return j;
}

ordered_json report_to_json(const AnalysisResult& result, bool include_sequences) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "shiftscope"}, {"version", kToolVersion}};
  j["config"] = rule_to_json(result.rule);

  ordered_json opts;
  opts["horizon_n"] = result.options.profile.horizon_n;
  opts["horizon_k"] = result.options.profile.horizon_k;
  opts["windowed_horizon_n"] = result.options.profile.windowed_horizon_n;
  opts["witness"] = result.options.witness;
  opts["witness_horizon"] = result.options.witness_horizon;
  opts["cert_samples"] = result.options.cert_samples;
  opts["cert_max_degree"] = result.options.cert_max_degree;
  opts["local_radius_horizon"] = result.options.local_radius_horizon;
  opts["seed"] = result.options.seed;
  opts["margin_policy"] = kMarginPolicy;
  j["options"] = std::move(opts);

  j["weights"] = {{"magnitude_sup", result.magnitude_sup},
                  {"magnitude_inf", result.magnitude_inf}};
  j["profile"] = to_json(result.profile, include_sequences);

  auto verdicts = ordered_json::array();
  for (const Verdict& v : result.verdicts) verdicts.push_back(to_json(v));
  j["verdicts"] = std::move(verdicts);

  j["witness"] = result.witness ? to_json(*result.witness) : ordered_json(nullptr);

  auto certs = ordered_json::array();
  for (const CertificateRecord& rec : result.certificates) {
    ordered_json c;
    c["certificate"] = to_json(rec.certificate);
    c["chosen_c"] = rec.chosen_c;
    c["c_was_suggested"] = rec.c_was_suggested;
    c["local_radius"] = to_json(rec.local_radius, false);
    c["validation"] = to_json(rec.validation);
    certs.push_back(std::move(c));
  }
  j["certificates"] = std::move(certs);
  if (!result.certificates_note.empty()) j["certificates_note"] = result.certificates_note;
  return j;
}

void write_sequences_csv(const SpectralProfile& profile, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (Quantity name : {Quantity::r_minus, Quantity::r_plus, Quantity::r1_minus,
                        Quantity::r1_plus, Quantity::r2_minus, Quantity::r2_plus,
                        Quantity::r3_minus, Quantity::r3_plus}) {
    const QuantityEstimate& e = profile.quantity(name);
    std::ofstream out(std::filesystem::path(dir) / (std::string(to_string(name)) + ".csv"));
    if (!out) throw ComputeError("cannot open CSV output in " + dir);
    out << "n,value\n";
    out.precision(17);
    for (std::size_t i = 0; i < e.sequence.size(); ++i) {
      out << (i + 1) << "," << e.sequence[i] << "\n";
    }
  }
}

}  // namespace shiftscope
