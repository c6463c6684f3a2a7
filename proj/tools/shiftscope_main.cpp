// shiftscope: decide, certify, and empirically probe strong compactness of
// bilateral weighted shifts from a JSON weight-rule configuration.
//
// Subcommands:
//   analyze <config.json>  spectral profile, rule verdicts, optional witness
//                          scan and precompactness certificates
//   demo <name>            built-in configuration (name: paper-example)
//   cover <config.json>    greedy epsilon-net over sampled normalized
//                          polynomial orbit vectors
//
// Exit codes: 0 success, 2 contract violation (bad config/arguments),
// 3 component error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shiftscope/sampling.hpp"
#include "shiftscope/serialize.hpp"

namespace {

using namespace shiftscope;

WeightSequence load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file: " + path);
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("config is not valid JSON: ") + e.what());
  }
  return WeightSequence(parse_weight_rule(config));
}

CertifyRequest parse_certify_spec(const std::string& spec) {
  CertifyRequest req;
  bool have_k = false, have_eps = false;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ContractError("certify spec item needs key=value: " + item);
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "k") {
        req.basis_index = std::stoll(value);
        have_k = true;
      } else if (key == "eps") {
        req.epsilon = std::stod(value);
        have_eps = true;
      } else if (key == "c") {
        req.c = std::stod(value);
      } else {
        throw ContractError("unknown certify spec key: " + key);
      }
    } catch (const std::logic_error&) {
      throw ContractError("bad certify spec value: " + item);
    }
  }
  if (!have_k || !have_eps) throw ContractError("certify spec needs k=... and eps=...");
  return req;
}

void print_summary(const AnalysisResult& res, std::ostream& os) {
  os << "rule: " << rule_to_json(res.rule)["kind"].get<std::string>()
     << "  sup|w| = " << res.magnitude_sup << "  inf|w| = " << res.magnitude_inf
     << (res.profile.invertible ? "  (invertible)" : "") << "\n";
  os << "r = " << res.profile.r << "  r1 = " << res.profile.r1
     << "  r3_plus = " << res.profile.r3_plus.estimate
     << "  r2_minus = " << res.profile.r2_minus.estimate << "\n";
  for (const Verdict& v : res.verdicts) {
    os << "verdict " << to_string(v.subject) << ": " << to_string(v.conclusion);
    if (v.rule != RuleId::none) os << " via " << to_string(v.rule);
    os << " (margin " << v.margin << ")\n";
  }
  if (res.witness) {
    os << "witness: " << (res.witness->witness_found ? "found" : "not found")
       << ", min pairwise orbit distance " << res.witness->min_pairwise_distance << "\n";
  }
  for (const CertificateRecord& rec : res.certificates) {
    os << "certificate k=" << rec.certificate.basis_index << ": c = " << rec.chosen_c
       << ", n0 = " << rec.certificate.n0 << ", n1 = " << rec.certificate.n1
       << ", max residual " << rec.validation.max_residual << " < eps "
       << rec.certificate.epsilon << "\n";
  }
  if (!res.certificates_note.empty()) os << res.certificates_note << "\n";
}

void emit_report(const AnalysisResult& res, const std::optional<std::string>& out_path,
                 const std::optional<std::string>& csv_dir, bool with_sequences) {
  const ordered_json doc = report_to_json(res, with_sequences);
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw ContractError("cannot open output file: " + *out_path);
    out << doc.dump(2) << "\n";
    print_summary(res, std::cout);
    std::cout << "report written to " << *out_path << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  if (csv_dir) write_sequences_csv(res.profile, *csv_dir);
}

struct AnalyzeArgs {
  std::string config_path;
  AnalyzeOptions options;
  std::vector<std::string> certify_specs;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_dir;
  bool no_sequences = false;
};

void run_analyze(const WeightSequence& w, AnalyzeArgs& args) {
  for (const std::string& spec : args.certify_specs) {
    args.options.certify.push_back(parse_certify_spec(spec));
  }
  const AnalysisResult res = analyze(w, args.options);
  emit_report(res, args.out_path, args.csv_dir, !args.no_sequences);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical strong-compactness toolkit for bilateral weighted shifts"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  std::string demo_name;
  std::string cover_config;
  index_t cover_k = 0;
  double cover_eps = 1e-2;
  index_t cover_samples = 500;
  int cover_max_degree = 60;
  std::uint64_t cover_seed = 42;
  std::optional<std::string> cover_out;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--horizon-n", analyze_args.options.profile.horizon_n,
                    "per-n horizon for the anchored quantities");
    cmd->add_option("--horizon-k", analyze_args.options.profile.horizon_k,
                    "window-position range for the swept quantities");
    cmd->add_option("--windowed-horizon-n", analyze_args.options.profile.windowed_horizon_n,
                    "per-n horizon for the swept quantities (0 = horizon-n)");
    cmd->add_option("--certify", analyze_args.certify_specs,
                    "certificate request k=...,eps=...[,c=...] (repeatable)");
    cmd->add_flag("--witness", analyze_args.options.witness, "run the inverse-orbit witness scan");
    cmd->add_option("--witness-horizon", analyze_args.options.witness_horizon,
                    "number of inverse orbit vectors in the witness scan");
    cmd->add_option("--samples", analyze_args.options.cert_samples,
                    "random polynomials per certificate validation");
    cmd->add_option("--max-degree", analyze_args.options.cert_max_degree,
                    "maximum sampled polynomial degree");
    cmd->add_option("--seed", analyze_args.options.seed, "sampling seed");
    cmd->add_option("--out", [&](const std::vector<std::string>& v) {
                      analyze_args.out_path = v.back();
                      return true;
                    },
                    "write the JSON report to this file");
    cmd->add_option("--csv", [&](const std::vector<std::string>& v) {
                      analyze_args.csv_dir = v.back();
                      return true;
                    },
                    "emit per-quantity CSV sequences into this directory");
    cmd->add_flag("--no-sequences", analyze_args.no_sequences,
                  "omit per-n sequences from the JSON report");
  };

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "analyze a weight-rule config");
  cmd_analyze->add_option("config", analyze_args.config_path, "weight rule JSON file")
      ->required();
  add_common(cmd_analyze);

  CLI::App* cmd_demo = app.add_subcommand("demo", "run a built-in configuration");
  cmd_demo->add_option("name", demo_name, "demo name (paper-example)")->required();
  add_common(cmd_demo);

  CLI::App* cmd_cover = app.add_subcommand("cover", "greedy net over sampled orbit vectors");
  cmd_cover->add_option("config", cover_config, "weight rule JSON file")->required();
  cmd_cover->add_option("--k", cover_k, "basis index of the probed orbit");
  cmd_cover->add_option("--eps", cover_eps, "net radius");
  cmd_cover->add_option("--samples", cover_samples, "number of sampled polynomials");
  cmd_cover->add_option("--max-degree", cover_max_degree, "sampled polynomial degree");
  cmd_cover->add_option("--seed", cover_seed, "sampling seed");
  cmd_cover->add_option("--out", [&](const std::vector<std::string>& v) {
                          cover_out = v.back();
                          return true;
                        },
                        "write the covering report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_analyze->parsed()) {
      run_analyze(load_rule(analyze_args.config_path), analyze_args);
    } else if (cmd_demo->parsed()) {
      const WeightSequence w = demo_rule(demo_name);
      AnalyzeOptions defaults = demo_options(demo_name);
      // Explicit flags override the demo defaults.
      if (!cmd_demo->count("--horizon-n")) analyze_args.options.profile.horizon_n = defaults.profile.horizon_n;
      if (!cmd_demo->count("--horizon-k")) analyze_args.options.profile.horizon_k = defaults.profile.horizon_k;
      if (!cmd_demo->count("--windowed-horizon-n")) {
        analyze_args.options.profile.windowed_horizon_n = defaults.profile.windowed_horizon_n;
      }
      if (!cmd_demo->count("--witness")) analyze_args.options.witness = defaults.witness;
      if (!cmd_demo->count("--witness-horizon")) analyze_args.options.witness_horizon = defaults.witness_horizon;
      if (!cmd_demo->count("--samples")) analyze_args.options.cert_samples = defaults.cert_samples;
      if (!cmd_demo->count("--max-degree")) analyze_args.options.cert_max_degree = defaults.cert_max_degree;
      if (!cmd_demo->count("--seed")) analyze_args.options.seed = defaults.seed;
      if (analyze_args.certify_specs.empty()) analyze_args.options.certify = defaults.certify;
      run_analyze(w, analyze_args);
    } else if (cmd_cover->parsed()) {
      const WeightSequence w = load_rule(cover_config);
      std::vector<LatticeVector> points;
      points.reserve(static_cast<std::size_t>(cover_samples));
      const LatticeVector origin = LatticeVector::basis(cover_k);
      for (index_t s = 0; s < cover_samples; ++s) {
        SampleStream stream(cover_seed, static_cast<std::uint64_t>(s));
        const ShiftPolynomial p = normalize_by_upper_bound(
            w, sample_polynomial(stream, cover_max_degree, DegreeMode::fixed));
        points.push_back(apply_polynomial(w, p, origin));
      }
      const CoveringReport rep = greedy_net(points, cover_eps, cover_seed);
      ordered_json doc = to_json(rep);
      doc["config"] = rule_to_json(w.rule());
      doc["basis_index"] = cover_k;
      doc["max_degree"] = cover_max_degree;
      if (cover_out) {
        std::ofstream out(*cover_out);
        if (!out) throw ContractError("cannot open output file: " + *cover_out);
        out << doc.dump(2) << "\n";
      }
      std::cout << doc.dump(2) << "\n";
    }
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const ComputeError& e) {
    std::cerr << "component error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
