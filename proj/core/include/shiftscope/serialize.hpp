#pragma once

// JSON configuration parsing and report emission. Reports are built with
// ordered keys and default float formatting only, so identical inputs and
// seeds produce byte-identical documents.

#include <string>

#include "json.hpp"
#include "shiftscope/verdict.hpp"

namespace shiftscope {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "shiftscope-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

// Weight rule configuration: {"kind": ..., rule fields}. Complex scalars are
// written [re, im]; plain numbers are accepted as reals on input.
WeightRule parse_weight_rule(const nlohmann::json& config);
ordered_json rule_to_json(const WeightRule& rule);

cplx parse_complex(const nlohmann::json& j);
ordered_json complex_to_json(const cplx& z);

ordered_json to_json(const QuantityEstimate& e, bool include_sequence = true);
ordered_json to_json(const SpectralProfile& p, bool include_sequences = true);
ordered_json to_json(const LocalRadiusEstimate& e, bool include_sequence = false);
ordered_json to_json(const Verdict& v);
ordered_json to_json(const CompactnessCertificate& c);
ordered_json to_json(const ValidationReport& r);
ordered_json to_json(const CauchyReport& r);
ordered_json to_json(const CoveringReport& r);
ordered_json to_json(const WitnessReport& r);
ordered_json to_json(const LatticeVector& v);  // {"index": [re, im]} map

// The self-contained analysis report document.
ordered_json report_to_json(const AnalysisResult& result, bool include_sequences = true);

// One CSV file per quantity (columns: n, value) under dir.
void write_sequences_csv(const SpectralProfile& profile, const std::string& dir);

}  // namespace shiftscope
