#pragma once

#include <json.hpp>

#include "ospk/boundary.hpp"
#include "ospk/report.hpp"

namespace ospk {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "ospk.report/1";

// {"algebra":"osp:2:4","family":"D3","params":{"m1":1,"n1":0},"normalization":"rational-u"}.
// Parameter values may be JSON numbers or exact strings ("1/2", "3+4i", "oo"). "algebra" may be
// omitted when `fallback` is given. CUSTOM takes "entries": [[i, j, "ratfunc"], ...] (1-based).
// `force` skips admissibility and constraint checks (negative controls).
KSolution ksolution_from_json(const json& j, const GradingSpec* fallback = nullptr, bool force = false);
json to_json(const KSolution& k);

json to_json(const VerifyReport& r);
json to_json(const ClassifiedFamily& f);

// Parses inline JSON, or reads it from a file when the text starts with '@'.
json load_json_arg(const std::string& text);

}  // namespace ospk
