#pragma once

#include <nlohmann/json.hpp>

#include "graphcorr/hyptest.hpp"

namespace graphcorr {

/// Fields: statistic, p_value (null when absent), reject, alpha, method, m,
/// seed, plus critical_value and warnings when present. Null statistics are
/// left out; use report_to_json(report, true) to include them.
void to_json(nlohmann::json& j, const TestReport& report);
void from_json(const nlohmann::json& j, TestReport& report);

nlohmann::json report_to_json(const TestReport& report, bool include_null_statistics = false);

}  // namespace graphcorr
