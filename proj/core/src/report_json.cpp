#include "graphcorr/report_json.hpp"

namespace graphcorr {

void to_json(nlohmann::json& j, const TestReport& report) { j = report_to_json(report); }

nlohmann::json report_to_json(const TestReport& report, bool include_null_statistics) {
  nlohmann::json j;
  j["statistic"] = report.statistic;
  j["p_value"] = report.p_value ? nlohmann::json(*report.p_value) : nlohmann::json(nullptr);
  j["reject"] = report.reject;
  j["alpha"] = report.alpha;
  j["method"] = std::string(to_string(report.method));
  j["m"] = report.m;
  j["seed"] = report.seed;
  if (report.critical_value) j["critical_value"] = *report.critical_value;
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  if (include_null_statistics) j["null_statistics"] = report.null_statistics;
  return j;
}

void from_json(const nlohmann::json& j, TestReport& report) {
  report = TestReport{};
  j.at("statistic").get_to(report.statistic);
  if (!j.at("p_value").is_null()) report.p_value = j.at("p_value").get<double>();
  j.at("reject").get_to(report.reject);
  j.at("alpha").get_to(report.alpha);
  report.method = test_method_from_string(j.at("method").get<std::string>());
  j.at("m").get_to(report.m);
  j.at("seed").get_to(report.seed);
  if (j.contains("critical_value")) report.critical_value = j["critical_value"].get<double>();
  if (j.contains("warnings")) j["warnings"].get_to(report.warnings);
  if (j.contains("null_statistics")) j["null_statistics"].get_to(report.null_statistics);
}

}  // namespace graphcorr
