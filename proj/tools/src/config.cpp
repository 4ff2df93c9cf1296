#include "graphcorr/cli/config.hpp"

#include <array>
#include <fstream>
#include <set>
#include <utility>

namespace graphcorr::cli {

namespace {

constexpr std::array<std::pair<Model, std::string_view>, 6> kModelNames{{
    {Model::CosineGraphon, "CosineGraphon"},
    {Model::GaussianGraphon, "GaussianGraphon"},
    {Model::DiffMarginalGraphon, "DiffMarginalGraphon"},
    {Model::CorrelatedSbm, "CorrelatedSbm"},
    {Model::PlantedClique, "PlantedClique"},
    {Model::Lambda1ER, "Lambda1ER"},
}};

const std::set<std::string, std::less<>> kKeys{
    "model", "n",     "r",         "K",    "s0",      "p",      "mc_replicates", "bootstrap_m",
    "alpha", "base_seed", "test", "usvt", "threads", "output",
};

template <typename T>
T get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::size_t get_count(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<std::size_t> get_counts(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw ConfigError(std::string("config key '") + key + "' must be a list");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0)
      throw ConfigError(std::string("config key '") + key + "' must hold non-negative integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

UsvtConfig usvt_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config key 'usvt' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "rank" && key != "threshold" && key != "clip")
      throw ConfigError("unknown usvt key '" + key + "'");
  }
  const bool clip = j.contains("clip") ? get<bool>(j, "clip") : true;
  if (j.contains("rank") == j.contains("threshold"))
    throw ConfigError("usvt needs exactly one of 'rank' or 'threshold'");
  if (j.contains("rank")) return UsvtConfig::fixed_rank(get_count(j, "rank"), clip);
  return UsvtConfig::threshold(get<double>(j, "threshold"), clip);
}

}  // namespace

std::string_view to_string(Model model) noexcept {
  for (const auto& [m, name] : kModelNames)
    if (m == model) return name;
  return "unknown";
}

Model model_from_string(std::string_view name) {
  for (const auto& [m, text] : kModelNames)
    if (text == name) return m;
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (n.empty()) throw ConfigError("grid 'n' is empty");
  for (const auto v : n)
    if (v < 2) throw ConfigError("grid 'n' entries must be at least 2");
  if (model == Model::PlantedClique) {
    if (clique_sizes.empty()) throw ConfigError("grid 's0' is empty");
    for (const auto s0 : clique_sizes)
      for (const auto v : n)
        if (s0 > v) throw ConfigError("clique size exceeds n");
  } else if (r.empty()) {
    throw ConfigError("grid 'r' is empty");
  }
  for (const auto v : r)
    if (!(v >= -1.0 && v <= 1.0)) throw ConfigError("grid 'r' entries must lie in [-1, 1]");
  if (model == Model::CorrelatedSbm) {
    if (blocks.empty()) throw ConfigError("grid 'K' is empty");
    for (const auto k : blocks)
      if (k < 1) throw ConfigError("grid 'K' entries must be at least 1");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("'p' must lie in [0, 1]");
  if (mc_replicates < 1) throw ConfigError("'mc_replicates' must be at least 1");
  if (bootstrap_m < 1) throw ConfigError("'bootstrap_m' must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("'alpha' must lie in (0, 1)");
  if (usvt) {
    if (usvt->mode == UsvtConfig::Mode::FixedRank && usvt->rank < 1)
      throw ConfigError("usvt rank must be at least 1");
    if (usvt->mode == UsvtConfig::Mode::Threshold && !(usvt->c0 > 0.0))
      throw ConfigError("usvt threshold must be positive");
  }
  if (output.empty()) throw ConfigError("'output' is empty");
}

TestMethod ExperimentConfig::effective_test() const {
  if (test) return *test;
  switch (model) {
    case Model::DiffMarginalGraphon:
      return TestMethod::GraphonDiff;
    case Model::CorrelatedSbm:
      return TestMethod::SbmChi2;
    case Model::Lambda1ER:
      return TestMethod::Lambda1;
    default:
      return TestMethod::GraphonSame;
  }
}

UsvtConfig ExperimentConfig::effective_usvt() const {
  if (usvt) return *usvt;
  if (model == Model::CosineGraphon) return UsvtConfig::fixed_rank(3);
  if (model == Model::DiffMarginalGraphon) return UsvtConfig::fixed_rank(1);
  return UsvtConfig::threshold();
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  if (!j.contains("model")) throw ConfigError("config key 'model' is required");
  if (!j.contains("n")) throw ConfigError("config key 'n' is required");

  ExperimentConfig cfg;
  cfg.model = model_from_string(get<std::string>(j, "model"));
  cfg.n = get_counts(j, "n");
  if (j.contains("r")) cfg.r = get<std::vector<double>>(j, "r");
  if (j.contains("K")) cfg.blocks = get_counts(j, "K");
  if (j.contains("s0")) cfg.clique_sizes = get_counts(j, "s0");
  if (j.contains("p")) cfg.p = get<double>(j, "p");
  if (j.contains("mc_replicates")) cfg.mc_replicates = get_count(j, "mc_replicates");
  if (j.contains("bootstrap_m")) cfg.bootstrap_m = get_count(j, "bootstrap_m");
  if (j.contains("alpha")) cfg.alpha = get<double>(j, "alpha");
  if (j.contains("base_seed")) cfg.base_seed = get<std::uint64_t>(j, "base_seed");
  if (j.contains("test")) {
    try {
      cfg.test = test_method_from_string(get<std::string>(j, "test"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("usvt")) cfg.usvt = usvt_from_json(j.at("usvt"));
  if (j.contains("threads")) cfg.threads = get_count(j, "threads");
  if (j.contains("output")) cfg.output = get<std::string>(j, "output");
  cfg.validate();
  return cfg;
}

nlohmann::json usvt_to_json(const UsvtConfig& cfg) {
  nlohmann::json j;
  if (cfg.mode == UsvtConfig::Mode::FixedRank)
    j["rank"] = cfg.rank;
  else
    j["threshold"] = cfg.c0;
  j["clip"] = cfg.clip;
  return j;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["model"] = std::string(to_string(cfg.model));
  j["n"] = cfg.n;
  if (cfg.model == Model::PlantedClique)
    j["s0"] = cfg.clique_sizes;
  else
    j["r"] = cfg.r;
  if (cfg.model == Model::CorrelatedSbm) j["K"] = cfg.blocks;
  if (cfg.model == Model::PlantedClique || cfg.model == Model::Lambda1ER) j["p"] = cfg.p;
  j["mc_replicates"] = cfg.mc_replicates;
  j["bootstrap_m"] = cfg.bootstrap_m;
  j["alpha"] = cfg.alpha;
  j["base_seed"] = cfg.base_seed;
  j["test"] = std::string(to_string(cfg.effective_test()));
  j["usvt"] = usvt_to_json(cfg.effective_usvt());
  j["threads"] = cfg.threads;
  j["output"] = cfg.output;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace graphcorr::cli
