#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphcorr/hyptest.hpp"
#include "graphcorr/spectral.hpp"

namespace graphcorr::cli {

/// Bad configuration content: unknown keys, wrong types, out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model {
  CosineGraphon,        // P_ij = |x_i.x_j| / (2 |x_i||x_j|), R_ij = r
  GaussianGraphon,      // P_ij = exp(-|x_i - x_j|^2) / 2, R_ij = r
  DiffMarginalGraphon,  // P as cosine / 2, Q as cosine / 4 on fresh positions, R_ij = r
  CorrelatedSbm,        // banded K-block design
  PlantedClique,        // ER(p) with an s0-clique, mapped to a pair
  Lambda1ER,            // ER(p) marginals with two-group correlation r
};

std::string_view to_string(Model model) noexcept;
Model model_from_string(std::string_view name);

/// Monte Carlo study over the grid n x r (x K for CorrelatedSbm, with s0 in
/// place of r for PlantedClique).
///
/// JSON schema (all keys but "model" and "n" optional):
///   model          string, one of the Model names
///   n              [int]
///   r              [real]             default [0]
///   K              [int]              CorrelatedSbm, default [2]
///   s0             [int]              PlantedClique, default [0]
///   p              real               Lambda1ER / PlantedClique edge probability, default 0.5
///   mc_replicates  int                default 100
///   bootstrap_m    int                default 99
///   alpha          real               default 0.05
///   base_seed      int                default 0
///   test           string             graphon_same | graphon_diff | sbm_chi2 | lambda1
///   usvt           {"rank": k} or {"threshold": c0}, optional "clip": bool
///   threads        int                worker threads, 0 = all cores, default 1
///   output         string             output directory, default "results"
struct ExperimentConfig {
  Model model = Model::CosineGraphon;
  std::vector<std::size_t> n;
  std::vector<double> r{0.0};
  std::vector<std::size_t> blocks{2};
  std::vector<std::size_t> clique_sizes{0};
  double p = 0.5;
  std::size_t mc_replicates = 100;
  std::size_t bootstrap_m = 99;
  double alpha = 0.05;
  std::uint64_t base_seed = 0;
  std::optional<TestMethod> test;
  std::optional<UsvtConfig> usvt;
  std::size_t threads = 1;
  std::string output = "results";

  /// Throws ConfigError when an invariant fails.
  void validate() const;

  TestMethod effective_test() const;
  /// FixedRank(3) for CosineGraphon, FixedRank(1) for DiffMarginalGraphon,
  /// Threshold(4.01) otherwise.
  UsvtConfig effective_usvt() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
/// Reads and parses a JSON config file. Throws ConfigError on any failure.
ExperimentConfig load_config(const std::string& path);

nlohmann::json usvt_to_json(const UsvtConfig& cfg);

}  // namespace graphcorr::cli
