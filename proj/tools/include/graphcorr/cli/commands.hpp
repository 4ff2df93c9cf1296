#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphcorr/estimate.hpp"
#include "graphcorr/hyptest.hpp"
#include "graphcorr/matrix.hpp"
#include "graphcorr/samplers.hpp"
#include "graphcorr/spectral.hpp"

namespace graphcorr::cli {

/// Tokens mapped to 0-based categories in order of first appearance.
struct Labels {
  std::vector<std::size_t> ids;
  std::vector<std::string> names;  // names[k] is the token for category k

  std::size_t blocks() const noexcept { return names.size(); }
};

/// One non-empty token per line; blank lines and '#' comments are skipped.
Labels read_labels(const std::string& path);

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
  TestMethod test = TestMethod::GraphonDiff;
  UsvtConfig usvt = UsvtConfig::threshold();
  BootstrapOptions bootstrap;
  std::optional<std::size_t> blocks;   // sbm_chi2 without labels
  std::optional<double> threshold;     // lambda1 fixed critical value
  bool complement = false;
};

struct AnalyzeResult {
  TestReport report;
  CorrMatrix r_hat;
  std::optional<BlockTable> block_mean;
  std::optional<BlockTable> naive_pearson;
};

/// Runs the selected test on (A, B), estimates R from the different-marginal
/// fit, and adds per-block summaries when labels are given.
AnalyzeResult analyze(const GraphPair& pair, const AnalyzeOptions& opts, const Labels* labels);

nlohmann::json analyze_summary_json(const AnalyzeResult& result, const Labels* labels);

// ---------------------------------------------------------------------------

struct PredictOptions {
  double fraction = 0.1;
  std::size_t repeats = 100;
  std::uint64_t seed = 0;  // mask i is drawn with derive_seed(seed, i)
  UsvtConfig usvt = UsvtConfig::fixed_rank(3);
  bool exact = false;      // also score the exact joint conditional
  std::size_t threads = 1;
};

struct AucSummary {
  PredictionMode mode = PredictionMode::Single;
  std::vector<double> aucs;         // one per repeat, NaN when undefined
  std::size_t defined = 0;
  double mean = 0.0;                // over defined repeats
  std::optional<double> std_error;  // sample sd / sqrt(defined); absent below two
  LinkPrediction first;             // the first repeat, for ROC export
};

struct PredictResult {
  std::vector<AucSummary> modes;  // single, joint, then joint_exact if requested
  HoldoutMask first_mask;
};

/// Hides a fraction of vertex pairs of `target` repeatedly and scores them
/// from the remaining entries, with `auxiliary` feeding the joint modes.
PredictResult predict(const AdjacencyMatrix& target, const AdjacencyMatrix& auxiliary,
                      const PredictOptions& opts);

std::string_view to_string(PredictionMode mode) noexcept;
nlohmann::json predict_summary_json(const PredictResult& result, const PredictOptions& opts);

// ---------------------------------------------------------------------------

struct CliqueReduction {
  PlantedClique instance;
  GraphPair pair;
  AdjacencyMatrix recovered;
  bool round_trip = false;
  double r_frobenius = 0.0;  // ||R||_F of the implied correlation matrix
};

CliqueReduction reduce_clique(std::size_t n, double p, std::size_t s0, std::uint64_t seed);

nlohmann::json reduction_summary_json(const CliqueReduction& reduction, double p, std::uint64_t seed);

}  // namespace graphcorr::cli
