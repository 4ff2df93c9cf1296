#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphcorr/matrix.hpp"
#include "graphcorr/spectral.hpp"

namespace graphcorr {

/// R_ij = (P + Q - P Q - H) / sqrt(P(1-P) Q(1-Q)), clamped to [-1, 1]; 0 where
/// P_ij or Q_ij is 0 or 1. The diagonal is zero.
CorrMatrix estimate_R(const ProbMatrix& p_hat, const ProbMatrix& q_hat, const ProbMatrix& h_hat);

/// K x K table; NaN marks an absent entry (printed as NA).
struct BlockTable {
  Matrix values;

  bool present(std::size_t k, std::size_t l) const {
    return !std::isnan(values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
  }
};

/// Mean of R_ij over pairs i < j whose labels are {k, l}. Blocks without
/// pairs are absent.
BlockTable block_mean_R(const CorrMatrix& r_hat, const std::vector<std::size_t>& labels, std::size_t blocks);

/// Pearson correlation of the binary entries per block pair. Empty blocks and
/// blocks where either graph is constant are absent.
BlockTable naive_block_pearson(const GraphPair& pair, const std::vector<std::size_t>& labels,
                               std::size_t blocks);

void write_block_table_csv(std::ostream& out, const BlockTable& table);

struct HoldoutMask {
  std::size_t n = 0;
  double fraction = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j, sorted
};

/// round(fraction * n(n-1)/2) vertex pairs drawn without replacement.
/// Throws std::invalid_argument if fraction is outside (0, 1) or the mask is empty.
HoldoutMask holdout_mask(std::size_t n, double fraction, std::uint64_t seed);

/// Copy of g with every masked pair set to 0.
AdjacencyMatrix apply_mask(const AdjacencyMatrix& g, const HoldoutMask& mask);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (false positive rate, true positive rate)
  double auc = 0.0;                               // NaN when undefined
  bool defined = false;                           // false when truth is all positive or all negative
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

/// Step ROC from sweeping the threshold over every distinct score, from
/// (0, 0) to (1, 1). AUC by the trapezoid rule, so tied scores count half.
RocCurve roc_curve(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth);

void write_roc_csv(std::ostream& out, const RocCurve& roc);
nlohmann::json roc_summary_json(const RocCurve& roc);

enum class PredictionMode {
  Single,      // P_ij
  Joint,       // P_ij + R_ij (B_ij - P_ij)
  JointExact,  // P_ij + R_ij sqrt(P(1-P) / (Q(1-Q))) (B_ij - Q_ij)
};

struct PredictionConfig {
  PredictionMode mode = PredictionMode::Single;
  UsvtConfig usvt = UsvtConfig::threshold();
};

struct LinkPrediction {
  std::vector<double> scores;          // one per mask pair, mask order
  std::vector<std::uint8_t> truth;
  RocCurve roc;
};

/// Scores the held-out pairs of `target`. P, Q and R are estimated from the
/// masked target and the masked auxiliary graph; the joint score then reads the
/// auxiliary entry B_ij itself. `auxiliary` may be null in Single mode.
LinkPrediction predict_links(const AdjacencyMatrix& target, const AdjacencyMatrix* auxiliary,
                             const HoldoutMask& mask, const PredictionConfig& cfg);

void write_scores_csv(std::ostream& out, const HoldoutMask& mask, const LinkPrediction& prediction);

}  // namespace graphcorr
