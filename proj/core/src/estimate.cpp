#include "graphcorr/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "graphcorr/hyptest.hpp"
#include "graphcorr/rng.hpp"

namespace graphcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool degenerate(double x) { return x <= 0.0 || x >= 1.0; }

void check_labels(const std::vector<std::size_t>& labels, std::size_t n, std::size_t blocks) {
  if (labels.size() != n) throw DimensionMismatch(labels.size(), n);
  if (blocks == 0) throw std::invalid_argument("need at least one block");
  for (const auto l : labels) {
    if (l >= blocks) throw std::invalid_argument("label out of range");
  }
}

void write_number(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "NA";
  } else {
    out << v;
  }
}

}  // namespace

CorrMatrix estimate_R(const ProbMatrix& p_hat, const ProbMatrix& q_hat, const ProbMatrix& h_hat) {
  const auto n = p_hat.size();
  if (q_hat.size() != n) throw DimensionMismatch(n, q_hat.size());
  if (h_hat.size() != n) throw DimensionMismatch(n, h_hat.size());
  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = p_hat(i, j);
      const double q = q_hat(i, j);
      if (degenerate(p) || degenerate(q)) continue;
      const double value = (p + q - p * q - h_hat(i, j)) / std::sqrt(p * (1.0 - p) * q * (1.0 - q));
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      r(ii, jj) = r(jj, ii) = std::clamp(value, -1.0, 1.0);
    }
  }
  return CorrMatrix(std::move(r));
}

BlockTable block_mean_R(const CorrMatrix& r_hat, const std::vector<std::size_t>& labels, std::size_t blocks) {
  const auto n = r_hat.size();
  check_labels(labels, n, blocks);
  const auto kk = static_cast<Eigen::Index>(blocks);
  Matrix sum = Matrix::Zero(kk, kk);
  Matrix count = Matrix::Zero(kk, kk);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto k = static_cast<Eigen::Index>(labels[i]);
      auto l = static_cast<Eigen::Index>(labels[j]);
      if (k > l) std::swap(k, l);
      sum(k, l) += r_hat(i, j);
      count(k, l) += 1.0;
    }
  }
  BlockTable table{Matrix::Constant(kk, kk, kNaN)};
  for (Eigen::Index k = 0; k < kk; ++k) {
    for (Eigen::Index l = k; l < kk; ++l) {
      if (count(k, l) > 0.0) table.values(k, l) = table.values(l, k) = sum(k, l) / count(k, l);
    }
  }
  return table;
}

BlockTable naive_block_pearson(const GraphPair& pair, const std::vector<std::size_t>& labels,
                               std::size_t blocks) {
  check_labels(labels, pair.size(), blocks);
  const auto bc = block_correlations(pair, labels, blocks);
  BlockTable table{bc.rho};
  for (Eigen::Index k = 0; k < table.values.rows(); ++k) {
    for (Eigen::Index l = 0; l < table.values.cols(); ++l) {
      if (bc.counts(k, l) == 0.0) table.values(k, l) = kNaN;
    }
  }
  for (const auto& [k, l] : bc.degenerate) {
    const auto kk = static_cast<Eigen::Index>(k);
    const auto ll = static_cast<Eigen::Index>(l);
    table.values(kk, ll) = table.values(ll, kk) = kNaN;
  }
  return table;
}

void write_block_table_csv(std::ostream& out, const BlockTable& table) {
  const auto old = out.precision(17);
  for (Eigen::Index k = 0; k < table.values.rows(); ++k) {
    for (Eigen::Index l = 0; l < table.values.cols(); ++l) {
      if (l > 0) out << ',';
      write_number(out, table.values(k, l));
    }
    out << '\n';
  }
  out.precision(old);
}

HoldoutMask holdout_mask(std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("holdout_mask: fraction must lie in (0, 1)");
  const std::size_t total = n * (n > 0 ? n - 1 : 0) / 2;
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
  if (count == 0) throw std::invalid_argument("holdout_mask: fraction selects no vertex pairs");

  std::vector<std::size_t> index(total);
  std::iota(index.begin(), index.end(), std::size_t{0});
  Rng rng = make_rng(seed);
  for (std::size_t s = 0; s < count; ++s) {
    const auto pick = std::uniform_int_distribution<std::size_t>(s, total - 1)(rng);
    std::swap(index[s], index[pick]);
  }
  index.resize(count);
  std::sort(index.begin(), index.end());

  HoldoutMask mask{n, fraction, {}};
  mask.pairs.reserve(count);
  std::size_t i = 0;
  std::size_t row_start = 0;  // linear index of (i, i + 1)
  for (const auto idx : index) {
    while (idx >= row_start + (n - 1 - i)) {
      row_start += n - 1 - i;
      ++i;
    }
    mask.pairs.emplace_back(i, i + 1 + (idx - row_start));
  }
  return mask;
}

AdjacencyMatrix apply_mask(const AdjacencyMatrix& g, const HoldoutMask& mask) {
  if (g.size() != mask.n) throw DimensionMismatch(g.size(), mask.n);
  AdjacencyMatrix out = g;
  for (const auto& [i, j] : mask.pairs) out.set_edge(i, j, false);
  return out;
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth) {
  if (scores.size() != truth.size()) throw DimensionMismatch(scores.size(), truth.size());
  RocCurve roc;
  for (const auto t : truth) (t ? roc.positives : roc.negatives)++;
  roc.defined = roc.positives > 0 && roc.negatives > 0;
  if (!roc.defined) {
    roc.auc = kNaN;
    return roc;
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });

  const double pos = static_cast<double>(roc.positives);
  const double neg = static_cast<double>(roc.negatives);
  std::size_t tp = 0;
  std::size_t fp = 0;
  roc.points.emplace_back(0.0, 0.0);
  std::uint64_t twice_area = 0;
  for (std::size_t k = 0; k < order.size();) {
    const std::size_t tp0 = tp;
    const std::size_t fp0 = fp;
    const double level = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == level; ++k) (truth[order[k]] ? tp : fp)++;
    twice_area += static_cast<std::uint64_t>(fp - fp0) * (tp0 + tp);
    roc.points.emplace_back(static_cast<double>(fp) / neg, static_cast<double>(tp) / pos);
  }
  roc.auc = static_cast<double>(twice_area) / (2.0 * pos * neg);
  return roc;
}

void write_roc_csv(std::ostream& out, const RocCurve& roc) {
  const auto old = out.precision(17);
  out << "fpr,tpr\n";
  for (const auto& [x, y] : roc.points) out << x << ',' << y << '\n';
  out.precision(old);
}

nlohmann::json roc_summary_json(const RocCurve& roc) {
  return {
      {"auc", roc.defined ? nlohmann::json(roc.auc) : nlohmann::json(nullptr)},
      {"defined", roc.defined},
      {"positives", roc.positives},
      {"negatives", roc.negatives},
  };
}

LinkPrediction predict_links(const AdjacencyMatrix& target, const AdjacencyMatrix* auxiliary,
                             const HoldoutMask& mask, const PredictionConfig& cfg) {
  if (mask.pairs.empty()) throw std::invalid_argument("predict_links: empty mask");
  if (target.size() != mask.n) throw DimensionMismatch(target.size(), mask.n);

  const AdjacencyMatrix masked_a = apply_mask(target, mask);
  const Matrix p = usvt(masked_a, cfg.usvt).estimate;

  Matrix q;
  CorrMatrix r;
  if (cfg.mode != PredictionMode::Single) {
    if (auxiliary == nullptr) throw std::invalid_argument("predict_links: joint modes need an auxiliary graph");
    if (auxiliary->size() != mask.n) throw DimensionMismatch(auxiliary->size(), mask.n);
    const AdjacencyMatrix masked_b = apply_mask(*auxiliary, mask);
    q = usvt(masked_b, cfg.usvt).estimate;
    const Matrix h = usvt(union_indicator(masked_a, masked_b), cfg.usvt).estimate;
    r = estimate_R(ProbMatrix::clamped(p), ProbMatrix::clamped(q), ProbMatrix::clamped(h));
  }

  LinkPrediction out;
  out.scores.reserve(mask.pairs.size());
  out.truth.reserve(mask.pairs.size());
  for (const auto& [i, j] : mask.pairs) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const double pij = p(ii, jj);
    double score = pij;
    if (cfg.mode == PredictionMode::Joint) {
      score = pij + r(i, j) * ((*auxiliary)(i, j) - pij);
    } else if (cfg.mode == PredictionMode::JointExact) {
      const double qij = q(ii, jj);
      if (!degenerate(pij) && !degenerate(qij)) {
        const double ratio = std::sqrt(pij * (1.0 - pij) / (qij * (1.0 - qij)));
        score = pij + r(i, j) * ratio * ((*auxiliary)(i, j) - qij);
      }
    }
    out.scores.push_back(score);
    out.truth.push_back(target(i, j) ? 1 : 0);
  }
  out.roc = roc_curve(out.scores, out.truth);
  return out;
}

void write_scores_csv(std::ostream& out, const HoldoutMask& mask, const LinkPrediction& prediction) {
  const auto old = out.precision(17);
  out << "i,j,score,truth\n";
  for (std::size_t k = 0; k < mask.pairs.size(); ++k) {
    out << mask.pairs[k].first << ',' << mask.pairs[k].second << ',' << prediction.scores[k] << ','
        << static_cast<int>(prediction.truth[k]) << '\n';
  }
  out.precision(old);
}

}  // namespace graphcorr
