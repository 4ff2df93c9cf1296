#include "graphcorr/cluster.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "graphcorr/rng.hpp"
#include "graphcorr/spectral.hpp"

namespace graphcorr {

namespace {

struct Run {
  std::vector<std::size_t> labels;
  Matrix centers;
  double inertia = 0.0;
};

std::size_t pick_weighted(const Vector& weights, Rng& rng) {
  const double total = weights.sum();
  const auto n = static_cast<std::size_t>(weights.size());
  if (!(total > 0.0)) return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  const double target = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += weights(static_cast<Eigen::Index>(i));
    if (target < acc) return i;
  }
  for (std::size_t i = n; i-- > 0;) {
    if (weights(static_cast<Eigen::Index>(i)) > 0.0) return i;
  }
  return n - 1;
}

Matrix seed_centers(const Matrix& x, std::size_t k, Rng& rng) {
  const auto n = static_cast<std::size_t>(x.rows());
  Matrix centers(static_cast<Eigen::Index>(k), x.cols());
  const auto first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  centers.row(0) = x.row(static_cast<Eigen::Index>(first));
  Vector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (std::size_t c = 1; c < k; ++c) {
    const auto next = pick_weighted(d2, rng);
    centers.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(next));
    d2 = d2.cwiseMin((x.rowwise() - centers.row(static_cast<Eigen::Index>(c))).rowwise().squaredNorm());
  }
  return centers;
}

Run lloyd(const Matrix& x, Matrix centers, std::size_t max_iter) {
  const auto n = x.rows();
  const auto k = centers.rows();
  std::vector<std::size_t> labels(static_cast<std::size_t>(n), 0);
  Vector best_d2(n);
  for (std::size_t iter = 0; iter <= max_iter; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      Eigen::Index arg = 0;
      for (Eigen::Index c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      best_d2(i) = best;
      auto& slot = labels[static_cast<std::size_t>(i)];
      if (iter == 0 || slot != static_cast<std::size_t>(arg)) changed = true;
      slot = static_cast<std::size_t>(arg);
    }
    if (!changed || iter == max_iter) break;

    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto c = labels[static_cast<std::size_t>(i)];
      sums.row(static_cast<Eigen::Index>(c)) += x.row(i);
      ++sizes[c];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
      } else {
        // Empty cluster: move it onto the point farthest from its center.
        Eigen::Index far = 0;
        best_d2.maxCoeff(&far);
        centers.row(c) = x.row(far);
        best_d2(far) = 0.0;
      }
    }
  }
  return Run{std::move(labels), std::move(centers), best_d2.sum()};
}

}  // namespace

std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels) {
  std::unordered_map<std::size_t, std::size_t> remap;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto l : labels) {
    const auto [it, inserted] = remap.try_emplace(l, remap.size());
    out.push_back(it->second);
  }
  return out;
}

KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iter) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k == 0 || k > n) throw std::invalid_argument("kmeans: need 1 <= k <= number of points");
  if (restarts == 0) throw std::invalid_argument("kmeans: need at least one restart");

  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = make_rng(derive_seed(seed, r));
    Run run = lloyd(points, seed_centers(points, k, rng), max_iter);
    if (run.inertia < best.inertia) {
      best.labels = std::move(run.labels);
      best.centers = std::move(run.centers);
      best.inertia = run.inertia;
      best.restart = r;
    }
  }

  // Reorder centers to match canonical labels.
  const auto canon = canonical_labels(best.labels);
  Matrix centers = best.centers;
  for (std::size_t i = 0; i < n; ++i) {
    centers.row(static_cast<Eigen::Index>(canon[i])) = best.centers.row(static_cast<Eigen::Index>(best.labels[i]));
  }
  best.labels = canon;
  best.centers = std::move(centers);
  return best;
}

std::vector<std::size_t> spectral_cluster(const AdjacencyMatrix& c, std::size_t k, std::uint64_t seed,
                                          std::size_t restarts) {
  const auto n = c.size();
  if (k == 0 || k > n) throw std::invalid_argument("spectral_cluster: need 1 <= K <= n");
  if (k == 1) return std::vector<std::size_t>(n, 0);
  const auto pairs = top_eigenpairs(c.to_dense(), k, EigenOrder::Magnitude);
  const Matrix embedding = pairs.vectors * pairs.values.cwiseAbs().cwiseSqrt().asDiagonal();
  return kmeans(embedding, k, seed, restarts).labels;
}

}  // namespace graphcorr
