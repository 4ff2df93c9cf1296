#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphcorr/matrix.hpp"

namespace graphcorr {

struct KMeansResult {
  std::vector<std::size_t> labels;  // canonical: clusters numbered by first appearance
  Matrix centers;                   // k x d, rows in canonical label order
  double inertia = 0.0;
  std::size_t restart = 0;          // restart that produced the answer
};

/// k-means++ seeding followed by Lloyd iterations, repeated `restarts` times
/// with seeds derived from `seed`. Rows of `points` are observations. The
/// lowest inertia wins; ties go to the earliest restart.
KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 20, std::size_t max_iter = 300);

/// Embeds vertices with the top-k eigenvectors (by |lambda|) of `c`, each
/// scaled by sqrt(|lambda|), then clusters the rows with kmeans.
/// Labels are 0-based. Throws std::invalid_argument if k == 0 or k > n.
std::vector<std::size_t> spectral_cluster(const AdjacencyMatrix& c, std::size_t k, std::uint64_t seed,
                                          std::size_t restarts = 20);

/// Renumbers labels by first appearance.
std::vector<std::size_t> canonical_labels(const std::vector<std::size_t>& labels);

}  // namespace graphcorr
