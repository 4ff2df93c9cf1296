#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graphcorr/matrix.hpp"

namespace graphcorr {

/// A correlation that no joint Bernoulli law with the given marginals can carry.
class InvalidCorrelation : public std::invalid_argument {
 public:
  InvalidCorrelation(double p, double q, double r);
  InvalidCorrelation(std::size_t i, std::size_t j, double p, double q, double r);
};

/// Law of (A_ij, B_ij) for one vertex pair.
struct JointEdgeDistribution {
  double p11 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p00 = 0.0;

  double marginal_a() const noexcept { return p11 + p10; }
  double marginal_b() const noexcept { return p11 + p01; }
  /// Pearson correlation of the two indicators; 0 when either is constant.
  double correlation() const noexcept;
};

/// Joint pmf with marginals (p, q) and correlation r. The shared term is
/// r * sqrt(p(1-p)q(1-q)); when p or q is 0 or 1 only r == 0 is accepted.
/// Throws InvalidCorrelation if any outcome leaves [0, 1] by more than 1e-12.
JointEdgeDistribution joint_pmf(double p, double q, double r);
std::optional<JointEdgeDistribution> try_joint_pmf(double p, double q, double r) noexcept;

struct CorrelationBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Closed interval of correlations admissible for marginals (p, q). Either
/// marginal at 0 or 1 gives {0}.
CorrelationBounds correlation_bounds(double p, double q);

/// Draws the upper-triangular pairs independently from joint_pmf(P_ij, Q_ij, R_ij)
/// and mirrors them. Validates every pair before drawing anything.
GraphPair sample_pair(const ProbMatrix& p, const ProbMatrix& q, const CorrMatrix& r,
                      std::uint64_t seed);
/// Same-marginal model, Q = P.
GraphPair sample_pair(const ProbMatrix& p, const CorrMatrix& r, std::uint64_t seed);

/// Independent inhomogeneous Erdos-Renyi graph with edge probabilities `p`.
AdjacencyMatrix sample_graph(const ProbMatrix& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Correlated stochastic blockmodel

struct SbmSpec {
  std::size_t n = 0;
  std::size_t blocks = 1;
  Matrix theta_p;  // blocks x blocks, entries in [0, 1]
  Matrix theta_q;  // blocks x blocks, entries in [0, 1]
  Matrix theta_r;  // blocks x blocks, entries in [-1, 1]
  double rho = 1.0;
  /// 0-based block of each vertex. When absent every vertex joins block k with
  /// probability 1/blocks, drawn from the sampling seed.
  std::optional<std::vector<std::size_t>> membership;

  /// theta_p(k,l) = 0.45 - |k-l|/(2K), theta_q(k,l) = 0.4 - |k-l|/(2K+2),
  /// theta_r(k,l) = r (1 - |k-l|/K), random uniform membership.
  static SbmSpec banded(std::size_t n, std::size_t blocks, double r);

  /// Throws std::invalid_argument on shape or range violations.
  void validate() const;
};

struct SbmModel {
  ProbMatrix p;
  ProbMatrix q;
  CorrMatrix r;
  std::vector<std::size_t> labels;
};

struct SbmDraw {
  GraphPair pair;
  std::vector<std::size_t> labels;
};

/// P = rho Z Theta_P Z^T, Q = rho Z Theta_Q Z^T, R = Z Theta_R Z^T (hollow).
SbmModel expand_sbm(const SbmSpec& spec, std::uint64_t seed);
SbmDraw sample_sbm_pair(const SbmSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Latent position (graphon) pairs

enum class LinkKind { Cosine, Gaussian, Table };

/// h(x, y) scaled by `scale`:
///   Cosine    |x.y| / (|x||y|)
///   Gaussian  exp(-|x - y|^2)
///   Table     table(i, j), an explicit n x n matrix
struct LinkFunction {
  LinkKind kind = LinkKind::Cosine;
  double scale = 0.5;
  Matrix table;
};

struct CorrelationFunction {
  enum class Kind { Constant, Table };
  Kind kind = Kind::Constant;
  double value = 0.0;
  Matrix table;
};

struct GraphonSpec {
  std::size_t n = 0;
  std::size_t latent_dim = 2;
  LinkFunction link;
  /// Link for the second graph; absent means both graphs share P.
  std::optional<LinkFunction> second_link;
  /// When true the second link is evaluated on fresh latent positions.
  bool independent_second_latent = true;
  CorrelationFunction correlation;
  double rho = 1.0;    // sparsity factor applied to P (and Q)
  double gamma = 1.0;  // scale applied to the correlation function
  /// Clamp each R_ij into correlation_bounds(P_ij, Q_ij) instead of failing.
  bool clamp_correlation = false;
};

struct GraphonModel {
  ProbMatrix p;
  ProbMatrix q;
  CorrMatrix r;
};

struct GraphonDraw {
  GraphPair pair;
  GraphonModel model;
};

/// Latent positions are iid standard normal in R^latent_dim, drawn from `seed`.
GraphonModel build_graphon_model(const GraphonSpec& spec, std::uint64_t seed);
GraphonDraw sample_graphon_pair(const GraphonSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Planted clique and special correlation structures

struct PlantedClique {
  AdjacencyMatrix graph;
  std::vector<std::size_t> clique;  // sorted
};

/// ER(n, p) with a uniformly chosen s0-subset made complete.
PlantedClique sample_planted_clique(std::size_t n, double p, std::size_t s0, std::uint64_t seed);

/// Where S_ij = 0 the pair gets A_ij = B_ij ~ Bernoulli(1/2); where S_ij = 1 it
/// gets (1,0) or (0,1) with equal probability. Both marginals are ER(1/2).
GraphPair planted_clique_to_pair(const AdjacencyMatrix& s, std::uint64_t seed);

/// abs_diff(A, B): recovers the clique instance from a pair.
AdjacencyMatrix pair_to_clique_instance(const GraphPair& pair);

/// R_ij = -1 for distinct i, j both in `clique`, 0 otherwise.
CorrMatrix planted_clique_correlation(std::size_t n, const std::vector<std::size_t>& clique);

/// Symmetric hollow R with iid entries +eps / -eps (probability 1/2 each).
CorrMatrix rademacher_R(std::size_t n, double eps, std::uint64_t seed);

/// Balanced two-group structure: random sigma in {-1, +1}^n with floor(n/2)
/// positive entries; R_ij = r when sigma_i == sigma_j, else 0.
CorrMatrix two_group_correlation(std::size_t n, double r, std::uint64_t seed);

}  // namespace graphcorr
