#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcorr/matrix.hpp"
#include "graphcorr/spectral.hpp"

namespace graphcorr {

enum class TestMethod { GraphonSame, GraphonDiff, SbmChi2, Lambda1 };

std::string_view to_string(TestMethod method) noexcept;
/// Inverse of to_string; throws std::invalid_argument on unknown names.
TestMethod test_method_from_string(std::string_view name);

struct TestReport {
  double statistic = 0.0;
  std::optional<double> p_value;
  bool reject = false;
  double alpha = 0.05;
  TestMethod method = TestMethod::GraphonSame;
  std::size_t m = 0;  // bootstrap replicates; 0 for asymptotic calibration
  std::uint64_t seed = 0;
  std::optional<double> critical_value;
  std::vector<std::string> warnings;
  std::vector<double> null_statistics;  // bootstrap values, replicate order
};

// ---------------------------------------------------------------------------
// Graphon statistics

/// Estimates behind one graphon statistic.
struct GraphonFit {
  double statistic = 0.0;
  Matrix p_hat;  // same-marginal test: average of the two USVT estimates
  Matrix q_hat;  // different-marginal test only
  Matrix h_hat;  // USVT of the union indicator
  std::vector<std::string> warnings;
};

/// T = ||H - 2P + P o P||_F with P = (usvt(A) + usvt(B)) / 2, H = usvt(A or B).
GraphonFit graphon_fit_same(const GraphPair& pair, const UsvtConfig& cfg);
/// T = ||H - P - Q + P o Q||_F with P = usvt(A), Q = usvt(B), H = usvt(A or B).
GraphonFit graphon_fit_diff(const GraphPair& pair, const UsvtConfig& cfg);

double graphon_stat_same(const GraphPair& pair, const UsvtConfig& cfg);
double graphon_stat_diff(const GraphPair& pair, const UsvtConfig& cfg);

/// t / (delta^alpha_exp * sqrt(log n)), or t / delta^alpha_exp when
/// log_factor is false. delta is the mean of the two maximum degrees.
/// Throws std::domain_error when delta == 0.
double normalized_stat(double t, const GraphPair& pair, double alpha_exp, bool log_factor = true);
double normalized_stat(double t, double n, double delta, double alpha_exp, bool log_factor = true);

// ---------------------------------------------------------------------------
// Bootstrap calibration

struct BootstrapOptions {
  std::size_t m = 99;
  double alpha = 0.05;
  std::uint64_t seed = 0;  // replicate s (1..m) is drawn with seed + s
  std::size_t threads = 1;
};

/// (t - 0.5) / m where t = min(#{s : T_s >= T} + 1, m).
double bootstrap_p_value(double statistic, const std::vector<double>& null_statistics);
/// The ceil((1 - alpha) m)-th smallest null statistic.
double bootstrap_critical_value(const std::vector<double>& null_statistics, double alpha);

/// Same-marginal test. Null pairs are independent draws with both marginals
/// equal to the averaged estimate P. Rejects iff T exceeds the critical value.
TestReport bootstrap_test_same(const GraphPair& pair, const UsvtConfig& cfg, const BootstrapOptions& opts);
/// Different-marginal test. Null pairs are independent draws from (P, Q).
/// Rejects iff the p-value is below alpha.
TestReport bootstrap_test_diff(const GraphPair& pair, const UsvtConfig& cfg, const BootstrapOptions& opts);

// ---------------------------------------------------------------------------
// Stochastic blockmodel test

struct BlockCorrelations {
  Matrix rho;     // K x K symmetric Pearson correlations
  Matrix counts;  // K x K pair counts: C(n_k, 2) on the diagonal, n_k n_l off it
  std::vector<std::pair<std::size_t, std::size_t>> degenerate;  // (k, l), k <= l, zero variance
};

/// Labels are 0-based and must be < K. Empty blocks get count 0.
BlockCorrelations block_correlations(const GraphPair& pair, const std::vector<std::size_t>& labels,
                                     std::size_t blocks);

/// sum over k <= l of counts(k, l) * rho(k, l)^2
double sbm_chi2_statistic(const BlockCorrelations& bc);

struct SbmTestOptions {
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
};

/// Clusters the union graph into K blocks and refers the statistic to a
/// chi-square with K(K+1)/2 degrees of freedom.
TestReport sbm_chi2_test(const GraphPair& pair, std::size_t blocks, const SbmTestOptions& opts);
/// Same test with known labels.
TestReport sbm_chi2_test(const GraphPair& pair, const std::vector<std::size_t>& labels,
                         std::size_t blocks, double alpha);

// ---------------------------------------------------------------------------
// Largest-eigenvalue test

/// lambda_1(A o B) - n p^2 with p = sum_{i<j}(a_ij + b_ij) / (n(n - 1)).
double lambda1_centered(const GraphPair& pair);
/// |lambda1_centered(pair)|
double lambda1_stat(const GraphPair& pair);

struct Lambda1Options {
  /// Fixed critical value. When absent the test is calibrated by parametric
  /// bootstrap from two independent ER(p) graphs.
  std::optional<double> threshold;
  BootstrapOptions bootstrap;
};

TestReport lambda1_test(const GraphPair& pair, const Lambda1Options& opts);

// ---------------------------------------------------------------------------
// Second moment of the likelihood ratio

struct SecondMoment {
  double log_value = 0.0;       // sum_{i<j} log(1 + R_ij^2)
  std::optional<double> value;  // prod_{i<j} (1 + R_ij^2) when it fits in a double
};

SecondMoment second_moment(const CorrMatrix& r);

}  // namespace graphcorr
