#pragma once

#include <cstddef>

#include "graphcorr/matrix.hpp"

namespace graphcorr {

enum class EigenOrder {
  Magnitude,  // largest |lambda| first; for symmetric input these are the singular values
  Algebraic,  // largest lambda first
};

enum class EigenMethod {
  Auto,    // Krylov for small k on large n, dense otherwise
  Dense,   // full symmetric eigendecomposition
  Krylov,  // block Krylov with full reorthogonalization; falls back to Dense if it stalls
};

struct EigenPairs {
  Vector values;   // k values, sorted by the requested order
  Matrix vectors;  // n x k, orthonormal columns matching `values`
};

/// Leading k eigenpairs of the symmetric matrix `m`.
EigenPairs top_eigenpairs(const Matrix& m, std::size_t k, EigenOrder order = EigenOrder::Magnitude,
                          EigenMethod method = EigenMethod::Auto);

/// Exact count of eigenvalues with |lambda| >= threshold, from the Sylvester
/// inertia of m - threshold*I and m + threshold*I (two LDL^T factorizations).
std::size_t count_large_eigenvalues(const Matrix& m, double threshold);

/// Best rank-k approximation of symmetric `m`. Throws std::out_of_range unless 1 <= k <= n.
Matrix top_singular_truncation(const Matrix& m, std::size_t k,
                               EigenMethod method = EigenMethod::Auto);

/// Largest (algebraic) eigenvalue.
double lambda1(const Matrix& m);

struct UsvtConfig {
  enum class Mode { FixedRank, Threshold };

  Mode mode = Mode::Threshold;
  std::size_t rank = 1;  // FixedRank
  double c0 = 4.01;      // Threshold: keep sigma_k >= c0 * sqrt(n rho_hat)
  bool clip = true;      // clamp the estimate into [0, 1]
  EigenMethod method = EigenMethod::Auto;

  static UsvtConfig fixed_rank(std::size_t k, bool clip = true);
  static UsvtConfig threshold(double c0 = 4.01, bool clip = true);
};

struct UsvtResult {
  Matrix estimate;
  std::size_t rank = 0;
  double cutoff = 0.0;     // singular-value cutoff used in threshold mode
  bool rank_zero = false;  // nothing survived the threshold; estimate is all zeros
};

/// Universal singular value thresholding. In threshold mode n*rho is
/// estimated by the mean degree sum(m) / (n - 1).
UsvtResult usvt(const Matrix& m, const UsvtConfig& cfg);
UsvtResult usvt(const AdjacencyMatrix& g, const UsvtConfig& cfg);

}  // namespace graphcorr
