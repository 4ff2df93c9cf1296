#include "graphcorr/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphcorr/rng.hpp"

namespace graphcorr {

namespace {

constexpr std::size_t kOversample = 6;
constexpr double kResidualTol = 1e-9;
constexpr std::size_t kDenseCutoff = 256;
constexpr std::size_t kSmall = 64;

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expected a square matrix");
}

// Indices of `values` sorted by the requested order, best first. Ties keep
// the original (ascending) index order so results are reproducible.
std::vector<Eigen::Index> ranked(const Vector& values, EigenOrder order) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index x, Eigen::Index y) {
    return order == EigenOrder::Magnitude ? std::abs(values(x)) > std::abs(values(y))
                                          : values(x) > values(y);
  });
  return idx;
}

EigenPairs select(const Vector& values, const Matrix& vectors, std::size_t k, EigenOrder order) {
  const auto idx = ranked(values, order);
  EigenPairs out;
  out.values.resize(static_cast<Eigen::Index>(k));
  out.vectors.resize(vectors.rows(), static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c) {
    const auto src = idx[c];
    out.values(static_cast<Eigen::Index>(c)) = values(src);
    out.vectors.col(static_cast<Eigen::Index>(c)) = vectors.col(src);
  }
  return out;
}

EigenPairs dense_top(const Matrix& m, std::size_t k, EigenOrder order) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  return select(solver.eigenvalues(), solver.eigenvectors(), k, order);
}

// Block Krylov (block Lanczos without the three-term shortcut): every new
// block is orthogonalized against the whole basis twice, and Ritz pairs come
// from the projected matrix T = Q^T M Q. Starting with k + oversample random
// vectors lets eigenvalues of multiplicity up to that block size split.
// With a threshold the run may stop early, after at least three blocks, once
// the pairs at or above it have converged and the next Ritz value, widened by
// its residual, sits below it. Only the pairs above the threshold are returned.
std::optional<EigenPairs> krylov_top(const Matrix& m, std::size_t k, EigenOrder order,
                                     std::optional<double> threshold = std::nullopt) {
  const auto n = m.rows();
  const auto block = static_cast<Eigen::Index>(std::min<std::size_t>(
      static_cast<std::size_t>(n), k + kOversample));
  const Eigen::Index max_dim = std::max<Eigen::Index>(2 * block, n / 2);

  Matrix basis(n, max_dim);
  Matrix image(n, max_dim);  // m * basis
  Matrix projected = Matrix::Zero(max_dim, max_dim);
  Eigen::Index cols = 0;

  Rng rng = make_rng(0x6b72796c6f76ULL ^ static_cast<std::uint64_t>(n));
  std::normal_distribution<double> normal;
  Matrix next(n, block);
  for (Eigen::Index i = 0; i < next.size(); ++i) next.data()[i] = normal(rng);

  const double scale_hint = std::max(m.cwiseAbs().maxCoeff(), 1e-300);

  while (true) {
    if (cols > 0) {
      for (int pass = 0; pass < 2; ++pass) {
        next -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * next);
      }
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(next);
    qr.setThreshold(1e-10);
    const Eigen::Index added = std::min<Eigen::Index>(qr.rank(), max_dim - cols);
    const bool invariant = qr.rank() == 0;
    if (!invariant) {
      Matrix q = qr.householderQ() * Matrix::Identity(n, next.cols());
      Matrix fresh = q.leftCols(added);
      if (cols > 0) {
        fresh -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * fresh);
        Eigen::HouseholderQR<Matrix> again(fresh);
        fresh = again.householderQ() * Matrix::Identity(n, added);
      }
      basis.middleCols(cols, added) = fresh;
      image.middleCols(cols, added).noalias() = m * fresh;
      const Eigen::Index total = cols + added;
      projected.block(0, cols, total, added).noalias() =
          basis.leftCols(total).transpose() * image.middleCols(cols, added);
      projected.block(cols, 0, added, cols) = projected.block(0, cols, cols, added).transpose();
      cols = total;
    }

    if (static_cast<std::size_t>(cols) >= k) {
      Matrix t = projected.topLeftCorner(cols, cols);
      t = 0.5 * (t + t.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> ritz(t);
      const auto idx = ranked(ritz.eigenvalues(), order);
      const double scale = std::max(ritz.eigenvalues().cwiseAbs().maxCoeff(), scale_hint);
      Matrix y(cols, static_cast<Eigen::Index>(k));
      Vector theta(static_cast<Eigen::Index>(k));
      for (std::size_t c = 0; c < k; ++c) {
        y.col(static_cast<Eigen::Index>(c)) = ritz.eigenvectors().col(idx[c]);
        theta(static_cast<Eigen::Index>(c)) = ritz.eigenvalues()(idx[c]);
      }
      Matrix vectors = basis.leftCols(cols) * y;
      const Matrix residual = image.leftCols(cols) * y - vectors * theta.asDiagonal();
      const Vector norms = residual.colwise().norm();
      if (invariant || norms.maxCoeff() <= kResidualTol * scale) {
        return EigenPairs{std::move(theta), std::move(vectors)};
      }
      if (threshold) {
        const auto above = static_cast<Eigen::Index>((theta.array().abs() >= *threshold).count());
        if (cols >= 3 * block && above < theta.size() && std::abs(theta(above)) + norms(above) < *threshold &&
            (above == 0 || norms.head(above).maxCoeff() <= kResidualTol * scale)) {
          return EigenPairs{theta.head(above), vectors.leftCols(above)};
        }
      }
    } else if (invariant) {
      return std::nullopt;  // invariant subspace smaller than k: let the dense path answer
    }

    if (cols + block > max_dim) return std::nullopt;
    next = image.middleCols(cols - added, added);
    if (next.cols() < block) {
      Matrix padded(n, block);
      padded.leftCols(next.cols()) = next;
      for (Eigen::Index c = next.cols(); c < block; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) padded(i, c) = normal(rng);
      }
      next = std::move(padded);
    }
  }
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

Inertia inertia(Matrix a) {
  const auto n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw std::runtime_error("dsytrf: illegal argument " + std::to_string(-info));
  Inertia out;
  auto count = [&](double d) {
    if (d > 0.0) ++out.positive;
    else if (d < 0.0) ++out.negative;
    else ++out.zero;
  };
  for (lapack_int k = 0; k < n;) {
    if (ipiv[static_cast<std::size_t>(k)] > 0) {
      count(a(k, k));
      k += 1;
    } else {
      const double x = a(k, k);
      const double y = a(k + 1, k);
      const double z = a(k + 1, k + 1);
      const double det = x * z - y * y;
      if (det < 0.0) {
        ++out.positive;
        ++out.negative;
      } else {
        count(x + z);
        count(x + z);
      }
      k += 2;
    }
  }
  return out;
}

EigenMethod resolve(EigenMethod method, std::size_t n, std::size_t k) {
  if (method != EigenMethod::Auto) return method;
  return (n <= kDenseCutoff || 4 * (k + kOversample) > n) ? EigenMethod::Dense : EigenMethod::Krylov;
}

EigenPairs leading(EigenPairs pairs, std::size_t count) {
  const auto c = static_cast<Eigen::Index>(count);
  return {pairs.values.head(c), pairs.vectors.leftCols(c)};
}

std::size_t count_at_least(const Vector& values, double threshold) {
  return static_cast<std::size_t>((values.array().abs() >= threshold).count());
}

// Every eigenpair with |lambda| >= threshold. The Krylov route doubles the
// number of requested pairs until one falls below the threshold.
EigenPairs pairs_above(const Matrix& m, double threshold, EigenMethod method) {
  const auto n = static_cast<std::size_t>(m.rows());
  const bool krylov = method == EigenMethod::Krylov || (method == EigenMethod::Auto && n > kSmall);
  std::size_t k = std::min<std::size_t>(n, 4);
  while (krylov && 4 * (k + kOversample) <= n) {
    auto pairs = krylov_top(m, k, EigenOrder::Magnitude, threshold);
    if (!pairs) break;
    const auto count = count_at_least(pairs->values, threshold);
    if (count < k) return leading(std::move(*pairs), count);
    k *= 2;
  }
  auto all = dense_top(m, n, EigenOrder::Magnitude);
  const auto count = count_at_least(all.values, threshold);
  return leading(std::move(all), count);
}

}  // namespace

EigenPairs top_eigenpairs(const Matrix& m, std::size_t k, EigenOrder order, EigenMethod method) {
  require_square(m);
  const auto n = static_cast<std::size_t>(m.rows());
  if (k > n) throw std::out_of_range("top_eigenpairs: k exceeds matrix size");
  if (k == 0) return {Vector(0), Matrix(m.rows(), 0)};
  method = resolve(method, n, k);
  if (method == EigenMethod::Krylov && k + kOversample < n) {
    if (auto pairs = krylov_top(m, k, order)) return std::move(*pairs);
  }
  return dense_top(m, k, order);
}

std::size_t count_large_eigenvalues(const Matrix& m, double threshold) {
  require_square(m);
  const auto n = static_cast<std::size_t>(m.rows());
  if (!(threshold > 0.0)) return n;
  Matrix shifted = m;
  shifted.diagonal().array() -= threshold;
  const std::size_t at_or_above = n - inertia(std::move(shifted)).negative;
  shifted = m;
  shifted.diagonal().array() += threshold;
  const std::size_t at_or_below = n - inertia(std::move(shifted)).positive;
  return at_or_above + at_or_below;
}

Matrix top_singular_truncation(const Matrix& m, std::size_t k, EigenMethod method) {
  require_square(m);
  const auto n = static_cast<std::size_t>(m.rows());
  if (k < 1 || k > n) throw std::out_of_range("top_singular_truncation: need 1 <= k <= n");
  const auto pairs = top_eigenpairs(m, k, EigenOrder::Magnitude, method);
  Matrix out = pairs.vectors * pairs.values.asDiagonal() * pairs.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

double lambda1(const Matrix& m) {
  require_square(m);
  if (m.rows() == 0) throw std::invalid_argument("lambda1: empty matrix");
  return top_eigenpairs(m, 1, EigenOrder::Algebraic).values(0);
}

UsvtConfig UsvtConfig::fixed_rank(std::size_t k, bool clip) {
  UsvtConfig cfg;
  cfg.mode = Mode::FixedRank;
  cfg.rank = k;
  cfg.clip = clip;
  return cfg;
}

UsvtConfig UsvtConfig::threshold(double c0, bool clip) {
  UsvtConfig cfg;
  cfg.mode = Mode::Threshold;
  cfg.c0 = c0;
  cfg.clip = clip;
  return cfg;
}

UsvtResult usvt(const Matrix& m, const UsvtConfig& cfg) {
  require_square(m);
  const auto n = static_cast<std::size_t>(m.rows());
  UsvtResult result;
  result.estimate = Matrix::Zero(m.rows(), m.cols());

  EigenPairs pairs;
  if (cfg.mode == UsvtConfig::Mode::FixedRank) {
    if (cfg.rank < 1 || cfg.rank > n) throw std::out_of_range("usvt: fixed rank must satisfy 1 <= k <= n");
    pairs = top_eigenpairs(m, cfg.rank, EigenOrder::Magnitude, cfg.method);
  } else {
    if (!(cfg.c0 > 0.0)) throw std::invalid_argument("usvt: c0 must be positive");
    const double mean_degree = n > 1 ? m.sum() / static_cast<double>(n - 1) : 0.0;
    if (mean_degree > 0.0) {
      result.cutoff = cfg.c0 * std::sqrt(mean_degree);
      pairs = pairs_above(m, result.cutoff, cfg.method);
    }
  }
  const auto rank = static_cast<std::size_t>(pairs.values.size());
  if (rank == 0) {
    result.rank_zero = true;
    return result;
  }

  Matrix estimate = pairs.vectors * pairs.values.asDiagonal() * pairs.vectors.transpose();
  estimate = 0.5 * (estimate + estimate.transpose()).eval();
  if (cfg.clip) estimate = estimate.cwiseMax(0.0).cwiseMin(1.0);
  result.estimate = std::move(estimate);
  result.rank = rank;
  return result;
}

UsvtResult usvt(const AdjacencyMatrix& g, const UsvtConfig& cfg) { return usvt(g.to_dense(), cfg); }

}  // namespace graphcorr
