#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace graphcorr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when two operands disagree on vertex count.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

/// Simple undirected graph on vertices 0..n-1: symmetric, binary, zero diagonal.
///
/// Storage is a dense row-major byte buffer; every mutator keeps both
/// triangles in sync so the invariants hold for any sequence of calls.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n);

  /// Validates that `m` is symmetric, hollow and 0/1-valued.
  static AdjacencyMatrix from_dense(const Matrix& m);
  static AdjacencyMatrix complete(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  bool operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j] != 0;
  }
  std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }

  /// Sets or clears edge {i, j}. Throws on i == j or out-of-range indices.
  void set_edge(std::size_t i, std::size_t j, bool present = true);

  std::size_t edge_count() const noexcept;
  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;

  Matrix to_dense() const;
  /// 11^T - I - A, i.e. the complement graph (diagonal stays zero).
  AdjacencyMatrix complement() const;
  /// Relabels vertices: result(perm[i], perm[j]) = this(i, j).
  AdjacencyMatrix permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> entries_;
};

/// Symmetric matrix of edge probabilities in [0, 1].
class ProbMatrix {
 public:
  ProbMatrix() = default;
  /// Throws std::invalid_argument if `values` is not square, symmetric or in [0, 1].
  explicit ProbMatrix(Matrix values);

  static ProbMatrix constant(std::size_t n, double p);
  /// Clamps every entry into [0, 1] and symmetrizes before validating.
  static ProbMatrix clamped(const Matrix& values);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// Symmetric hollow matrix of Pearson edge correlations in [-1, 1].
class CorrMatrix {
 public:
  CorrMatrix() = default;
  explicit CorrMatrix(Matrix values);

  static CorrMatrix zero(std::size_t n);
  /// r on every off-diagonal entry.
  static CorrMatrix constant(std::size_t n, double r);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& values() const noexcept { return values_; }
  double frobenius_norm() const { return values_.norm(); }

 private:
  Matrix values_;
};

/// Two graphs on a shared vertex set.
struct GraphPair {
  AdjacencyMatrix a;
  AdjacencyMatrix b;

  GraphPair() = default;
  GraphPair(AdjacencyMatrix first, AdjacencyMatrix second);

  std::size_t size() const noexcept { return a.size(); }
  friend bool operator==(const GraphPair&, const GraphPair&) = default;
};

/// C_ij = 1 iff A_ij + B_ij > 0.
AdjacencyMatrix union_indicator(const AdjacencyMatrix& a, const AdjacencyMatrix& b);
/// S_ij = A_ij * B_ij.
AdjacencyMatrix hadamard(const AdjacencyMatrix& a, const AdjacencyMatrix& b);
/// S_ij = |A_ij - B_ij|.
AdjacencyMatrix abs_diff(const AdjacencyMatrix& a, const AdjacencyMatrix& b);

/// Full matrix, one row per line, comma separated, 17 significant digits.
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_csv(const std::string& path, const Matrix& m);

}  // namespace graphcorr
