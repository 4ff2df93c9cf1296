#include "graphcorr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace graphcorr {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_square_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol) {
        throw std::invalid_argument(std::string(what) + ": matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

template <typename Op>
AdjacencyMatrix elementwise(const AdjacencyMatrix& a, const AdjacencyMatrix& b, Op op) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  const std::size_t n = a.size();
  AdjacencyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (op(ra[j] != 0, rb[j] != 0)) out.set_edge(i, j);
    }
  }
  return out;
}

}  // namespace

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs)) {}

AdjacencyMatrix::AdjacencyMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

AdjacencyMatrix AdjacencyMatrix::from_dense(const Matrix& m) {
  require_square_symmetric(m, "AdjacencyMatrix");
  const auto n = static_cast<std::size_t>(m.rows());
  AdjacencyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("AdjacencyMatrix: entries must be 0 or 1");
      }
      if (i == j && v != 0.0) {
        throw std::invalid_argument("AdjacencyMatrix: self-loop at vertex " + std::to_string(i));
      }
      if (j > i && v == 1.0) g.set_edge(i, j);
    }
  }
  return g;
}

AdjacencyMatrix AdjacencyMatrix::complete(std::size_t n) {
  AdjacencyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j);
  }
  return g;
}

void AdjacencyMatrix::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i >= n_ || j >= n_) throw std::out_of_range("AdjacencyMatrix: vertex index out of range");
  if (i == j) throw std::invalid_argument("AdjacencyMatrix: self-loop at vertex " + std::to_string(i));
  const std::uint8_t v = present ? 1 : 0;
  entries_[i * n_ + j] = v;
  entries_[j * n_ + i] = v;
}

std::size_t AdjacencyMatrix::edge_count() const noexcept {
  std::size_t total = 0;
  for (auto v : entries_) total += v;
  return total / 2;
}

std::vector<std::size_t> AdjacencyMatrix::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (auto v : row(i)) deg[i] += v;
  }
  return deg;
}

std::size_t AdjacencyMatrix::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Matrix AdjacencyMatrix::to_dense() const {
  Matrix m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entries_[i * n_ + j];
    }
  }
  return m;
}

AdjacencyMatrix AdjacencyMatrix::complement() const {
  AdjacencyMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!(*this)(i, j)) out.set_edge(i, j);
    }
  }
  return out;
}

AdjacencyMatrix AdjacencyMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw DimensionMismatch(n_, perm.size());
  AdjacencyMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j)) out.set_edge(perm[i], perm[j]);
    }
  }
  return out;
}

ProbMatrix::ProbMatrix(Matrix values) : values_(std::move(values)) {
  require_square_symmetric(values_, "ProbMatrix");
  if (values_.size() > 0 && (values_.minCoeff() < 0.0 || values_.maxCoeff() > 1.0)) {
    throw std::invalid_argument("ProbMatrix: entries must lie in [0, 1]");
  }
}

ProbMatrix ProbMatrix::constant(std::size_t n, double p) {
  const auto en = static_cast<Eigen::Index>(n);
  return ProbMatrix(Matrix::Constant(en, en, p));
}

ProbMatrix ProbMatrix::clamped(const Matrix& values) {
  Matrix sym = 0.5 * (values + values.transpose());
  return ProbMatrix(sym.cwiseMax(0.0).cwiseMin(1.0));
}

CorrMatrix::CorrMatrix(Matrix values) : values_(std::move(values)) {
  require_square_symmetric(values_, "CorrMatrix");
  if (values_.size() > 0 && (values_.minCoeff() < -1.0 || values_.maxCoeff() > 1.0)) {
    throw std::invalid_argument("CorrMatrix: entries must lie in [-1, 1]");
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) throw std::invalid_argument("CorrMatrix: diagonal must be zero");
  }
}

CorrMatrix CorrMatrix::zero(std::size_t n) {
  const auto en = static_cast<Eigen::Index>(n);
  return CorrMatrix(Matrix::Zero(en, en));
}

CorrMatrix CorrMatrix::constant(std::size_t n, double r) {
  const auto en = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Constant(en, en, r);
  m.diagonal().setZero();
  return CorrMatrix(std::move(m));
}

GraphPair::GraphPair(AdjacencyMatrix first, AdjacencyMatrix second)
    : a(std::move(first)), b(std::move(second)) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
}

AdjacencyMatrix union_indicator(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  return elementwise(a, b, [](bool x, bool y) { return x || y; });
}

AdjacencyMatrix hadamard(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  return elementwise(a, b, [](bool x, bool y) { return x && y; });
}

AdjacencyMatrix abs_diff(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  return elementwise(a, b, [](bool x, bool y) { return x != y; });
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_matrix_csv(out, m);
}

}  // namespace graphcorr
