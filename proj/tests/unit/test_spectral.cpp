#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "graphcorr/samplers.hpp"
#include "graphcorr/spectral.hpp"
#include "jacobi.hpp"

using namespace graphcorr;

TEST_CASE("lambda1 on known spectra") {
  CHECK(lambda1(Matrix::Identity(5, 5)) == doctest::Approx(1.0));
  CHECK(lambda1(AdjacencyMatrix::complete(7).to_dense()) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(lambda1(AdjacencyMatrix::complete(300).to_dense()) == doctest::Approx(299.0).epsilon(1e-12));
  CHECK(lambda1(Matrix::Zero(100, 100)) == 0.0);
}

TEST_CASE("lambda1 matches the Jacobi oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix m = oracle::random_symmetric(8, seed);
    const auto e = oracle::jacobi_eigen(m);
    CHECK(std::abs(lambda1(m) - e.values.back()) <= 1e-8 * std::abs(e.values.back()));
  }
}

TEST_CASE("Krylov and dense paths agree on large random graphs") {
  const auto g = sample_graph(ProbMatrix::constant(400, 0.1), 3);
  const Matrix m = g.to_dense();
  for (auto order : {EigenOrder::Magnitude, EigenOrder::Algebraic}) {
    const auto dense = top_eigenpairs(m, 5, order, EigenMethod::Dense);
    const auto krylov = top_eigenpairs(m, 5, order, EigenMethod::Krylov);
    for (Eigen::Index c = 0; c < 5; ++c) {
      CHECK(krylov.values(c) == doctest::Approx(dense.values(c)).epsilon(1e-9));
      const double align = std::abs(krylov.vectors.col(c).dot(dense.vectors.col(c)));
      CHECK(align == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK((krylov.vectors.transpose() * krylov.vectors - Matrix::Identity(5, 5)).norm() < 1e-10);
  }
}

TEST_CASE("Krylov handles repeated eigenvalues and tiny invariant subspaces") {
  Matrix blocks = Matrix::Zero(200, 200);
  for (int b = 0; b < 4; ++b) blocks.block(b * 50, b * 50, 50, 50).setOnes();
  const auto pairs = top_eigenpairs(blocks, 4, EigenOrder::Magnitude, EigenMethod::Krylov);
  for (Eigen::Index c = 0; c < 4; ++c) CHECK(pairs.values(c) == doctest::Approx(50.0));
  const auto six = top_eigenpairs(blocks, 6, EigenOrder::Magnitude, EigenMethod::Krylov);
  CHECK(six.values(4) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("inertia count equals a direct eigenvalue count") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix m = oracle::random_symmetric(40, seed);
    const auto e = oracle::jacobi_eigen(m);
    for (double thr : {0.5, 2.0, 5.0, 9.0}) {
      std::size_t expected = 0;
      for (double v : e.values) expected += std::abs(v) >= thr;
      CHECK(count_large_eigenvalues(m, thr) == expected);
    }
  }
  CHECK(count_large_eigenvalues(Matrix::Identity(4, 4), 1.0) == 4);
}

TEST_CASE("truncation of exact low-rank inputs") {
  Vector v = Vector::LinSpaced(30, 0.1, 1.0);
  const Matrix m = v * v.transpose();
  CHECK((m - top_singular_truncation(m, 1)).norm() < 1e-8);
  const Matrix r = oracle::random_symmetric(6, 9);
  CHECK((r - top_singular_truncation(r, 6)).norm() < 1e-8);
  CHECK_THROWS_AS(top_singular_truncation(r, 0), std::out_of_range);
  CHECK_THROWS_AS(top_singular_truncation(r, 7), std::out_of_range);
}

TEST_CASE("truncation residual of p(J - I) matches the oracle") {
  const Matrix m = 0.5 * AdjacencyMatrix::complete(100).to_dense();
  const Matrix approx = top_singular_truncation(m, 1);
  const Matrix reference = oracle::truncate(m, 1);
  CHECK(std::abs((m - approx).norm() - (m - reference).norm()) < 1e-6);
  CHECK((approx - approx.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncation optimality and monotone residuals on small matrices") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const Matrix m = oracle::random_symmetric(n, seed);
    const auto e = oracle::jacobi_eigen(m);
    std::vector<double> sq;
    for (double v : e.values) sq.push_back(v * v);
    std::sort(sq.begin(), sq.end());
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= n; ++k) {
      double discarded = 0.0;
      for (std::size_t i = 0; i + k < n; ++i) discarded += sq[i];
      const double residual = (m - top_singular_truncation(m, k)).squaredNorm();
      CHECK(residual == doctest::Approx(discarded).epsilon(1e-8).scale(1.0));
      CHECK(residual <= previous + 1e-12);
      previous = residual;
    }
  }
}

TEST_CASE("usvt recovers an exact rank-2 probability matrix") {
  const Eigen::Index n = 400;
  Matrix x(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 0.45 + 0.4 * static_cast<double>(i % 7) / 6.0;
    x(i, 1) = i % 2 == 0 ? 0.45 : -0.45;
  }
  const Matrix exact = x * x.transpose();
  REQUIRE(exact.minCoeff() >= 0.0);
  const auto fit = usvt(exact, UsvtConfig::threshold());
  CHECK(fit.rank == 2);
  CHECK((fit.estimate - exact).norm() < 1e-6);
}

TEST_CASE("usvt on a dense Erdos-Renyi graph keeps one component") {
  const auto g = sample_graph(ProbMatrix::constant(1000, 0.5), 21);
  const auto fit = usvt(g, UsvtConfig::threshold());
  CHECK(fit.rank == 1);
  CHECK_FALSE(fit.rank_zero);
  const Matrix err = fit.estimate.array() - 0.5;
  CHECK(std::abs(fit.estimate.mean() - 0.5) < 0.01);
  CHECK(std::sqrt(err.squaredNorm() / static_cast<double>(err.size())) < 0.05);
  CHECK((err.array().abs() <= 0.05).cast<double>().mean() > 0.95);
}

TEST_CASE("usvt edge cases") {
  const AdjacencyMatrix empty(20);
  const auto fit = usvt(empty, UsvtConfig::threshold());
  CHECK(fit.rank_zero);
  CHECK(fit.estimate.norm() == 0.0);
  CHECK_THROWS(usvt(empty, UsvtConfig::fixed_rank(0)));
  CHECK_THROWS(usvt(empty, UsvtConfig::fixed_rank(21)));
  CHECK_THROWS(usvt(empty, UsvtConfig::threshold(0.0)));

  const Matrix m = oracle::random_symmetric(30, 3) * 3.0;
  const auto clipped = usvt(m, UsvtConfig::fixed_rank(4));
  CHECK(clipped.estimate.minCoeff() >= 0.0);
  CHECK(clipped.estimate.maxCoeff() <= 1.0);
  const auto raw = usvt(m, UsvtConfig::fixed_rank(4, false));
  CHECK((raw.estimate - oracle::truncate(m, 4)).norm() < 1e-8);
}

TEST_CASE("threshold usvt agrees between the dense and Krylov routes") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GraphonSpec spec;
    spec.n = 150 + 60 * seed;
    const auto g = sample_graphon_pair(spec, seed).pair.a;
    for (double c0 : {4.01, 2.0, 1.0}) {
      auto cfg = UsvtConfig::threshold(c0);
      cfg.method = EigenMethod::Dense;
      const auto dense = usvt(g, cfg);
      cfg.method = EigenMethod::Krylov;
      const auto krylov = usvt(g, cfg);
      CHECK(dense.rank == krylov.rank);
      CHECK(dense.rank == count_large_eigenvalues(g.to_dense(), dense.cutoff));
      CHECK((dense.estimate - krylov.estimate).norm() < 1e-6);
    }
  }
}
