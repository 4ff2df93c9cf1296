#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "graphcorr/matrix.hpp"

namespace oracle {

// P(random positive outranks random negative), ties count 1/2.
inline double mann_whitney(const std::vector<double>& scores, const std::vector<std::uint8_t>& truth) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!truth[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (truth[j]) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Pearson correlation of two indicators from their joint pmf.
inline double pmf_correlation(double p11, double p10, double p01) {
  const double pa = p11 + p10;
  const double pb = p11 + p01;
  return (p11 - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb));
}

inline graphcorr::AdjacencyMatrix random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::bernoulli_distribution coin(p);
  graphcorr::AdjacencyMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(gen)) g.set_edge(i, j);
  return g;
}

inline Eigen::MatrixXd random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::normal_distribution<double> z;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j) m(i, j) = m(j, i) = z(gen);
  return m;
}

}  // namespace oracle
