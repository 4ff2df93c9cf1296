#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "brute.hpp"
#include "graphcorr/estimate.hpp"
#include "graphcorr/samplers.hpp"

using namespace graphcorr;

namespace {

// Union mean implied by marginals (p, q) and correlation r.
double union_mean(double p, double q, double r) {
  return p + q - p * q - r * std::sqrt(p * (1 - p) * q * (1 - q));
}

}  // namespace

TEST_CASE("estimated correlation at fixed points") {
  const auto p = ProbMatrix::constant(4, 0.3);
  const auto q = ProbMatrix::constant(4, 0.6);
  CHECK(estimate_R(p, q, ProbMatrix::constant(4, 0.3 + 0.6 - 0.18)).frobenius_norm() < 1e-14);

  const auto half = ProbMatrix::constant(3, 0.5);
  CHECK(estimate_R(half, half, half)(0, 1) == doctest::Approx(1.0));
  CHECK(estimate_R(p, q, ProbMatrix::constant(4, union_mean(0.3, 0.6, 0.2)))(1, 2) ==
        doctest::Approx(0.2).epsilon(1e-10));
  CHECK(estimate_R(ProbMatrix::constant(3, 1.0), half, half).frobenius_norm() == 0.0);
  CHECK(estimate_R(half, half, ProbMatrix::constant(3, 0.0))(0, 2) == 1.0);
}

TEST_CASE("estimated correlation round trips over a grid") {
  for (double p = 0.05; p < 1.0; p += 0.15) {
    for (double q = 0.05; q < 1.0; q += 0.15) {
      const auto b = correlation_bounds(p, q);
      for (int k = 0; k <= 10; ++k) {
        const double r = b.lo + (b.hi - b.lo) * k / 10.0;
        const auto est = estimate_R(ProbMatrix::constant(2, p), ProbMatrix::constant(2, q),
                                    ProbMatrix::clamped(Matrix::Constant(2, 2, union_mean(p, q, r))));
        CHECK(std::abs(est(0, 1) - r) <= 1e-10);
        CHECK(std::abs(est(0, 1)) <= 1.0);
      }
    }
  }
}

TEST_CASE("block means of estimated correlations") {
  const auto r = CorrMatrix::constant(5, 0.25);
  const std::vector<std::size_t> labels{0, 1, 0, 1, 1};
  const auto table = block_mean_R(r, labels, 2);
  CHECK(table.values(0, 1) == doctest::Approx(0.25));
  CHECK(block_mean_R(r, std::vector<std::size_t>(5, 0), 1).values(0, 0) == doctest::Approx(0.25));

  Matrix hand = Matrix::Zero(5, 5);
  const double vals[5][5] = {{0, .1, .2, .3, .4}, {0, 0, .5, .6, .7}, {0, 0, 0, .8, .9}, {0, 0, 0, 0, -.5}, {}};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) hand(i, j) = hand(j, i) = vals[i][j];
  const auto t = block_mean_R(CorrMatrix(hand), labels, 2);
  CHECK(t.values(0, 0) == doctest::Approx(0.2));
  CHECK(t.values(1, 1) == doctest::Approx((0.6 + 0.7 - 0.5) / 3.0));
  CHECK(t.values(0, 1) == doctest::Approx((0.1 + 0.3 + 0.4 + 0.5 + 0.8 + 0.9) / 6.0));

  const auto absent = block_mean_R(r, std::vector<std::size_t>{0, 0, 0, 0, 2}, 3);
  CHECK_FALSE(absent.present(1, 1));
  CHECK_FALSE(absent.present(0, 1));
  CHECK_FALSE(absent.present(2, 2));
  CHECK(absent.present(0, 2));
  std::ostringstream out;
  write_block_table_csv(out, absent);
  CHECK(out.str().find("NA") != std::string::npos);
}

TEST_CASE("naive block pearson") {
  const auto a = oracle::random_graph(40, 0.5, 3);
  const std::vector<std::size_t> labels(40, 0);
  CHECK(naive_block_pearson({a, a}, labels, 1).values(0, 0) == doctest::Approx(1.0));
  const auto pair = sample_pair(ProbMatrix::constant(300, 0.4), CorrMatrix::zero(300), 3);
  std::vector<std::size_t> two(300);
  for (std::size_t i = 0; i < 300; ++i) two[i] = i % 2;
  const auto t = naive_block_pearson(pair, two, 2);
  CHECK(std::abs(t.values(0, 1)) < 3.0 / std::sqrt(150.0 * 150.0));
  const auto flat = naive_block_pearson({AdjacencyMatrix(4), AdjacencyMatrix::complete(4)}, {0, 0, 1, 1}, 3);
  CHECK_FALSE(flat.present(0, 0));
  CHECK_FALSE(flat.present(2, 2));
}

TEST_CASE("holdout masks") {
  const auto mask = holdout_mask(20, 0.1, 4);
  CHECK(mask.pairs.size() == 19);
  std::set<std::pair<std::size_t, std::size_t>> seen(mask.pairs.begin(), mask.pairs.end());
  CHECK(seen.size() == 19);
  for (const auto& [i, j] : mask.pairs) {
    CHECK(i < j);
    CHECK(j < 20);
  }
  CHECK(holdout_mask(20, 0.1, 4).pairs == mask.pairs);
  CHECK(holdout_mask(10, 1.0 / 45.0, 1).pairs.size() == 1);
  CHECK_THROWS(holdout_mask(10, 0.001, 1));
  CHECK_THROWS(holdout_mask(10, 1.0, 1));
  CHECK_THROWS(holdout_mask(10, 0.0, 1));
}

TEST_CASE("holdout masks cover every pair position") {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::uint64_t s = 0; s < 200; ++s)
    for (const auto& pr : holdout_mask(6, 0.2, s).pairs) seen.insert(pr);
  CHECK(seen.size() == 15);
}

TEST_CASE("apply_mask zeroes exactly the masked pairs") {
  const auto g = AdjacencyMatrix::complete(12);
  const auto mask = holdout_mask(12, 0.25, 9);
  const auto masked = apply_mask(g, mask);
  std::set<std::pair<std::size_t, std::size_t>> m(mask.pairs.begin(), mask.pairs.end());
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j) {
      CHECK(masked(i, j) == (m.count({i, j}) == 0));
      CHECK(masked(j, i) == masked(i, j));
    }
  const auto single = holdout_mask(12, 1.0 / 66.0, 2);
  CHECK(apply_mask(g, single).edge_count() == 65);
}

TEST_CASE("roc and auc") {
  const std::vector<std::uint8_t> truth{1, 0, 1, 1, 0, 0};
  const std::vector<double> perfect{1, 0, 1, 1, 0, 0};
  CHECK(roc_curve(perfect, truth).auc == 1.0);
  CHECK(roc_curve(std::vector<double>(6, 0.3), truth).auc == 0.5);
  const auto undefined = roc_curve({0.1, 0.2}, {1, 1});
  CHECK_FALSE(undefined.defined);
  CHECK(std::isnan(undefined.auc));
  CHECK(roc_summary_json(undefined)["auc"].is_null());

  const auto roc = roc_curve({0.9, 0.1, 0.4, 0.4, 0.7, 0.2}, truth);
  CHECK(roc.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(roc.points.back() == std::pair<double, double>{1.0, 1.0});
  for (std::size_t k = 1; k < roc.points.size(); ++k) {
    CHECK(roc.points[k].first >= roc.points[k - 1].first);
    CHECK(roc.points[k].second >= roc.points[k - 1].second);
  }
  std::ostringstream out;
  write_roc_csv(out, roc);
  CHECK(out.str().rfind("fpr,tpr\n0,0\n", 0) == 0);
}

TEST_CASE("auc equals the Mann-Whitney statistic") {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> level(0, 4);
  std::bernoulli_distribution coin(0.5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep % 19);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = level(gen) / 4.0;
      truth[i] = coin(gen);
    }
    truth[0] = 1;
    truth[1] = 0;
    CHECK(std::abs(roc_curve(scores, truth).auc - oracle::mann_whitney(scores, truth)) <= 1e-12);
  }
}

TEST_CASE("link prediction modes") {
  const auto pair = sample_pair(ProbMatrix::constant(120, 0.3), CorrMatrix::constant(120, 0.6), 5);
  const auto mask = holdout_mask(120, 0.1, 6);
  PredictionConfig cfg;
  const auto single = predict_links(pair.a, nullptr, mask, cfg);
  CHECK(single.scores.size() == mask.pairs.size());
  for (std::size_t k = 0; k < mask.pairs.size(); ++k) {
    CHECK(single.truth[k] == pair.a(mask.pairs[k].first, mask.pairs[k].second));
  }
  cfg.mode = PredictionMode::Joint;
  CHECK_THROWS(predict_links(pair.a, nullptr, mask, cfg));
  const auto joint = predict_links(pair.a, &pair.b, mask, cfg);
  CHECK(joint.roc.defined);
  cfg.mode = PredictionMode::JointExact;
  const auto exact = predict_links(pair.a, &pair.b, mask, cfg);
  CHECK(exact.scores.size() == joint.scores.size());
  std::ostringstream out;
  write_scores_csv(out, mask, joint);
  CHECK(out.str().rfind("i,j,score,truth\n", 0) == 0);
}
