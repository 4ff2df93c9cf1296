#include "graphcorr/hyptest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphcorr/cluster.hpp"
#include "graphcorr/rng.hpp"
#include "graphcorr/samplers.hpp"
#include "graphcorr/statdist.hpp"

namespace graphcorr {

namespace {

void note_rank_zero(const UsvtResult& fit, std::string_view which, std::vector<std::string>& warnings) {
  if (fit.rank_zero) warnings.push_back("usvt retained no singular values for " + std::string(which));
}

void check_bootstrap(const BootstrapOptions& opts) {
  if (opts.m < 1) throw std::invalid_argument("bootstrap: m must be at least 1");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw std::invalid_argument("bootstrap: alpha must lie in (0, 1)");
}

ProbMatrix as_probabilities(const Matrix& m, std::vector<std::string>& warnings) {
  if (m.size() > 0 && (m.minCoeff() < 0.0 || m.maxCoeff() > 1.0)) {
    warnings.emplace_back("estimate clamped into [0, 1] for resampling");
  }
  return ProbMatrix::clamped(m);
}

template <typename Stat>
std::vector<double> run_replicates(std::size_t m, std::uint64_t seed, std::size_t threads, Stat&& stat) {
  std::vector<double> out(m);
  parallel_for(m, threads, [&](std::size_t i) { out[i] = stat(seed + i + 1); });
  return out;
}

}  // namespace

std::string_view to_string(TestMethod method) noexcept {
  switch (method) {
    case TestMethod::GraphonSame: return "graphon_same";
    case TestMethod::GraphonDiff: return "graphon_diff";
    case TestMethod::SbmChi2: return "sbm_chi2";
    case TestMethod::Lambda1: return "lambda1";
  }
  return "unknown";
}

TestMethod test_method_from_string(std::string_view name) {
  for (auto m : {TestMethod::GraphonSame, TestMethod::GraphonDiff, TestMethod::SbmChi2, TestMethod::Lambda1}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown test method: " + std::string(name));
}

GraphonFit graphon_fit_same(const GraphPair& pair, const UsvtConfig& cfg) {
  GraphonFit fit;
  const auto pa = usvt(pair.a, cfg);
  const auto pb = usvt(pair.b, cfg);
  const auto h = usvt(union_indicator(pair.a, pair.b), cfg);
  note_rank_zero(pa, "A", fit.warnings);
  note_rank_zero(pb, "B", fit.warnings);
  note_rank_zero(h, "the union graph", fit.warnings);
  fit.p_hat = 0.5 * (pa.estimate + pb.estimate);
  fit.h_hat = h.estimate;
  fit.statistic = (fit.h_hat - 2.0 * fit.p_hat + fit.p_hat.cwiseProduct(fit.p_hat)).norm();
  return fit;
}

GraphonFit graphon_fit_diff(const GraphPair& pair, const UsvtConfig& cfg) {
  GraphonFit fit;
  const auto pa = usvt(pair.a, cfg);
  const auto pb = usvt(pair.b, cfg);
  const auto h = usvt(union_indicator(pair.a, pair.b), cfg);
  note_rank_zero(pa, "A", fit.warnings);
  note_rank_zero(pb, "B", fit.warnings);
  note_rank_zero(h, "the union graph", fit.warnings);
  fit.p_hat = pa.estimate;
  fit.q_hat = pb.estimate;
  fit.h_hat = h.estimate;
  fit.statistic = (fit.h_hat - fit.p_hat - fit.q_hat + fit.p_hat.cwiseProduct(fit.q_hat)).norm();
  return fit;
}

double graphon_stat_same(const GraphPair& pair, const UsvtConfig& cfg) {
  return graphon_fit_same(pair, cfg).statistic;
}

double graphon_stat_diff(const GraphPair& pair, const UsvtConfig& cfg) {
  return graphon_fit_diff(pair, cfg).statistic;
}

double normalized_stat(double t, double n, double delta, double alpha_exp, bool log_factor) {
  if (!(alpha_exp > 0.0 && alpha_exp < 1.0)) throw std::domain_error("normalized_stat: exponent must lie in (0, 1)");
  if (!(delta > 0.0)) throw std::domain_error("normalized_stat: both graphs are empty");
  double divisor = std::pow(delta, alpha_exp);
  if (log_factor) {
    if (!(n > 1.0)) throw std::domain_error("normalized_stat: log factor needs n > 1");
    divisor *= std::sqrt(std::log(n));
  }
  return t / divisor;
}

double normalized_stat(double t, const GraphPair& pair, double alpha_exp, bool log_factor) {
  const double delta = 0.5 * static_cast<double>(pair.a.max_degree() + pair.b.max_degree());
  return normalized_stat(t, static_cast<double>(pair.size()), delta, alpha_exp, log_factor);
}

double bootstrap_p_value(double statistic, const std::vector<double>& null_statistics) {
  const auto m = null_statistics.size();
  if (m == 0) throw std::invalid_argument("bootstrap_p_value: no null statistics");
  const auto at_least = static_cast<std::size_t>(
      std::count_if(null_statistics.begin(), null_statistics.end(), [&](double v) { return v >= statistic; }));
  const auto t = std::min(at_least + 1, m);
  return (static_cast<double>(t) - 0.5) / static_cast<double>(m);
}

double bootstrap_critical_value(const std::vector<double>& null_statistics, double alpha) {
  const auto m = null_statistics.size();
  if (m == 0) throw std::invalid_argument("bootstrap_critical_value: no null statistics");
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(m) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, m);
  std::vector<double> sorted = null_statistics;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  return sorted[rank - 1];
}

TestReport bootstrap_test_same(const GraphPair& pair, const UsvtConfig& cfg, const BootstrapOptions& opts) {
  check_bootstrap(opts);
  TestReport report;
  report.method = TestMethod::GraphonSame;
  report.alpha = opts.alpha;
  report.m = opts.m;
  report.seed = opts.seed;

  auto fit = graphon_fit_same(pair, cfg);
  report.statistic = fit.statistic;
  report.warnings = std::move(fit.warnings);
  const ProbMatrix p = as_probabilities(fit.p_hat, report.warnings);
  const CorrMatrix zero = CorrMatrix::zero(pair.size());

  report.null_statistics = run_replicates(opts.m, opts.seed, opts.threads, [&](std::uint64_t s) {
    return graphon_stat_same(sample_pair(p, zero, s), cfg);
  });
  report.critical_value = bootstrap_critical_value(report.null_statistics, opts.alpha);
  report.p_value = bootstrap_p_value(report.statistic, report.null_statistics);
  report.reject = report.statistic > *report.critical_value;
  return report;
}

TestReport bootstrap_test_diff(const GraphPair& pair, const UsvtConfig& cfg, const BootstrapOptions& opts) {
  check_bootstrap(opts);
  TestReport report;
  report.method = TestMethod::GraphonDiff;
  report.alpha = opts.alpha;
  report.m = opts.m;
  report.seed = opts.seed;

  auto fit = graphon_fit_diff(pair, cfg);
  report.statistic = fit.statistic;
  report.warnings = std::move(fit.warnings);
  const ProbMatrix p = as_probabilities(fit.p_hat, report.warnings);
  const ProbMatrix q = as_probabilities(fit.q_hat, report.warnings);
  const CorrMatrix zero = CorrMatrix::zero(pair.size());

  report.null_statistics = run_replicates(opts.m, opts.seed, opts.threads, [&](std::uint64_t s) {
    return graphon_stat_diff(sample_pair(p, q, zero, s), cfg);
  });
  report.p_value = bootstrap_p_value(report.statistic, report.null_statistics);
  report.reject = *report.p_value < opts.alpha;
  return report;
}

BlockCorrelations block_correlations(const GraphPair& pair, const std::vector<std::size_t>& labels,
                                     std::size_t blocks) {
  const auto n = pair.size();
  if (labels.size() != n) throw DimensionMismatch(labels.size(), n);
  if (blocks == 0) throw std::invalid_argument("block_correlations: need at least one block");
  for (const auto l : labels) {
    if (l >= blocks) throw std::invalid_argument("block_correlations: label out of range");
  }
  const auto kk = static_cast<Eigen::Index>(blocks);
  Matrix count = Matrix::Zero(kk, kk);
  Matrix sa = Matrix::Zero(kk, kk);
  Matrix sb = Matrix::Zero(kk, kk);
  Matrix sab = Matrix::Zero(kk, kk);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ra = pair.a.row(i);
    const auto rb = pair.b.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto k = static_cast<Eigen::Index>(labels[i]);
      auto l = static_cast<Eigen::Index>(labels[j]);
      if (k > l) std::swap(k, l);
      count(k, l) += 1.0;
      sa(k, l) += ra[j];
      sb(k, l) += rb[j];
      sab(k, l) += ra[j] & rb[j];
    }
  }

  BlockCorrelations out;
  out.rho = Matrix::Zero(kk, kk);
  out.counts = Matrix::Zero(kk, kk);
  for (Eigen::Index k = 0; k < kk; ++k) {
    for (Eigen::Index l = k; l < kk; ++l) {
      const double c = count(k, l);
      out.counts(k, l) = out.counts(l, k) = c;
      if (c == 0.0) continue;
      const double ma = sa(k, l) / c;
      const double mb = sb(k, l) / c;
      const double va = ma - ma * ma;
      const double vb = mb - mb * mb;
      if (sa(k, l) == 0.0 || sa(k, l) == c || sb(k, l) == 0.0 || sb(k, l) == c) {
        out.degenerate.emplace_back(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
        continue;
      }
      const double r = (sab(k, l) / c - ma * mb) / std::sqrt(va * vb);
      out.rho(k, l) = out.rho(l, k) = std::clamp(r, -1.0, 1.0);
    }
  }
  return out;
}

double sbm_chi2_statistic(const BlockCorrelations& bc) {
  double t = 0.0;
  for (Eigen::Index k = 0; k < bc.rho.rows(); ++k) {
    for (Eigen::Index l = k; l < bc.rho.cols(); ++l) t += bc.counts(k, l) * bc.rho(k, l) * bc.rho(k, l);
  }
  return t;
}

TestReport sbm_chi2_test(const GraphPair& pair, const std::vector<std::size_t>& labels, std::size_t blocks,
                         double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("sbm_chi2_test: alpha must lie in (0, 1)");
  const auto bc = block_correlations(pair, labels, blocks);
  const double df = static_cast<double>(blocks * (blocks + 1) / 2);
  TestReport report;
  report.method = TestMethod::SbmChi2;
  report.alpha = alpha;
  report.statistic = sbm_chi2_statistic(bc);
  report.p_value = chi2_sf(report.statistic, df);
  report.critical_value = chi2_quantile(1.0 - alpha, df);
  report.reject = report.statistic > *report.critical_value;
  for (const auto& [k, l] : bc.degenerate) {
    report.warnings.push_back("block (" + std::to_string(k) + ", " + std::to_string(l) +
                              ") has zero variance; contributes 0");
  }
  return report;
}

TestReport sbm_chi2_test(const GraphPair& pair, std::size_t blocks, const SbmTestOptions& opts) {
  const auto labels = spectral_cluster(union_indicator(pair.a, pair.b), blocks, opts.seed, opts.restarts);
  auto report = sbm_chi2_test(pair, labels, blocks, opts.alpha);
  report.seed = opts.seed;
  return report;
}

double lambda1_centered(const GraphPair& pair) {
  const auto n = pair.size();
  if (n < 2) throw std::invalid_argument("lambda1 test: need at least two vertices");
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(pair.a.edge_count() + pair.b.edge_count()) / (nd * (nd - 1.0));
  return lambda1(hadamard(pair.a, pair.b).to_dense()) - nd * p * p;
}

double lambda1_stat(const GraphPair& pair) { return std::abs(lambda1_centered(pair)); }

TestReport lambda1_test(const GraphPair& pair, const Lambda1Options& opts) {
  TestReport report;
  report.method = TestMethod::Lambda1;
  report.alpha = opts.bootstrap.alpha;
  report.statistic = lambda1_stat(pair);
  if (opts.threshold) {
    report.critical_value = *opts.threshold;
    report.reject = report.statistic > *opts.threshold;
    return report;
  }
  check_bootstrap(opts.bootstrap);
  report.m = opts.bootstrap.m;
  report.seed = opts.bootstrap.seed;
  const auto n = pair.size();
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(pair.a.edge_count() + pair.b.edge_count()) / (nd * (nd - 1.0));
  const ProbMatrix pm = ProbMatrix::constant(n, p);
  const CorrMatrix zero = CorrMatrix::zero(n);
  report.null_statistics = run_replicates(opts.bootstrap.m, opts.bootstrap.seed, opts.bootstrap.threads,
                                          [&](std::uint64_t s) { return lambda1_stat(sample_pair(pm, zero, s)); });
  report.critical_value = bootstrap_critical_value(report.null_statistics, report.alpha);
  report.p_value = bootstrap_p_value(report.statistic, report.null_statistics);
  report.reject = report.statistic > *report.critical_value;
  return report;
}

SecondMoment second_moment(const CorrMatrix& r) {
  const auto n = r.size();
  SecondMoment out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.log_value += std::log1p(r(i, j) * r(i, j));
  }
  if (out.log_value < std::log(std::numeric_limits<double>::max())) out.value = std::exp(out.log_value);
  return out;
}

}  // namespace graphcorr
