#include "graphcorr/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "graphcorr/edge_list.hpp"
#include "graphcorr/report_json.hpp"
#include "graphcorr/rng.hpp"

namespace graphcorr::cli {

namespace {

nlohmann::json table_json(const BlockTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index k = 0; k < table.values.rows(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index l = 0; l < table.values.cols(); ++l) {
      const double v = table.values(k, l);
      row.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Labels read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels file '" + path + "'");
  Labels labels;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    if (token.find_first_of(" \t") != std::string::npos)
      throw ParseError(lineno, "labels file: one label per line expected");
    const auto [it, inserted] = index.emplace(token, labels.names.size());
    if (inserted) labels.names.push_back(token);
    labels.ids.push_back(it->second);
  }
  return labels;
}

AnalyzeResult analyze(const GraphPair& input, const AnalyzeOptions& opts, const Labels* labels) {
  const GraphPair pair = opts.complement ? GraphPair(input.a.complement(), input.b.complement()) : input;
  if (labels && labels->ids.size() != pair.size())
    throw DimensionMismatch(labels->ids.size(), pair.size());

  AnalyzeResult result;
  switch (opts.test) {
    case TestMethod::GraphonSame:
      result.report = bootstrap_test_same(pair, opts.usvt, opts.bootstrap);
      break;
    case TestMethod::GraphonDiff:
      result.report = bootstrap_test_diff(pair, opts.usvt, opts.bootstrap);
      break;
    case TestMethod::SbmChi2:
      if (labels) {
        result.report = sbm_chi2_test(pair, labels->ids, labels->blocks(), opts.bootstrap.alpha);
      } else {
        if (!opts.blocks) throw std::invalid_argument("sbm_chi2 needs a block count or a labels file");
        SbmTestOptions sbm;
        sbm.alpha = opts.bootstrap.alpha;
        sbm.seed = opts.bootstrap.seed;
        result.report = sbm_chi2_test(pair, *opts.blocks, sbm);
      }
      break;
    case TestMethod::Lambda1: {
      Lambda1Options l1;
      l1.threshold = opts.threshold;
      l1.bootstrap = opts.bootstrap;
      result.report = lambda1_test(pair, l1);
      break;
    }
  }

  const GraphonFit fit = graphon_fit_diff(pair, opts.usvt);
  result.r_hat = estimate_R(ProbMatrix::clamped(fit.p_hat), ProbMatrix::clamped(fit.q_hat),
                            ProbMatrix::clamped(fit.h_hat));
  if (labels) {
    result.block_mean = block_mean_R(result.r_hat, labels->ids, labels->blocks());
    result.naive_pearson = naive_block_pearson(pair, labels->ids, labels->blocks());
  }
  return result;
}

nlohmann::json analyze_summary_json(const AnalyzeResult& result, const Labels* labels) {
  const Matrix& r = result.r_hat.values();
  const auto n = static_cast<double>(r.rows());
  nlohmann::json j;
  j["report"] = report_to_json(result.report);
  j["r_hat"] = {
      {"frobenius", r.norm()},
      {"mean_offdiagonal", n > 1 ? r.sum() / (n * (n - 1)) : 0.0},
      {"max_abs", r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0},
  };
  if (labels && result.block_mean && result.naive_pearson) {
    j["labels"] = labels->names;
    j["block_mean_R"] = table_json(*result.block_mean);
    j["naive_block_pearson"] = table_json(*result.naive_pearson);
  }
  return j;
}

std::string_view to_string(PredictionMode mode) noexcept {
  switch (mode) {
    case PredictionMode::Single:
      return "single";
    case PredictionMode::Joint:
      return "joint";
    case PredictionMode::JointExact:
      return "joint_exact";
  }
  return "unknown";
}

PredictResult predict(const AdjacencyMatrix& target, const AdjacencyMatrix& auxiliary, const PredictOptions& opts) {
  if (target.size() != auxiliary.size()) throw DimensionMismatch(target.size(), auxiliary.size());
  if (opts.repeats < 1) throw std::invalid_argument("predict: repeats must be at least 1");

  std::vector<PredictionMode> modes{PredictionMode::Single, PredictionMode::Joint};
  if (opts.exact) modes.push_back(PredictionMode::JointExact);

  PredictResult result;
  result.first_mask = holdout_mask(target.size(), opts.fraction, derive_seed(opts.seed, 0));
  result.modes.resize(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    result.modes[k].mode = modes[k];
    result.modes[k].aucs.assign(opts.repeats, 0.0);
  }

  parallel_for(opts.repeats, opts.threads, [&](std::size_t i) {
    const HoldoutMask mask = i == 0 ? result.first_mask : holdout_mask(target.size(), opts.fraction, derive_seed(opts.seed, i));
    for (std::size_t k = 0; k < modes.size(); ++k) {
      PredictionConfig cfg;
      cfg.mode = modes[k];
      cfg.usvt = opts.usvt;
      auto prediction = predict_links(target, &auxiliary, mask, cfg);
      result.modes[k].aucs[i] = prediction.roc.defined ? prediction.roc.auc : std::nan("");
      if (i == 0) result.modes[k].first = std::move(prediction);
    }
  });

  for (auto& summary : result.modes) {
    double sum = 0.0;
    for (const double a : summary.aucs) {
      if (std::isnan(a)) continue;
      sum += a;
      ++summary.defined;
    }
    if (summary.defined == 0) {
      summary.mean = std::nan("");
      continue;
    }
    summary.mean = sum / static_cast<double>(summary.defined);
    if (summary.defined >= 2) {
      double ss = 0.0;
      for (const double a : summary.aucs)
        if (!std::isnan(a)) ss += (a - summary.mean) * (a - summary.mean);
      const auto d = static_cast<double>(summary.defined);
      summary.std_error = std::sqrt(ss / (d - 1.0)) / std::sqrt(d);
    }
  }
  return result;
}

nlohmann::json predict_summary_json(const PredictResult& result, const PredictOptions& opts) {
  nlohmann::json j;
  j["fraction"] = opts.fraction;
  j["repeats"] = opts.repeats;
  j["seed"] = opts.seed;
  j["usvt"] = nlohmann::json::object();
  if (opts.usvt.mode == UsvtConfig::Mode::FixedRank)
    j["usvt"]["rank"] = opts.usvt.rank;
  else
    j["usvt"]["threshold"] = opts.usvt.c0;
  for (const auto& s : result.modes) {
    nlohmann::json m;
    m["mean_auc"] = std::isnan(s.mean) ? nlohmann::json(nullptr) : nlohmann::json(s.mean);
    m["std_error"] = s.std_error ? nlohmann::json(*s.std_error) : nlohmann::json(nullptr);
    m["defined"] = s.defined;
    m["first"] = roc_summary_json(s.first.roc);
    j[std::string(to_string(s.mode))] = std::move(m);
  }
  return j;
}

CliqueReduction reduce_clique(std::size_t n, double p, std::size_t s0, std::uint64_t seed) {
  CliqueReduction out;
  out.instance = sample_planted_clique(n, p, s0, derive_seed(seed, 0));
  out.pair = planted_clique_to_pair(out.instance.graph, derive_seed(seed, 1));
  out.recovered = pair_to_clique_instance(out.pair);
  out.round_trip = out.recovered == out.instance.graph;
  out.r_frobenius = planted_clique_correlation(n, out.instance.clique).frobenius_norm();
  return out;
}

nlohmann::json reduction_summary_json(const CliqueReduction& reduction, double p, std::uint64_t seed) {
  return {
      {"n", reduction.instance.graph.size()},
      {"p", p},
      {"s0", reduction.instance.clique.size()},
      {"seed", seed},
      {"clique", reduction.instance.clique},
      {"round_trip", reduction.round_trip},
      {"r_frobenius", reduction.r_frobenius},
      {"r_frobenius_nominal", reduction.instance.clique.size()},
      {"edges_s", reduction.instance.graph.edge_count()},
      {"edges_a", reduction.pair.a.edge_count()},
      {"edges_b", reduction.pair.b.edge_count()},
  };
}

}  // namespace graphcorr::cli
