#include "graphcorr/cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "graphcorr/cli/commands.hpp"
#include "graphcorr/cli/config.hpp"
#include "graphcorr/cli/experiment.hpp"
#include "graphcorr/edge_list.hpp"
#include "graphcorr/samplers.hpp"

#ifndef GRAPHCORR_VERSION_STRING
#define GRAPHCORR_VERSION_STRING "unknown"
#endif

namespace graphcorr::cli {

namespace {

namespace fs = std::filesystem;

/// Problems with the files or data a command was pointed at, as opposed to
/// the command line itself.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::size_t> bootstrap_m;
  std::optional<std::size_t> rank;
  std::optional<double> threshold;
  std::optional<std::size_t> threads;
  std::string out;
};

void add_usvt_flags(CLI::App* cmd, Common& c) {
  auto* rank = cmd->add_option("--rank", c.rank, "Keep exactly k singular values")->check(CLI::PositiveNumber);
  auto* thr = cmd->add_option("--threshold", c.threshold, "USVT constant c0")->check(CLI::PositiveNumber);
  rank->excludes(thr);
}

std::optional<UsvtConfig> usvt_override(const Common& c) {
  if (c.rank) return UsvtConfig::fixed_rank(*c.rank);
  if (c.threshold) return UsvtConfig::threshold(*c.threshold);
  return std::nullopt;
}

void check_alpha(const Common& c) {
  if (c.alpha && !(*c.alpha > 0.0 && *c.alpha < 1.0)) throw CLI::ValidationError("--alpha", "must lie in (0, 1)");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  return f;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

GraphPair read_pair(const std::string& a, const std::string& b) {
  AdjacencyMatrix ga = read_edge_list(a);
  AdjacencyMatrix gb = read_edge_list(b);
  if (ga.size() != gb.size()) throw DimensionMismatch(ga.size(), gb.size());
  return {std::move(ga), std::move(gb)};
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string config;
  std::optional<std::size_t> replicates;
  bool no_timing = false;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  ExperimentConfig cfg = load_config(args.config);
  const auto& c = args.common;
  if (c.seed) cfg.base_seed = *c.seed;
  if (c.alpha) cfg.alpha = *c.alpha;
  if (c.bootstrap_m) cfg.bootstrap_m = *c.bootstrap_m;
  if (auto u = usvt_override(c)) cfg.usvt = *u;
  if (c.threads) cfg.threads = *c.threads;
  if (args.replicates) cfg.mc_replicates = *args.replicates;
  if (!c.out.empty()) cfg.output = c.out;
  cfg.validate();

  const ExperimentTable table = run_experiment(cfg);
  const bool timing = !args.no_timing;

  ensure_dir(cfg.output);
  {
    auto f = open_out(fs::path(cfg.output) / "results.csv");
    write_table_csv(f, table, timing);
  }
  nlohmann::json manifest;
  manifest["version"] = version_string();
  manifest["config"] = config_to_json(cfg);
  manifest["tables"] = {"results.csv"};
  std::size_t failed = 0;
  for (const auto& cell : table.cells) failed += cell.error.empty() ? 0 : 1;
  manifest["failed_cells"] = failed;
  if (timing) manifest["wallclock_s"] = table.wallclock_s;
  write_json(fs::path(cfg.output) / "manifest.json", manifest);

  write_table_csv(out, table, timing);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  Common common;
  std::string a;
  std::string b;
  std::string test = "graphon_diff";
  std::optional<std::size_t> blocks;
  std::string labels;
  std::optional<double> critical;
  bool complement = false;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  AnalyzeOptions opts;
  try {
    opts.test = test_method_from_string(args.test);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("--test", "unknown test '" + args.test + "'");
  }
  const auto& c = args.common;
  if (auto u = usvt_override(c)) opts.usvt = *u;
  if (c.seed) opts.bootstrap.seed = *c.seed;
  if (c.alpha) opts.bootstrap.alpha = *c.alpha;
  if (c.bootstrap_m) opts.bootstrap.m = *c.bootstrap_m;
  if (c.threads) opts.bootstrap.threads = *c.threads;
  opts.blocks = args.blocks;
  opts.threshold = args.critical;
  opts.complement = args.complement;

  const GraphPair pair = read_pair(args.a, args.b);
  std::optional<Labels> labels;
  if (!args.labels.empty()) labels = read_labels(args.labels);

  const AnalyzeResult result = analyze(pair, opts, labels ? &*labels : nullptr);
  const nlohmann::json summary = analyze_summary_json(result, labels ? &*labels : nullptr);

  if (!c.out.empty()) {
    ensure_dir(c.out);
    write_json(fs::path(c.out) / "report.json", summary);
    if (result.block_mean) {
      auto f = open_out(fs::path(c.out) / "block_mean_R.csv");
      write_block_table_csv(f, *result.block_mean);
    }
    if (result.naive_pearson) {
      auto f = open_out(fs::path(c.out) / "naive_block_pearson.csv");
      write_block_table_csv(f, *result.naive_pearson);
    }
  }
  out << summary.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  Common common;
  std::string target;
  std::string auxiliary;
  double fraction = 0.1;
  std::size_t repeats = 100;
  bool exact = false;
};

int cmd_predict(const PredictArgs& args, std::ostream& out) {
  PredictOptions opts;
  const auto& c = args.common;
  opts.fraction = args.fraction;
  opts.repeats = args.repeats;
  opts.exact = args.exact;
  if (c.seed) opts.seed = *c.seed;
  if (auto u = usvt_override(c)) opts.usvt = *u;
  if (c.threads) opts.threads = *c.threads;

  const GraphPair pair = read_pair(args.target, args.auxiliary);
  const PredictResult result = predict(pair.a, pair.b, opts);
  const nlohmann::json summary = predict_summary_json(result, opts);

  if (!c.out.empty()) {
    ensure_dir(c.out);
    write_json(fs::path(c.out) / "auc_summary.json", summary);
    for (const auto& m : result.modes) {
      const std::string name(to_string(m.mode));
      {
        auto f = open_out(fs::path(c.out) / ("roc_" + name + ".csv"));
        write_roc_csv(f, m.first.roc);
      }
      auto f = open_out(fs::path(c.out) / ("scores_" + name + ".csv"));
      write_scores_csv(f, result.first_mask, m.first);
    }
  }
  out << summary.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
  Common common;
  std::size_t n = 0;
  double p = 0.5;
  std::size_t s0 = 0;
};

int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err) {
  if (args.s0 > args.n) throw CLI::ValidationError("--s0", "clique size exceeds --n");
  const std::uint64_t seed = args.common.seed.value_or(0);
  const CliqueReduction r = reduce_clique(args.n, args.p, args.s0, seed);
  const nlohmann::json summary = reduction_summary_json(r, args.p, seed);

  if (!args.common.out.empty()) {
    const fs::path dir(args.common.out);
    ensure_dir(dir.string());
    write_edge_list((dir / "clique_instance.edges").string(), r.instance.graph);
    write_edge_list((dir / "graph_a.edges").string(), r.pair.a);
    write_edge_list((dir / "graph_b.edges").string(), r.pair.b);
    write_edge_list((dir / "recovered.edges").string(), r.recovered);
    write_json(dir / "reduction.json", summary);
  }
  out << summary.dump(2) << '\n';
  if (!r.round_trip) {
    err << "error: recovered instance differs from the sampled one\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

const char* version_string() noexcept { return GRAPHCORR_VERSION_STRING; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling and independence testing for pairs of edge-correlated graphs", "graphcorr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version_string()));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo study from a JSON config");
  simulate->add_option("--config", sim.config, "Experiment config file")->required();
  simulate->add_option("--seed", sim.common.seed, "Override base_seed");
  simulate->add_option("--alpha", sim.common.alpha, "Override alpha");
  simulate->add_option("--bootstrap-m", sim.common.bootstrap_m, "Override bootstrap_m")->check(CLI::PositiveNumber);
  simulate->add_option("--replicates", sim.replicates, "Override mc_replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--threads", sim.common.threads, "Worker threads, 0 = all cores");
  simulate->add_option("--out", sim.common.out, "Override the output directory");
  simulate->add_flag("--no-timing", sim.no_timing, "Leave wallclock figures out of every output");
  add_usvt_flags(simulate, sim.common);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Test two observed graphs for edge correlation");
  analyze_cmd->add_option("graph_a", an.a, "First edge list")->required();
  analyze_cmd->add_option("graph_b", an.b, "Second edge list")->required();
  analyze_cmd->add_option("--test", an.test, "graphon_diff | graphon_same | sbm_chi2 | lambda1")
      ->capture_default_str();
  analyze_cmd->add_option("--K", an.blocks, "Block count for sbm_chi2")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--labels", an.labels, "One vertex label per line");
  analyze_cmd->add_option("--critical-value", an.critical, "Fixed critical value for lambda1");
  analyze_cmd->add_flag("--complement", an.complement, "Analyze the complement graphs");
  analyze_cmd->add_option("--seed", an.common.seed, "Bootstrap seed");
  analyze_cmd->add_option("--alpha", an.common.alpha, "Significance level");
  analyze_cmd->add_option("--bootstrap-m", an.common.bootstrap_m, "Bootstrap replicates")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--threads", an.common.threads, "Worker threads, 0 = all cores");
  analyze_cmd->add_option("--out", an.common.out, "Directory for report and block tables");
  add_usvt_flags(analyze_cmd, an.common);

  PredictArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Hold-out link prediction with and without the second graph");
  predict_cmd->add_option("target", pr.target, "Edge list whose links are predicted")->required();
  predict_cmd->add_option("auxiliary", pr.auxiliary, "Edge list of the auxiliary graph")->required();
  predict_cmd->add_option("--fraction", pr.fraction, "Share of vertex pairs held out")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  predict_cmd->add_option("--repeats", pr.repeats, "Number of random masks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  predict_cmd->add_flag("--exact", pr.exact, "Also score the exact joint conditional");
  predict_cmd->add_option("--seed", pr.common.seed, "Mask seed");
  predict_cmd->add_option("--threads", pr.common.threads, "Worker threads, 0 = all cores");
  predict_cmd->add_option("--out", pr.common.out, "Directory for AUC summary, ROC points and scores");
  add_usvt_flags(predict_cmd, pr.common);

  ReduceArgs rc;
  auto* reduce_cmd = app.add_subcommand("reduce-clique", "Map a planted-clique instance to a correlated pair and back");
  reduce_cmd->add_option("--n", rc.n, "Vertex count")->required()->check(CLI::PositiveNumber);
  reduce_cmd->add_option("--p", rc.p, "Edge probability of the instance")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  reduce_cmd->add_option("--s0", rc.s0, "Clique size")->required();
  reduce_cmd->add_option("--seed", rc.common.seed, "Seed");
  reduce_cmd->add_option("--out", rc.common.out, "Directory for the edge lists");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (simulate->parsed()) {
      check_alpha(sim.common);
      return cmd_simulate(sim, out);
    }
    if (analyze_cmd->parsed()) {
      check_alpha(an.common);
      return cmd_analyze(an, out);
    }
    if (predict_cmd->parsed()) return cmd_predict(pr, out);
    if (reduce_cmd->parsed()) return cmd_reduce(rc, out, err);
    return kExitUsage;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace graphcorr::cli
