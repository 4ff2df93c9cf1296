#include "graphcorr/cli/experiment.hpp"

#include <chrono>
#include <ostream>

#include "graphcorr/rng.hpp"
#include "graphcorr/samplers.hpp"
#include "graphcorr/statdist.hpp"

namespace graphcorr::cli {

namespace {

// Sub-stream tags for derive_seed within one replicate.
constexpr std::uint64_t kStreamModel = 0;
constexpr std::uint64_t kStreamEdges = 1;
constexpr std::uint64_t kStreamTest = 2;

GraphonSpec graphon_spec(Model model, std::size_t n, double r) {
  GraphonSpec spec;
  spec.n = n;
  spec.latent_dim = 2;
  spec.correlation.kind = CorrelationFunction::Kind::Constant;
  spec.correlation.value = r;
  spec.link.scale = 0.5;
  spec.link.kind = model == Model::GaussianGraphon ? LinkKind::Gaussian : LinkKind::Cosine;
  if (model == Model::DiffMarginalGraphon) {
    LinkFunction second;
    second.kind = LinkKind::Cosine;
    second.scale = 0.25;
    spec.second_link = second;
    spec.independent_second_latent = true;
    spec.clamp_correlation = true;
  }
  return spec;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t cell) { return derive_seed(base_seed, cell); }

GraphPair sample_model(const ExperimentConfig& cfg, std::size_t n, double r, std::size_t blocks,
                       std::size_t clique_size, std::uint64_t seed) {
  switch (cfg.model) {
    case Model::CosineGraphon:
    case Model::GaussianGraphon:
    case Model::DiffMarginalGraphon:
      return sample_graphon_pair(graphon_spec(cfg.model, n, r), seed).pair;
    case Model::CorrelatedSbm:
      return sample_sbm_pair(SbmSpec::banded(n, blocks, r), seed).pair;
    case Model::PlantedClique: {
      const auto instance = sample_planted_clique(n, cfg.p, clique_size, derive_seed(seed, kStreamModel));
      return planted_clique_to_pair(instance.graph, derive_seed(seed, kStreamEdges));
    }
    case Model::Lambda1ER: {
      const auto corr = two_group_correlation(n, r, derive_seed(seed, kStreamModel));
      return sample_pair(ProbMatrix::constant(n, cfg.p), corr, derive_seed(seed, kStreamEdges));
    }
  }
  throw ConfigError("unknown model");
}

bool run_replicate(const ExperimentConfig& cfg, std::size_t n, double r, std::size_t blocks,
                   std::size_t clique_size, std::uint64_t seed) {
  const GraphPair pair = sample_model(cfg, n, r, blocks, clique_size, seed);
  BootstrapOptions boot;
  boot.m = cfg.bootstrap_m;
  boot.alpha = cfg.alpha;
  boot.seed = derive_seed(seed, kStreamTest);
  switch (cfg.effective_test()) {
    case TestMethod::GraphonSame:
      return bootstrap_test_same(pair, cfg.effective_usvt(), boot).reject;
    case TestMethod::GraphonDiff:
      return bootstrap_test_diff(pair, cfg.effective_usvt(), boot).reject;
    case TestMethod::SbmChi2: {
      SbmTestOptions opts;
      opts.alpha = cfg.alpha;
      opts.seed = boot.seed;
      return sbm_chi2_test(pair, blocks, opts).reject;
    }
    case TestMethod::Lambda1: {
      Lambda1Options opts;
      opts.bootstrap = boot;
      return lambda1_test(pair, opts).reject;
    }
  }
  return false;
}

ExperimentTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentTable table;
  table.model = cfg.model;

  const bool sbm = cfg.model == Model::CorrelatedSbm;
  const bool clique = cfg.model == Model::PlantedClique;
  const std::vector<std::size_t> block_grid = sbm ? cfg.blocks : std::vector<std::size_t>{cfg.blocks.front()};
  const std::size_t inner = clique ? cfg.clique_sizes.size() : cfg.r.size();

  for (const auto n : cfg.n) {
    for (const auto k : block_grid) {
      for (std::size_t c = 0; c < inner; ++c) {
        CellResult cell;
        cell.n = n;
        cell.r = clique ? 0.0 : cfg.r[c];
        if (sbm) cell.blocks = k;
        if (clique) cell.clique_size = cfg.clique_sizes[c];
        const std::size_t s0 = clique ? cfg.clique_sizes[c] : 0;
        const auto seed = cell_seed(cfg.base_seed, table.cells.size());
        const auto cell_start = std::chrono::steady_clock::now();
        try {
          std::vector<std::uint8_t> rejected(cfg.mc_replicates, 0);
          parallel_for(cfg.mc_replicates, cfg.threads, [&](std::size_t i) {
            rejected[i] = run_replicate(cfg, n, cell.r, k, s0, derive_seed(seed, i)) ? 1 : 0;
          });
          cell.replicates = cfg.mc_replicates;
          for (const auto v : rejected) cell.rejections += v;
          cell.rejection_rate = static_cast<double>(cell.rejections) / static_cast<double>(cell.replicates);
        } catch (const std::exception& e) {
          cell.error = e.what();
        }
        if (sbm) cell.theoretical_power = sbm_theoretical_power(k, n, cell.r, cfg.alpha);
        cell.wallclock_s = elapsed(cell_start);
        table.cells.push_back(std::move(cell));
      }
    }
  }
  table.wallclock_s = elapsed(start);
  return table;
}

void write_table_csv(std::ostream& out, const ExperimentTable& table, bool timing) {
  const bool sbm = table.model == Model::CorrelatedSbm;
  const bool clique = table.model == Model::PlantedClique;
  out << "n";
  if (sbm) out << ",K";
  out << (clique ? ",s0" : ",r") << ",replicates,rejections,rejection_rate";
  if (sbm) out << ",theoretical_power";
  if (timing) out << ",wallclock_s";
  out << ",error\n";
  for (const auto& c : table.cells) {
    out << c.n;
    if (sbm) out << ',' << c.blocks.value_or(0);
    if (clique)
      out << ',' << c.clique_size.value_or(0);
    else
      out << ',' << c.r;
    out << ',' << c.replicates << ',' << c.rejections << ',';
    if (c.rejection_rate) out << *c.rejection_rate;
    if (sbm) {
      out << ',';
      if (c.theoretical_power) out << *c.theoretical_power;
    }
    if (timing) out << ',' << c.wallclock_s;
    out << ',';
    if (!c.error.empty()) {
      out << '"';
      for (const char ch : c.error) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    }
    out << '\n';
  }
}

}  // namespace graphcorr::cli
