#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphcorr/cli/config.hpp"
#include "graphcorr/matrix.hpp"

namespace graphcorr::cli {

struct CellResult {
  std::size_t n = 0;
  std::optional<std::size_t> blocks;       // CorrelatedSbm
  std::optional<std::size_t> clique_size;  // PlantedClique
  double r = 0.0;
  std::size_t replicates = 0;
  std::size_t rejections = 0;
  std::optional<double> rejection_rate;     // absent when the cell failed
  std::optional<double> theoretical_power;  // CorrelatedSbm
  double wallclock_s = 0.0;
  std::string error;
};

struct ExperimentTable {
  Model model = Model::CosineGraphon;
  std::vector<CellResult> cells;  // grid order: n outermost, then K, then r or s0
  double wallclock_s = 0.0;
};

/// Seed of grid cell `cell`; replicate i uses derive_seed(cell seed, i).
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t cell);

/// One draw of the configured model for grid cell (n, r, K, s0).
GraphPair sample_model(const ExperimentConfig& cfg, std::size_t n, double r, std::size_t blocks,
                       std::size_t clique_size, std::uint64_t seed);

/// Whether the configured test rejects on one replicate drawn with `seed`.
bool run_replicate(const ExperimentConfig& cfg, std::size_t n, double r, std::size_t blocks,
                   std::size_t clique_size, std::uint64_t seed);

/// Runs every grid cell. A cell whose model cannot be built records the error
/// and the run moves on.
ExperimentTable run_experiment(const ExperimentConfig& cfg);

void write_table_csv(std::ostream& out, const ExperimentTable& table, bool timing);

}  // namespace graphcorr::cli
