#pragma once

#include <cstdint>
#include <string>

#include "edscorr/harness/config.hpp"
#include "edscorr/harness/table.hpp"

namespace edscorr::harness {

struct SweepOptions {
  // Per-cell row files and completion markers live here.
  std::string state_dir;
  unsigned workers = 1;
  // Test hook: stop after this many freshly computed cells (0 = no limit),
  // leaving the run incomplete as an interruption would.
  std::uint64_t stop_after = 0;
};

struct SweepResult {
  Table table;  // rows in grid order (p, d, H, m)
  std::uint64_t cells_total = 0;
  std::uint64_t cells_computed = 0;
  std::uint64_t cells_reused = 0;
  bool complete = false;
};

// Columns of the sweep table, in order.
const std::vector<std::string>& sweep_columns();

// Runs every (p, d, H) cell of the grid, one row per m (default m = 2).
// Throws ConfigError for unusable grids and RangeError when H or N
// exceeds R for some cell.
SweepResult run_sweep(const ExperimentConfig& cfg, const SweepOptions& opts);

}  // namespace edscorr::harness
