#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wove/heuristic.hpp"
#include "wove/scenario.hpp"

namespace wove {

struct ExperimentPlan {
  std::vector<int> node_counts;
  std::vector<int> levels;
  std::vector<int> ks;             // 0 means "all"
  int seeds = 50;                  // seeds 0..seeds-1 per cell
  std::uint64_t seed_base = 0;     // instance seed = seed_base + i
  int exact_cutoff = 4;            // run the exact solver up to this size
  int max_path_hops = 0;           // forwarded to the heuristic
  double block_weight = 1.0;
  double room_side = 25.0;
  double noise_floor = 1e-5;
  double sinr_threshold = 10.0;
  int threads = 0;                 // 0 -> hardware_concurrency
  bool timing = true;              // false -> blank runtime columns
};

ExperimentPlan load_plan(const std::string& path);

struct ExperimentRecord {
  int node_count = 0;
  int level = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::optional<int> heuristic_slots;
  std::optional<int> exact_slots;
  std::optional<double> gap;
  std::optional<double> heuristic_runtime_ms;
  std::optional<double> exact_runtime_ms;
  std::string status;  // ok | infeasible | budget | exact_skipped
};

// (heuristic - optimal) / optimal; only defined when both sides exist and
// the optimum is at least one slot.
std::optional<double> compute_gap(const std::optional<int>& heuristic_slots,
                                  const std::optional<int>& exact_slots);

std::vector<ExperimentRecord> run_experiment(const ExperimentPlan& plan);

void write_csv(const std::vector<ExperimentRecord>& records,
               const std::string& path, bool timing);

std::string summarize(const std::vector<ExperimentRecord>& records);

void write_summary_csv(const std::vector<ExperimentRecord>& records,
                       const std::string& path);

// Hand-rolled SVG charts: runtime vs node count, gap confidence intervals,
// slot counts vs node count.
void write_plots(const std::vector<ExperimentRecord>& records,
                 const std::string& dir);

}  // namespace wove
