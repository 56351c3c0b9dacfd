#pragma once

#include <cstdint>
#include <optional>

#include "wove/model.hpp"
#include "wove/radio.hpp"
#include "wove/util.hpp"
#include "wove/validator.hpp"

namespace wove {

struct ExactConfig {
  int slot_budget_start = 0;   // lower bound on the slot budget sweep
  int slot_budget_max = -1;    // -1 -> net.max_slots
  std::int64_t node_limit = 50'000'000;  // search nodes before giving up
  Mode mode = Mode::relaxed;
};

struct SolveStats {
  std::int64_t nodes_expanded = 0;
  std::int64_t placements_tried = 0;
  std::int64_t placements_pruned = 0;
  int budgets_tried = 0;
  double runtime_ms = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;
  SolveStats stats;
};

// Branch-and-bound over slot budgets: for increasing frame length m, search
// placements and per-link delivery routes until one schedules within m slots.
// The first budget admitting a solution is the optimum (objective = number of
// distinct used slots).
SolveResult solve_exact(const InfrastructureNetwork& net, const OverlayApp& app,
                        const ExactConfig& cfg = {});

struct BruteForceConfig {
  int slot_cap = -1;  // -1 -> net.max_slots
  Mode mode = Mode::relaxed;
  bool allow_multicast = true;  // false: each hop serves exactly one receiver
};

// Independent exhaustive reference: enumerates placements, per-link delivery
// routes, and set partitions of the resulting hops into slots, keeping the
// best validator-approved solution. Exponential; only for tiny instances.
SolveResult brute_force(const InfrastructureNetwork& net, const OverlayApp& app,
                        const BruteForceConfig& cfg = {});

// Removes transmissions that can be deleted without breaking validity, then
// compacts slot numbers. Deterministic; yields an irredundant solution.
Solution prune_redundant(const Solution& sol, const InfrastructureNetwork& net,
                         const OverlayApp& app, Mode mode);

}  // namespace wove
