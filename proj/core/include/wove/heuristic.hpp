#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wove/exact.hpp"
#include "wove/model.hpp"
#include "wove/radio.hpp"
#include "wove/util.hpp"
#include "wove/validator.hpp"

namespace wove {

struct HeuristicParams {
  int level = 1;           // lookahead window (number of links combined)
  int k = 0;               // neighbor expansion width; 0 -> all neighbors
  std::uint64_t seed = 0;  // tie-break seed
  std::int64_t backtrack_budget = 10'000;
  int max_path_hops = 0;   // cap on relay hops per path; 0 -> |V|-1
  Mode mode = Mode::relaxed;
};

// Partial construction state while links are mapped one at a time.
struct SearchState {
  std::vector<std::vector<int>> placement;  // block -> hosts (may be empty)
  std::vector<Transmission> transmissions;
  std::vector<double> residual;  // per-node leftover capacity
  int slots_used = 0;
  int next_link = 0;  // index into the processing order
};

// One way to realize a single overlay link from the current state.
struct Candidate {
  int link_index;
  std::vector<int> path;  // node path, path.front() = sending host
  int dest_block;
  int dest_host;          // where the head block ends up
  bool places_dest;       // true if this candidate assigns dest_block
  double cost;            // total slots used after applying
};

struct HeuristicStats {
  std::int64_t expansions = 0;
  std::int64_t candidates_generated = 0;
  std::int64_t first_expansion_candidates = 0;
  std::int64_t leaves_evaluated = 0;
  std::int64_t backtracks = 0;
  double runtime_ms = 0.0;
};

struct HeuristicResult {
  SolveStatus status = SolveStatus::infeasible;
  std::optional<Solution> solution;
  HeuristicStats stats;
};

// Deterministic processing order: forward edges in topological order of the
// overlay with cycle-closing edges appended last.
std::vector<int> order_links(const OverlayApp& app);

// All single-link realizations from `state` (paths, co-locations, reuse of
// already-delivered traffic), each scored by total slot usage after applying.
std::vector<Candidate> candidate_mappings(const SearchState& state,
                                          int link_index,
                                          const InfrastructureNetwork& net,
                                          const OverlayApp& app,
                                          const HeuristicParams& params);

// Schedules the hops of `path` onto slots of `state` (multicast reuse first,
// then earliest feasible slot, then a fresh slot). Returns false if a hop
// cannot be scheduled within net.max_slots.
bool schedule_path(SearchState& state, const Candidate& cand,
                   const InfrastructureNetwork& net, const OverlayApp& app,
                   const HeuristicParams& params);

// Greedy construction with bounded lookahead and backtracking.
HeuristicResult solve_heuristic(const InfrastructureNetwork& net,
                                const OverlayApp& app,
                                const HeuristicParams& params = {});

}  // namespace wove
