#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wove/model.hpp"

namespace wove {

/// Data-delivery semantics. In `relaxed` mode a block co-located with its
/// consumer hands data over in memory; in `strict` mode every overlay link
/// requires an over-the-air reception at the consumer's node.
enum class Mode { strict, relaxed };

inline const char* to_string(Mode m) {
  return m == Mode::strict ? "strict" : "relaxed";
}

/// Constraint families a solution can violate.
enum class ConstraintTag {
  placement_unique,
  capacity,
  slot_exclusive,
  sinr,
  dep_delivery,
  no_dead_end,
  send_legitimacy,
  phantom_loop,
  structural,
};

std::string_view to_string(ConstraintTag tag);

struct Violation {
  ConstraintTag tag;
  std::string detail;
  std::vector<std::string> entities;  // offending node/block/slot labels
};

struct ValidationReport {
  bool ok = false;
  std::vector<Violation> violations;
};

// Individual constraint families. Each returns every violation it finds.

/// Placement rules: each block hosted exactly once, except the source block
/// which must sit on exactly the source nodes; the sink block must sit on the
/// sink node; per-node block weights within capacity.
std::vector<Violation> check_placement(const Solution& sol,
                                       const InfrastructureNetwork& net,
                                       const OverlayApp& app);

/// Per (node, slot): transmit at most one block's traffic, or receive at most
/// one transmission, never both.
std::vector<Violation> check_slot_exclusivity(const Solution& sol,
                                              const InfrastructureNetwork& net);

/// Every reception decodes: SINR >= threshold under that slot's interference.
std::vector<Violation> check_sinr(const Solution& sol,
                                  const InfrastructureNetwork& net);

/// Data-flow rules along overlay links:
///  - dep_delivery:    every consumer host received its producer's traffic
///                     (relaxed mode: co-location counts as delivery)
///  - no_dead_end:     whoever received a block's traffic hosts one of its
///                     consumers or forwards the traffic onward
///  - send_legitimacy: whoever sends a block's traffic received it first or
///                     hosts the block
std::vector<Violation> check_flow(const Solution& sol,
                                  const InfrastructureNetwork& net,
                                  const OverlayApp& app, Mode mode);

/// Rejects traffic circulating without any chain of transmissions from the
/// originating node: every sender of a (block, origin) commodity must be
/// reachable from the origin in that commodity's transmission graph.
std::vector<Violation> check_no_phantom_loops(const Solution& sol,
                                              const InfrastructureNetwork& net,
                                              const OverlayApp& app);

/// Index ranges, duplicate transmissions, self-receptions, slot bounds, and
/// origin/placement consistency. Run first; the other checks assume it passed.
std::vector<Violation> check_structure(const Solution& sol,
                                       const InfrastructureNetwork& net,
                                       const OverlayApp& app);

/// Full check. Structural problems short-circuit (the remaining families
/// could not index the solution safely).
ValidationReport validate(const Solution& sol, const InfrastructureNetwork& net,
                          const OverlayApp& app, Mode mode = Mode::relaxed);

/// Human-readable multi-line report.
std::string format_report(const ValidationReport& report);

}  // namespace wove
