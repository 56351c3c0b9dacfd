#pragma once

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wove {

// Nodes and blocks are referred to by dense integer indices everywhere inside
// the library; the string ids live next to them for I/O and messages.

/// Physical wireless network: nodes with compute capacity plus the pairwise
/// channel attenuation matrix and the radio parameters shared by all slots.
struct InfrastructureNetwork {
  std::vector<std::string> node_ids;         // ordered, unique
  std::vector<double> capacities;            // per node, >= 0
  std::vector<std::vector<double>> gamma;    // attenuation, zero diagonal
  double noise_floor = 0.0;
  double sinr_threshold = 0.0;
  int max_slots = 0;                         // TDMA frame length bound
  std::vector<int> source_nodes;             // sorted, unique, nonempty
  int sink_node = -1;
  std::optional<double> desired_rate;        // informational only

  int node_count() const { return static_cast<int>(node_ids.size()); }
  int index_of(std::string_view id) const;   // -1 when unknown
};

/// Signal-processing overlay: weighted blocks connected by directed data
/// links. Cycles are allowed (feedback links). One artificial source block
/// fans data in from the source nodes; one sink block collects at the sink.
struct OverlayApp {
  std::vector<std::string> block_ids;        // ordered, unique
  std::vector<double> weights;               // per block, >= 0
  std::vector<std::pair<int, int>> links;    // directed, no self-links, unique
  int source_block = -1;                     // no incoming links
  int sink_block = -1;                       // no outgoing links

  int block_count() const { return static_cast<int>(block_ids.size()); }
  int link_count() const { return static_cast<int>(links.size()); }
  int index_of(std::string_view id) const;   // -1 when unknown
  std::vector<int> successors(int block) const;
};

/// One radio transmission: `sender` forwards the output of `block`, as
/// originated by the node `origin` hosting that block, to `receiver` in the
/// given TDMA slot. One multicast is stored as several entries sharing
/// (sender, block, origin, slot).
struct Transmission {
  int sender = -1;
  int receiver = -1;
  int block = -1;
  int origin = -1;
  int slot = -1;

  friend auto operator<=>(const Transmission&, const Transmission&) = default;
};

/// Embedding result: block placement plus the transmission schedule.
struct Solution {
  std::vector<std::vector<int>> placement;   // block -> hosting nodes (sorted)
  std::vector<Transmission> transmissions;   // canonical: sorted, unique
  int frame_length = 0;                      // number of slot indices in use range

  /// Sort/dedupe everything and recompute frame_length. All library code
  /// producing solutions calls this, so serialized output is canonical.
  void normalize();

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Sparse view of the per-(block, node, slot) forwarding indicator: true iff
/// some transmission of that block leaves that node in that slot.
struct ForwardingView {
  std::set<std::array<int, 3>> active;  // (block, node, slot)

  bool operator()(int block, int node, int slot) const {
    return active.count({block, node, slot}) != 0;
  }
};

ForwardingView derive_forwarding(const Solution& sol);

/// Slot-usage view: entry t is 1 iff some transmission uses slot t. Sized by
/// the highest used slot (so interior idle slots show up as 0).
std::vector<char> derive_used_slots(const Solution& sol);

/// Objective value: the number of distinct TDMA slots in use.
int objective(const Solution& sol);

/// Structural sanity of an instance (index ranges, matrix shape, overlay
/// degree rules). Throws std::invalid_argument describing the first problem.
void check_instance(const InfrastructureNetwork& net, const OverlayApp& app);

}  // namespace wove
