#include "wove/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wove {

namespace {

int find_id(const std::vector<std::string>& ids, std::string_view id) {
  for (int i = 0; i < static_cast<int>(ids.size()); ++i)
    if (ids[i] == id) return i;
  return -1;
}

}  // namespace

int InfrastructureNetwork::index_of(std::string_view id) const {
  return find_id(node_ids, id);
}

int OverlayApp::index_of(std::string_view id) const {
  return find_id(block_ids, id);
}

std::vector<int> OverlayApp::successors(int block) const {
  std::vector<int> out;
  for (const auto& [a, b] : links)
    if (a == block) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

void Solution::normalize() {
  for (auto& hosts : placement) {
    std::sort(hosts.begin(), hosts.end());
    hosts.erase(std::unique(hosts.begin(), hosts.end()), hosts.end());
  }
  std::sort(transmissions.begin(), transmissions.end());
  transmissions.erase(std::unique(transmissions.begin(), transmissions.end()),
                      transmissions.end());
  frame_length = 0;
  for (const auto& t : transmissions)
    frame_length = std::max(frame_length, t.slot + 1);
}

ForwardingView derive_forwarding(const Solution& sol) {
  ForwardingView fw;
  for (const auto& t : sol.transmissions)
    fw.active.insert({t.block, t.sender, t.slot});
  return fw;
}

std::vector<char> derive_used_slots(const Solution& sol) {
  int hi = -1;
  for (const auto& t : sol.transmissions) hi = std::max(hi, t.slot);
  std::vector<char> used(hi + 1, 0);
  for (const auto& t : sol.transmissions)
    if (t.slot >= 0) used[t.slot] = 1;
  return used;
}

int objective(const Solution& sol) {
  std::set<int> slots;
  for (const auto& t : sol.transmissions) slots.insert(t.slot);
  return static_cast<int>(slots.size());
}

void check_instance(const InfrastructureNetwork& net, const OverlayApp& app) {
  const int V = net.node_count();
  const int P = app.block_count();
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument(msg);
  };

  if (V == 0) fail("network has no nodes");
  {
    std::set<std::string> seen(net.node_ids.begin(), net.node_ids.end());
    if (static_cast<int>(seen.size()) != V) fail("duplicate node id");
  }
  if (static_cast<int>(net.capacities.size()) != V)
    fail("capacity list size mismatch");
  for (double c : net.capacities)
    if (c < 0) fail("negative node capacity");
  if (static_cast<int>(net.gamma.size()) != V) fail("gamma row count mismatch");
  for (const auto& row : net.gamma) {
    if (static_cast<int>(row.size()) != V) fail("gamma column count mismatch");
    for (double g : row)
      if (g < 0) fail("negative attenuation entry");
  }
  for (int v = 0; v < V; ++v)
    if (net.gamma[v][v] != 0.0) fail("gamma diagonal must be zero");
  if (net.noise_floor <= 0) fail("noise floor must be positive");
  if (net.sinr_threshold <= 0) fail("sinr threshold must be positive");
  if (net.max_slots <= 0) fail("max_slots must be positive");
  if (net.source_nodes.empty()) fail("no source nodes");
  {
    std::set<int> seen;
    for (int s : net.source_nodes) {
      if (s < 0 || s >= V) fail("source node index out of range");
      if (!seen.insert(s).second) fail("duplicate source node");
    }
  }
  if (!std::is_sorted(net.source_nodes.begin(), net.source_nodes.end()))
    fail("source node list must be sorted");
  if (net.sink_node < 0 || net.sink_node >= V)
    fail("sink node index out of range");

  if (P == 0) fail("overlay has no blocks");
  {
    std::set<std::string> seen(app.block_ids.begin(), app.block_ids.end());
    if (static_cast<int>(seen.size()) != P) fail("duplicate block id");
  }
  if (static_cast<int>(app.weights.size()) != P)
    fail("block weight list size mismatch");
  for (double w : app.weights)
    if (w < 0) fail("negative block weight");
  {
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : app.links) {
      if (a < 0 || a >= P || b < 0 || b >= P) fail("link index out of range");
      if (a == b) fail("self link");
      if (!seen.insert({a, b}).second) fail("duplicate link");
    }
  }
  if (app.source_block < 0 || app.source_block >= P)
    fail("source block index out of range");
  if (app.sink_block < 0 || app.sink_block >= P)
    fail("sink block index out of range");
  for (const auto& [a, b] : app.links) {
    if (b == app.source_block) fail("source block has an incoming link");
    if (a == app.sink_block) fail("sink block has an outgoing link");
  }
}

}  // namespace wove
