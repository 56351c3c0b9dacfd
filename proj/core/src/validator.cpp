#include "wove/validator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "wove/radio.hpp"

namespace wove {

std::string_view to_string(ConstraintTag tag) {
  switch (tag) {
    case ConstraintTag::placement_unique: return "PLACEMENT_UNIQUE";
    case ConstraintTag::capacity: return "CAPACITY";
    case ConstraintTag::slot_exclusive: return "SLOT_EXCLUSIVE";
    case ConstraintTag::sinr: return "SINR";
    case ConstraintTag::dep_delivery: return "DEP_DELIVERY";
    case ConstraintTag::no_dead_end: return "NO_DEAD_END";
    case ConstraintTag::send_legitimacy: return "SEND_LEGITIMACY";
    case ConstraintTag::phantom_loop: return "PHANTOM_LOOP";
    case ConstraintTag::structural: return "STRUCTURAL";
  }
  return "?";
}

namespace {

constexpr double kCapacityEps = 1e-9;

Violation make(ConstraintTag tag, std::string detail,
               std::vector<std::string> entities = {}) {
  return Violation{tag, std::move(detail), std::move(entities)};
}

bool hosts(const Solution& sol, int block, int node) {
  const auto& h = sol.placement[block];
  return std::find(h.begin(), h.end(), node) != h.end();
}

// Per-(block, origin) traffic indexed for the flow checks.
struct CommodityIndex {
  // key: (block, origin)
  std::map<std::pair<int, int>, std::set<int>> senders;
  std::map<std::pair<int, int>, std::set<int>> receivers;
  std::map<std::pair<int, int>, std::set<std::pair<int, int>>> edges;
  std::map<int, std::set<int>> receivers_by_block;

  explicit CommodityIndex(const Solution& sol) {
    for (const auto& t : sol.transmissions) {
      const auto key = std::make_pair(t.block, t.origin);
      senders[key].insert(t.sender);
      receivers[key].insert(t.receiver);
      edges[key].insert({t.sender, t.receiver});
      receivers_by_block[t.block].insert(t.receiver);
    }
  }
};

}  // namespace

std::vector<Violation> check_placement(const Solution& sol,
                                       const InfrastructureNetwork& net,
                                       const OverlayApp& app) {
  std::vector<Violation> out;
  for (int p = 0; p < app.block_count(); ++p) {
    const auto& h = sol.placement[p];
    if (p == app.source_block) {
      if (h != net.source_nodes)
        out.push_back(make(ConstraintTag::placement_unique,
                           "source block must sit on exactly the source nodes",
                           {app.block_ids[p]}));
    } else if (p == app.sink_block) {
      if (h.size() != 1 || h[0] != net.sink_node)
        out.push_back(make(ConstraintTag::placement_unique,
                           "sink block must sit on exactly the sink node",
                           {app.block_ids[p]}));
    } else if (h.size() != 1) {
      out.push_back(make(ConstraintTag::placement_unique,
                         "block must be hosted on exactly one node",
                         {app.block_ids[p]}));
    }
  }
  for (int v = 0; v < net.node_count(); ++v) {
    double load = 0.0;
    for (int p = 0; p < app.block_count(); ++p)
      if (hosts(sol, p, v)) load += app.weights[p];
    if (load > net.capacities[v] + kCapacityEps) {
      std::ostringstream os;
      os << "node load " << load << " exceeds capacity " << net.capacities[v];
      out.push_back(make(ConstraintTag::capacity, os.str(), {net.node_ids[v]}));
    }
  }
  return out;
}

std::vector<Violation> check_slot_exclusivity(
    const Solution& sol, const InfrastructureNetwork& net) {
  std::vector<Violation> out;
  // (node, slot) -> distinct sent streams / reception count
  std::map<std::pair<int, int>, std::set<std::pair<int, int>>> sends;
  std::map<std::pair<int, int>, int> recvs;
  for (const auto& t : sol.transmissions) {
    sends[{t.sender, t.slot}].insert({t.block, t.origin});
    recvs[{t.receiver, t.slot}] += 1;
  }
  for (const auto& [key, streams] : sends) {
    if (streams.size() > 1)
      out.push_back(make(ConstraintTag::slot_exclusive,
                         "node sends more than one stream in slot " +
                             std::to_string(key.second),
                         {net.node_ids[key.first]}));
    if (recvs.count(key))
      out.push_back(make(ConstraintTag::slot_exclusive,
                         "node both sends and receives in slot " +
                             std::to_string(key.second),
                         {net.node_ids[key.first]}));
  }
  for (const auto& [key, n] : recvs) {
    if (n > 1)
      out.push_back(make(ConstraintTag::slot_exclusive,
                         "node must decode " + std::to_string(n) +
                             " transmissions in slot " +
                             std::to_string(key.second),
                         {net.node_ids[key.first]}));
  }
  return out;
}

std::vector<Violation> check_sinr(const Solution& sol,
                                  const InfrastructureNetwork& net) {
  std::vector<Violation> out;
  for (const auto& [slot, load] : build_slot_loads(sol)) {
    for (const auto& [s, r] : load.receptions) {
      const double q = sinr_at(s, r, load, net);
      if (q < net.sinr_threshold) {
        std::ostringstream os;
        os << "sinr " << q << " below threshold " << net.sinr_threshold
           << " in slot " << slot;
        out.push_back(make(ConstraintTag::sinr, os.str(),
                           {net.node_ids[s], net.node_ids[r]}));
      }
    }
  }
  return out;
}

std::vector<Violation> check_flow(const Solution& sol,
                                  const InfrastructureNetwork& net,
                                  const OverlayApp& app, Mode mode) {
  std::vector<Violation> out;
  const CommodityIndex idx(sol);

  // dep_delivery: every consumer host obtained its producer's traffic.
  for (const auto& [p1, p2] : app.links) {
    for (int v : sol.placement[p2]) {
      bool delivered = mode == Mode::relaxed && hosts(sol, p1, v);
      if (!delivered) {
        auto it = idx.receivers_by_block.find(p1);
        delivered = it != idx.receivers_by_block.end() && it->second.count(v);
      }
      if (!delivered)
        out.push_back(make(ConstraintTag::dep_delivery,
                           "consumer host never obtains the producer output",
                           {app.block_ids[p1], app.block_ids[p2],
                            net.node_ids[v]}));
    }
  }

  // no_dead_end: received traffic is consumed locally or forwarded onward.
  const auto consumers = [&](int p) {
    std::vector<int> out_blocks;
    for (const auto& [a, b] : app.links)
      if (a == p) out_blocks.push_back(b);
    return out_blocks;
  };
  for (const auto& [key, recvset] : idx.receivers) {
    const auto [p, o] = key;
    const auto cons = consumers(p);
    for (int v : recvset) {
      bool used = false;
      for (int p2 : cons)
        if (hosts(sol, p2, v)) { used = true; break; }
      if (!used) {
        auto it = idx.senders.find(key);
        used = it != idx.senders.end() && it->second.count(v);
      }
      if (!used)
        out.push_back(make(ConstraintTag::no_dead_end,
                           "received traffic neither consumed nor forwarded",
                           {app.block_ids[p], net.node_ids[o],
                            net.node_ids[v]}));
    }
  }

  // send_legitimacy: a sender hosts the block itself or received the
  // stream first.
  for (const auto& [key, sendset] : idx.senders) {
    const auto [p, o] = key;
    for (int v : sendset) {
      if (hosts(sol, p, v)) continue;
      auto it = idx.receivers.find(key);
      if (it != idx.receivers.end() && it->second.count(v)) continue;
      out.push_back(make(ConstraintTag::send_legitimacy,
                         "node sends traffic it never obtained",
                         {app.block_ids[p], net.node_ids[o],
                          net.node_ids[v]}));
    }
  }
  return out;
}

std::vector<Violation> check_no_phantom_loops(const Solution& sol,
                                              const InfrastructureNetwork& net,
                                              const OverlayApp& app) {
  std::vector<Violation> out;
  const CommodityIndex idx(sol);
  for (const auto& [key, sendset] : idx.senders) {
    const auto [p, o] = key;
    // BFS over this commodity's transmission edges starting at the origin.
    std::set<int> reach{o};
    std::deque<int> queue{o};
    const auto& edges = idx.edges.at(key);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& [a, b] : edges) {
        if (a != v) continue;
        if (reach.insert(b).second) queue.push_back(b);
      }
    }
    for (int v : sendset) {
      if (!reach.count(v))
        out.push_back(make(ConstraintTag::phantom_loop,
                           "sender is not fed by any transmission chain "
                           "from the origin",
                           {app.block_ids[p], net.node_ids[o],
                            net.node_ids[v]}));
    }
  }
  return out;
}

std::vector<Violation> check_structure(const Solution& sol,
                                       const InfrastructureNetwork& net,
                                       const OverlayApp& app) {
  std::vector<Violation> out;
  const int V = net.node_count();
  const int P = app.block_count();

  if (static_cast<int>(sol.placement.size()) != P) {
    out.push_back(make(ConstraintTag::structural,
                       "placement must list hosts for every block"));
    return out;  // nothing below can index safely
  }
  for (int p = 0; p < P; ++p) {
    std::set<int> seen;
    for (int v : sol.placement[p]) {
      if (v < 0 || v >= V) {
        out.push_back(make(ConstraintTag::structural,
                           "host index out of range", {app.block_ids[p]}));
      } else if (!seen.insert(v).second) {
        out.push_back(make(ConstraintTag::structural, "duplicate host",
                           {app.block_ids[p], net.node_ids[v]}));
      }
    }
  }
  if (sol.frame_length < 0 || sol.frame_length > net.max_slots)
    out.push_back(make(ConstraintTag::structural,
                       "frame length outside [0, max_slots]"));

  std::set<Transmission> seen;
  for (const auto& t : sol.transmissions) {
    if (t.sender < 0 || t.sender >= V || t.receiver < 0 || t.receiver >= V ||
        t.origin < 0 || t.origin >= V || t.block < 0 || t.block >= P) {
      out.push_back(
          make(ConstraintTag::structural, "transmission index out of range"));
      continue;
    }
    if (t.sender == t.receiver)
      out.push_back(make(ConstraintTag::structural, "self reception",
                         {net.node_ids[t.sender]}));
    if (t.slot < 0 || t.slot >= sol.frame_length)
      out.push_back(make(ConstraintTag::structural,
                         "slot outside the frame",
                         {std::to_string(t.slot)}));
    if (!seen.insert(t).second)
      out.push_back(make(ConstraintTag::structural, "duplicate transmission",
                         {net.node_ids[t.sender], net.node_ids[t.receiver]}));
    if (!hosts(sol, t.block, t.origin))
      out.push_back(make(ConstraintTag::structural,
                         "transmission origin does not host the block",
                         {app.block_ids[t.block], net.node_ids[t.origin]}));
  }
  return out;
}

ValidationReport validate(const Solution& sol, const InfrastructureNetwork& net,
                          const OverlayApp& app, Mode mode) {
  ValidationReport rep;
  rep.violations = check_structure(sol, net, app);
  if (!rep.violations.empty()) {
    rep.ok = false;
    return rep;
  }
  auto append = [&rep](std::vector<Violation> v) {
    rep.violations.insert(rep.violations.end(),
                          std::make_move_iterator(v.begin()),
                          std::make_move_iterator(v.end()));
  };
  append(check_placement(sol, net, app));
  append(check_slot_exclusivity(sol, net));
  append(check_sinr(sol, net));
  append(check_flow(sol, net, app, mode));
  append(check_no_phantom_loops(sol, net, app));
  rep.ok = rep.violations.empty();
  return rep;
}

std::string format_report(const ValidationReport& report) {
  if (report.ok) return "valid\n";
  std::ostringstream os;
  os << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) {
    os << "  [" << to_string(v.tag) << "] " << v.detail;
    if (!v.entities.empty()) {
      os << " (";
      for (size_t i = 0; i < v.entities.size(); ++i)
        os << (i ? ", " : "") << v.entities[i];
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace wove
