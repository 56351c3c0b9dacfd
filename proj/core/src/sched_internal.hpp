#pragma once

// Internal incremental slot schedule shared by the solvers (not installed).

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "wove/model.hpp"
#include "wove/radio.hpp"

namespace wove::detail {

// Mutable per-slot schedule with joint feasibility checks. Slots are opened
// in first-use order; additions/removals must follow LIFO discipline so an
// emptied slot is always the last one.
class SlotSched {
public:
  explicit SlotSched(const InfrastructureNetwork& net) : net_(&net) {}

  int used() const { return static_cast<int>(slots_.size()); }

  int receptions_in(int t) const {
    return static_cast<int>(slots_[t].txs.size());
  }

  // Whether `sender` already transmits exactly (block, origin) in slot t.
  bool sends_stream(int t, int sender, int block, int origin) const {
    auto it = slots_[t].stream.find(sender);
    return it != slots_[t].stream.end() &&
           it->second == std::make_pair(block, origin);
  }

  // Whether `tx` (slot field ignored) may join slot t; t == used() probes a
  // fresh slot. `max_fanout_one` additionally forbids a second reception by
  // the same sender (used by the unicast-only reference search).
  bool can_add(int t, const Transmission& tx, bool max_fanout_one = false) const {
    if (t == used()) {
      SlotLoad load;
      load.active_senders.insert(tx.sender);
      load.receptions.push_back({tx.sender, tx.receiver});
      return slot_feasible(load, *net_);
    }
    const Slot& slot = slots_[t];
    auto st = slot.stream.find(tx.sender);
    if (st != slot.stream.end()) {
      if (st->second != std::make_pair(tx.block, tx.origin)) return false;
      if (max_fanout_one) return false;
    }
    if (slot.receivers.count(tx.receiver)) return false;
    if (slot.stream.count(tx.receiver)) return false;   // receiver would tx
    if (slot.receivers.count(tx.sender)) return false;  // sender would rx
    SlotLoad load = make_load(slot);
    load.active_senders.insert(tx.sender);
    load.receptions.push_back({tx.sender, tx.receiver});
    return slot_feasible(load, *net_);
  }

  void add(int t, const Transmission& tx) {
    if (t == used()) slots_.emplace_back();
    Slot& slot = slots_[t];
    slot.stream[tx.sender] = {tx.block, tx.origin};
    slot.send_count[tx.sender] += 1;
    slot.receivers.insert(tx.receiver);
    Transmission stored = tx;
    stored.slot = t;
    slot.txs.push_back(stored);
  }

  void remove(int t, const Transmission& tx) {
    Slot& slot = slots_[t];
    Transmission stored = tx;
    stored.slot = t;
    auto it = std::find(slot.txs.rbegin(), slot.txs.rend(), stored);
    assert(it != slot.txs.rend());
    slot.txs.erase(std::next(it).base());
    if (--slot.send_count[tx.sender] == 0) {
      slot.send_count.erase(tx.sender);
      slot.stream.erase(tx.sender);
    }
    bool still_receives = false;
    for (const auto& other : slot.txs)
      if (other.receiver == tx.receiver) { still_receives = true; break; }
    if (!still_receives) slot.receivers.erase(tx.receiver);
    if (slot.txs.empty()) {
      assert(t == used() - 1);
      slots_.pop_back();
    }
  }

  std::vector<Transmission> all_transmissions() const {
    std::vector<Transmission> out;
    for (const auto& slot : slots_)
      out.insert(out.end(), slot.txs.begin(), slot.txs.end());
    return out;
  }

private:
  struct Slot {
    std::map<int, std::pair<int, int>> stream;  // sender -> (block, origin)
    std::map<int, int> send_count;
    std::set<int> receivers;
    std::vector<Transmission> txs;
  };

  static SlotLoad make_load(const Slot& slot) {
    SlotLoad load;
    for (const auto& [sender, _] : slot.stream)
      load.active_senders.insert(sender);
    for (const auto& tx : slot.txs)
      load.receptions.push_back({tx.sender, tx.receiver});
    return load;
  }

  const InfrastructureNetwork* net_;
  std::vector<Slot> slots_;
};

// Simple-path enumeration over an adjacency mask, ascending neighbor order.
// Collects node sequences from -> to with 1..max_edges edges that never pass
// through `to` mid-way. With from == to it collects simple cycles instead
// (start repeated as the final node, >= 2 edges).
inline void enumerate_paths(const std::vector<std::vector<char>>& adj, int from,
                            int to, int max_edges,
                            std::vector<std::vector<int>>& out) {
  const int n = static_cast<int>(adj.size());
  if (max_edges <= 0) return;
  std::vector<int> path{from};
  std::vector<char> visited(n, 0);
  visited[from] = 1;
  auto rec = [&](auto&& self, int v, int edges) -> void {
    for (int w = 0; w < n; ++w) {
      if (!adj[v][w]) continue;
      if (w == to) {
        if (edges + 1 <= max_edges) {
          path.push_back(w);
          out.push_back(path);
          path.pop_back();
        }
        continue;
      }
      if (visited[w] || edges + 1 >= max_edges) continue;
      visited[w] = 1;
      path.push_back(w);
      self(self, w, edges + 1);
      path.pop_back();
      visited[w] = 0;
    }
  };
  rec(rec, from, 0);
}

}  // namespace wove::detail
