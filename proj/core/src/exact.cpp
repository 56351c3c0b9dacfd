#include "wove/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "sched_internal.hpp"
#include "wove/util.hpp"

namespace wove {

namespace {

struct NodeLimitHit {};

constexpr double kEps = 1e-9;

struct WorkItem {
  int block;
  int dest;
};

// Edges worth scheduling: positive channel that decodes even with zero
// interference. Hops failing this can never pass the SINR check.
std::vector<std::vector<char>> usable_edges(const InfrastructureNetwork& net) {
  const int V = net.node_count();
  std::vector<std::vector<char>> adj(V, std::vector<char>(V, 0));
  for (int a = 0; a < V; ++a)
    for (int b = 0; b < V; ++b)
      if (a != b && net.gamma[a][b] > 0.0 &&
          net.gamma[a][b] / net.noise_floor >= net.sinr_threshold)
        adj[a][b] = 1;
  return adj;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

class ExactSearch {
 public:
  ExactSearch(const InfrastructureNetwork& net, const OverlayApp& app,
              const ExactConfig& cfg)
      : net_(net), app_(app), cfg_(cfg), adj_(usable_edges(net)),
        sched_(net) {}

  SolveResult run() {
    Stopwatch watch;
    SolveResult res;
    check_instance(net_, app_);
    const int budget_max = cfg_.slot_budget_max < 0
                               ? net_.max_slots
                               : std::min(cfg_.slot_budget_max, net_.max_slots);
    if (cfg_.slot_budget_start < 0)
      throw std::invalid_argument("slot_budget_start must be >= 0");
    if (cfg_.slot_budget_start > budget_max)
      throw std::invalid_argument("slot_budget_start exceeds slot_budget_max");

    const int start = std::max(cfg_.slot_budget_start, global_lower_bound());
    try {
      for (m_ = start; m_ <= budget_max; ++m_) {
        ++res.stats.budgets_tried;
        if (search_budget()) {
          res.status = SolveStatus::solved;
          Solution pruned = prune_redundant(best_, net_, app_, cfg_.mode);
          res.solution = pruned;
          break;
        }
      }
      if (!res.solution) res.status = SolveStatus::infeasible;
    } catch (const NodeLimitHit&) {
      res.status = SolveStatus::budget_exhausted;
    }
    res.stats.nodes_expanded = nodes_;
    res.stats.placements_tried = placements_tried_;
    res.stats.placements_pruned = placements_pruned_;
    res.stats.runtime_ms = watch.elapsed_ms();
    return res;
  }

 private:
  void tick() {
    if (++nodes_ > cfg_.node_limit) throw NodeLimitHit{};
  }

  // Sound start-of-sweep bound: producers with a link that cannot be
  // co-located on any capacity-feasible node each force at least one
  // reception, and one slot carries at most |V|-1 receptions.
  int global_lower_bound() const {
    const int V = net_.node_count();
    std::set<int> forced;
    for (const auto& [p1, p2] : app_.links) {
      if (cfg_.mode == Mode::strict || !colocatable(p1, p2)) forced.insert(p1);
    }
    if (forced.empty()) return 0;
    if (V <= 1) return net_.max_slots + 1;  // no wireless hop can ever exist
    return ceil_div(static_cast<int>(forced.size()), V - 1);
  }

  std::vector<int> allowed_hosts(int p) const {
    if (p == app_.source_block) return net_.source_nodes;
    if (p == app_.sink_block) return {net_.sink_node};
    std::vector<int> out;
    for (int v = 0; v < net_.node_count(); ++v)
      if (net_.capacities[v] + kEps >= app_.weights[p]) out.push_back(v);
    return out;
  }

  bool colocatable(int p1, int p2) const {
    const auto h1 = allowed_hosts(p1);
    const auto h2 = allowed_hosts(p2);
    for (int v : h1) {
      if (std::find(h2.begin(), h2.end(), v) == h2.end()) continue;
      if (net_.capacities[v] + kEps >= app_.weights[p1] + app_.weights[p2])
        return true;
    }
    return false;
  }

  bool search_budget() {
    placement_.assign(app_.block_count(), {});
    residual_ = net_.capacities;
    // Pin the artificial endpoints before enumerating the free blocks.
    for (int s : net_.source_nodes) {
      placement_[app_.source_block].push_back(s);
      residual_[s] -= app_.weights[app_.source_block];
    }
    placement_[app_.sink_block] = {net_.sink_node};
    residual_[net_.sink_node] -= app_.weights[app_.sink_block];
    for (double r : residual_)
      if (r < -kEps) return false;  // pinned blocks alone overflow a node
    return place_block(0);
  }

  bool place_block(int p) {
    if (p == app_.block_count()) return try_placement();
    if (p == app_.source_block || p == app_.sink_block)
      return place_block(p + 1);
    tick();
    for (int v = 0; v < net_.node_count(); ++v) {
      if (residual_[v] + kEps < app_.weights[p]) continue;
      placement_[p] = {v};
      residual_[v] -= app_.weights[p];
      if (place_block(p + 1)) return true;
      residual_[v] += app_.weights[p];
      placement_[p].clear();
    }
    return false;
  }

  bool try_placement() {
    ++placements_tried_;
    items_.clear();
    std::set<std::pair<int, int>> keys;
    for (const auto& [p1, p2] : app_.links) {
      for (int v : placement_[p2]) {
        if (cfg_.mode == Mode::relaxed && hosts(p1, v)) continue;
        keys.insert({p1, v});
      }
    }
    for (const auto& [p, v] : keys) items_.push_back({p, v});
    if (placement_lower_bound() > m_) {
      ++placements_pruned_;
      return false;
    }
    rx_count_.clear();
    chosen_.clear();
    return schedule_item(0);
  }

  bool hosts(int p, int v) const {
    const auto& h = placement_[p];
    return std::find(h.begin(), h.end(), v) != h.end();
  }

  int placement_lower_bound() const {
    const int V = net_.node_count();
    if (items_.empty()) return 0;
    if (V <= 1) return m_ + 1;
    std::vector<int> recv(V, 0);
    std::map<int, std::set<int>> forced_streams;  // node -> blocks it must send
    for (const auto& item : items_) {
      ++recv[item.dest];
      const auto& h = placement_[item.block];
      if (h.size() == 1) forced_streams[h[0]].insert(item.block);
    }
    int lb = ceil_div(static_cast<int>(items_.size()), V - 1);
    for (int v = 0; v < V; ++v) {
      int load = recv[v];
      auto it = forced_streams.find(v);
      if (it != forced_streams.end())
        load += static_cast<int>(it->second.size());
      lb = std::max(lb, load);
    }
    return lb;
  }

  bool delivered(const WorkItem& item) const {
    return rx_count_.count({item.block, item.dest}) != 0;
  }

  bool schedule_item(size_t i) {
    tick();
    const int V = net_.node_count();
    int missing = 0;
    for (size_t j = i; j < items_.size(); ++j)
      if (!delivered(items_[j])) ++missing;
    if (missing > 0) {
      // Every undelivered item still needs one reception, a slot carries at
      // most V-1 receptions, and receptions may join already-open slots
      // (multicast off an existing send), so bound by total leftover
      // reception capacity rather than by whole fresh slots.
      std::int64_t capacity =
          static_cast<std::int64_t>(m_ - sched_.used()) * std::max(0, V - 1);
      for (int t = 0; t < sched_.used(); ++t)
        capacity += std::max(0, (V - 1) - sched_.receptions_in(t));
      if (missing > capacity) return false;
    }
    if (i == items_.size()) {
      record_solution();
      return true;
    }
    if (delivered(items_[i])) return schedule_item(i + 1);
    const WorkItem& item = items_[i];
    for (int origin : placement_[item.block]) {
      std::vector<std::vector<int>> paths;
      detail::enumerate_paths(adj_, origin, item.dest, V, paths);
      for (const auto& path : paths)
        if (schedule_hop(item, i, origin, path, 0)) return true;
    }
    return false;
  }

  bool schedule_hop(const WorkItem& item, size_t i, int origin,
                    const std::vector<int>& path, size_t h) {
    if (h + 1 == path.size()) return schedule_item(i + 1);
    Transmission tx{path[h], path[h + 1], item.block, origin, -1};
    const std::array<int, 4> key{tx.sender, tx.receiver, tx.block, tx.origin};
    if (chosen_.count(key))  // hop already scheduled for another item
      return schedule_hop(item, i, origin, path, h + 1);
    const int top = std::min(sched_.used() + 1, m_);
    for (int t = 0; t < top; ++t) {
      tick();
      if (!sched_.can_add(t, tx)) continue;
      sched_.add(t, tx);
      chosen_.insert(key);
      rx_count_[{tx.block, tx.receiver}] += 1;
      if (schedule_hop(item, i, origin, path, h + 1)) return true;
      if (--rx_count_[{tx.block, tx.receiver}] == 0)
        rx_count_.erase({tx.block, tx.receiver});
      chosen_.erase(key);
      sched_.remove(t, tx);
    }
    return false;
  }

  void record_solution() {
    best_.placement = placement_;
    best_.transmissions = sched_.all_transmissions();
    best_.normalize();
    const auto rep = validate(best_, net_, app_, cfg_.mode);
    if (!rep.ok)
      throw std::logic_error("internal: constructed schedule fails validation");
  }

  const InfrastructureNetwork& net_;
  const OverlayApp& app_;
  const ExactConfig& cfg_;
  std::vector<std::vector<char>> adj_;
  detail::SlotSched sched_;

  int m_ = 0;
  std::vector<std::vector<int>> placement_;
  std::vector<double> residual_;
  std::vector<WorkItem> items_;
  std::set<std::array<int, 4>> chosen_;
  std::map<std::pair<int, int>, int> rx_count_;  // (block, node) -> receptions
  Solution best_;

  std::int64_t nodes_ = 0;
  std::int64_t placements_tried_ = 0;
  std::int64_t placements_pruned_ = 0;
};

}  // namespace

SolveResult solve_exact(const InfrastructureNetwork& net, const OverlayApp& app,
                        const ExactConfig& cfg) {
  ExactSearch search(net, app, cfg);
  return search.run();
}

Solution prune_redundant(const Solution& sol, const InfrastructureNetwork& net,
                         const OverlayApp& app, Mode mode) {
  Solution cur = sol;
  cur.normalize();
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < cur.transmissions.size(); ++i) {
      Solution cand = cur;
      cand.transmissions.erase(cand.transmissions.begin() + i);
      cand.normalize();
      if (validate(cand, net, app, mode).ok) {
        cur = std::move(cand);
        changed = true;
        break;
      }
    }
  }
  std::map<int, int> relabel;
  for (const auto& t : cur.transmissions) relabel[t.slot] = 0;
  int next = 0;
  for (auto& [slot, idx] : relabel) idx = next++;
  for (auto& t : cur.transmissions) t.slot = relabel[t.slot];
  cur.normalize();
  return cur;
}

// ---------------------------------------------------------------------------
// Independent reference search. Deliberately shares no search machinery with
// ExactSearch: own placement recursion, own bitmask path walker, and slot
// assignment via set partitions filtered through the public validator.

namespace {

using Hop = std::array<int, 4>;  // sender, receiver, block, origin

struct BfContext {
  const InfrastructureNetwork& net;
  const OverlayApp& app;
  const BruteForceConfig& cfg;
  int slot_cap;
  int best;  // objective of the best survivor so far
  Solution best_sol;
  bool found = false;
};

// All simple paths a -> b over gamma > 0 edges; a == b yields simple cycles.
void bf_paths(const InfrastructureNetwork& net, int a, int b,
              std::uint32_t visited, std::vector<int>& walk,
              std::vector<std::vector<int>>& out) {
  const int v = walk.back();
  for (int w = 0; w < net.node_count(); ++w) {
    if (net.gamma[v][w] <= 0.0) continue;
    if (w == b) {
      if (walk.size() > 1 || a != b) {
        walk.push_back(w);
        out.push_back(walk);
        walk.pop_back();
      }
      if (a == b) continue;
    }
    if (w == b) continue;
    if (visited & (1u << w)) continue;
    walk.push_back(w);
    bf_paths(net, a, b, visited | (1u << w), walk, out);
    walk.pop_back();
  }
}

std::vector<std::vector<int>> bf_paths(const InfrastructureNetwork& net, int a,
                                       int b) {
  std::vector<std::vector<int>> out;
  std::vector<int> walk{a};
  bf_paths(net, a, b, 1u << a, walk, out);
  return out;
}

// Candidate hop sequences that deliver `block` to `dest` under the placement,
// shortest first so good unions are met early and tighten the global bound.
std::vector<std::vector<Hop>> bf_candidates(const BfContext& ctx, int block,
                                            int dest,
                                            const std::vector<int>& hostsv) {
  std::vector<std::vector<Hop>> cands;
  for (int origin : hostsv) {
    for (const auto& path : bf_paths(ctx.net, origin, dest)) {
      std::vector<Hop> hops;
      for (size_t h = 0; h + 1 < path.size(); ++h)
        hops.push_back({path[h], path[h + 1], block, origin});
      cands.push_back(std::move(hops));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const std::vector<Hop>& a, const std::vector<Hop>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return cands;
}

// Group compatibility for one prospective slot (structural only — SINR and
// flow are judged by the validator afterwards).
bool bf_group_ok(const std::vector<Hop>& group, bool multicast) {
  for (size_t i = 0; i < group.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      const Hop& a = group[i];
      const Hop& b = group[j];
      if (a == b) return false;                      // would collapse
      if (a[1] == b[1]) return false;                // receiver decode clash
      if (a[0] == b[1] || a[1] == b[0]) return false;  // half duplex
      if (a[0] == b[0]) {
        if (!multicast) return false;                // fan-out limited to 1
        if (a[2] != b[2] || a[3] != b[3]) return false;  // two streams
      }
    }
  }
  return true;
}

// Assign every hop to one of at most k_max groups (restricted growth) and
// hand complete assignments to the validator; returns the smallest group
// count that validates, or -1.
struct BfPartition {
  const BfContext* ctx;
  const std::vector<Hop>* hops;
  const std::vector<std::vector<int>>* placement;
  int k_max;
  std::vector<std::vector<Hop>> groups;
  int found_k = -1;

  bool assign(size_t i) {
    if (i == hops->size()) {
      Solution sol;
      sol.placement = *placement;
      for (size_t g = 0; g < groups.size(); ++g)
        for (const Hop& h : groups[g])
          sol.transmissions.push_back(
              {h[0], h[1], h[2], h[3], static_cast<int>(g)});
      sol.normalize();
      if (!validate(sol, ctx->net, ctx->app, ctx->cfg.mode).ok) return false;
      found_k = static_cast<int>(groups.size());
      return true;
    }
    const Hop& h = (*hops)[i];
    for (size_t g = 0; g < groups.size(); ++g) {
      groups[g].push_back(h);
      if (bf_group_ok(groups[g], ctx->cfg.allow_multicast) && assign(i + 1))
        return true;
      groups[g].pop_back();
    }
    if (static_cast<int>(groups.size()) < k_max) {
      groups.push_back({h});
      if (assign(i + 1)) return true;
      groups.pop_back();
    }
    return false;
  }
};

// Structural lower bound on slots for a hop multiset.
int bf_bound(const std::vector<Hop>& hops, bool multicast) {
  std::map<int, std::set<std::pair<int, int>>> streams;  // sender -> contents
  std::map<int, int> out_hops, in_hops;
  for (const Hop& h : hops) {
    streams[h[0]].insert({h[2], h[3]});
    out_hops[h[0]] += 1;
    in_hops[h[1]] += 1;
  }
  int lb = 0;
  std::set<int> nodes;
  for (const auto& [v, _] : out_hops) nodes.insert(v);
  for (const auto& [v, _] : in_hops) nodes.insert(v);
  for (int v : nodes) {
    const int sends = multicast ? static_cast<int>(streams[v].size())
                                : out_hops[v];
    lb = std::max(lb, sends + in_hops[v]);
  }
  return lb;
}

struct BfItem {
  int block;
  int dest;
  std::vector<std::vector<Hop>> candidates;
};

// Choose one delivery candidate per item, accumulate the hop multiset, then
// try slot partitions below the current best.
void bf_combine(BfContext& ctx, const std::vector<BfItem>& items,
                const std::vector<std::vector<int>>& placement, size_t i,
                std::vector<Hop>& acc) {
  // Dedup a shared hop only when multicast semantics allow sharing.
  std::vector<Hop> uni;
  if (ctx.cfg.allow_multicast) {
    std::set<Hop> s(acc.begin(), acc.end());
    uni.assign(s.begin(), s.end());
  } else {
    uni = acc;
    std::sort(uni.begin(), uni.end());
  }
  if (bf_bound(uni, ctx.cfg.allow_multicast) >= ctx.best) return;
  if (i == items.size()) {
    const int hop_count = static_cast<int>(uni.size());
    if (hop_count == 0) {
      Solution sol;
      sol.placement = placement;
      sol.normalize();
      if (validate(sol, ctx.net, ctx.app, ctx.cfg.mode).ok) {
        ctx.best = 0;
        ctx.best_sol = sol;
        ctx.found = true;
      }
      return;
    }
    const int k_cap = std::min({ctx.slot_cap, hop_count, ctx.best - 1});
    const int k_lo = std::max(1, bf_bound(uni, ctx.cfg.allow_multicast));
    for (int k = k_lo; k <= k_cap; ++k) {
      BfPartition part{&ctx, &uni, &placement, k, {}, -1};
      if (part.assign(0)) {
        ctx.best = part.found_k;
        Solution sol;
        sol.placement = placement;
        for (size_t g = 0; g < part.groups.size(); ++g)
          for (const Hop& h : part.groups[g])
            sol.transmissions.push_back(
                {h[0], h[1], h[2], h[3], static_cast<int>(g)});
        sol.normalize();
        ctx.best_sol = sol;
        ctx.found = true;
        return;
      }
    }
    return;
  }
  for (const auto& cand : items[i].candidates) {
    const size_t mark = acc.size();
    acc.insert(acc.end(), cand.begin(), cand.end());
    bf_combine(ctx, items, placement, i + 1, acc);
    acc.resize(mark);
  }
}

void bf_try_placement(BfContext& ctx,
                      const std::vector<std::vector<int>>& placement) {
  std::vector<BfItem> items;
  std::set<std::pair<int, int>> keys;
  for (const auto& [p1, p2] : ctx.app.links) {
    for (int v : placement[p2]) {
      bool coloc = false;
      for (int h : placement[p1])
        if (h == v) { coloc = true; break; }
      if (ctx.cfg.mode == Mode::relaxed && coloc) continue;
      keys.insert({p1, v});
    }
  }
  for (const auto& [p, v] : keys) {
    BfItem item{p, v, bf_candidates(ctx, p, v, placement[p])};
    if (item.candidates.empty()) return;  // undeliverable under this placement
    items.push_back(std::move(item));
  }
  std::vector<Hop> acc;
  bf_combine(ctx, items, placement, 0, acc);
}

void bf_place(BfContext& ctx, int p, std::vector<std::vector<int>>& placement,
              std::vector<double>& residual) {
  if (p == ctx.app.block_count()) {
    bf_try_placement(ctx, placement);
    return;
  }
  if (p == ctx.app.source_block || p == ctx.app.sink_block) {
    bf_place(ctx, p + 1, placement, residual);
    return;
  }
  for (int v = 0; v < ctx.net.node_count(); ++v) {
    if (residual[v] + kEps < ctx.app.weights[p]) continue;
    placement[p] = {v};
    residual[v] -= ctx.app.weights[p];
    bf_place(ctx, p + 1, placement, residual);
    residual[v] += ctx.app.weights[p];
    placement[p].clear();
  }
}

}  // namespace

SolveResult brute_force(const InfrastructureNetwork& net, const OverlayApp& app,
                        const BruteForceConfig& cfg) {
  Stopwatch watch;
  check_instance(net, app);
  SolveResult res;
  const int slot_cap =
      cfg.slot_cap < 0 ? net.max_slots : std::min(cfg.slot_cap, net.max_slots);
  BfContext ctx{net, app, cfg, slot_cap, slot_cap + 1, {}, false};

  std::vector<std::vector<int>> placement(app.block_count());
  std::vector<double> residual = net.capacities;
  for (int s : net.source_nodes) {
    placement[app.source_block].push_back(s);
    residual[s] -= app.weights[app.source_block];
  }
  placement[app.sink_block] = {net.sink_node};
  residual[net.sink_node] -= app.weights[app.sink_block];
  bool pinned_ok = true;
  for (double r : residual)
    if (r < -kEps) pinned_ok = false;
  if (pinned_ok) bf_place(ctx, 0, placement, residual);

  if (ctx.found) {
    res.status = SolveStatus::solved;
    res.solution = ctx.best_sol;
  } else {
    res.status = SolveStatus::infeasible;
  }
  res.stats.runtime_ms = watch.elapsed_ms();
  return res;
}

}  // namespace wove
