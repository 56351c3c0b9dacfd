#include "wove/heuristic.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "sched_internal.hpp"

namespace wove {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

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

detail::SlotSched replay(const SearchState& st,
                         const InfrastructureNetwork& net) {
  detail::SlotSched sched(net);
  std::map<int, std::vector<Transmission>> by_slot;
  for (const auto& t : st.transmissions) by_slot[t.slot].push_back(t);
  for (const auto& [slot, txs] : by_slot)
    for (const auto& tx : txs) sched.add(slot, tx);
  return sched;
}

bool received_block(const SearchState& st, int block, int node) {
  for (const auto& t : st.transmissions)
    if (t.block == block && t.receiver == node) return true;
  return false;
}

// Depth-first route enumeration expanding only the k strongest-channel
// unvisited neighbors at every node. Two uses:
//  - target >= 0: paths ending at `target` (with target == start: cycles)
//  - target < 0:  every prefix is reported (consumer placement search)
void kbest_walks(const InfrastructureNetwork& net,
                 const std::vector<std::vector<char>>& adj, int start,
                 int target, int k, int max_hops, bool report_prefixes,
                 std::vector<std::vector<int>>& out) {
  const int V = net.node_count();
  std::vector<int> walk{start};
  std::vector<char> visited(V, 0);
  visited[start] = 1;
  auto rec = [&](auto&& self, int u, int edges) -> void {
    if (report_prefixes) out.push_back(walk);
    if (edges == max_hops) return;
    std::vector<int> nbrs;
    for (int w = 0; w < V; ++w) {
      if (!adj[u][w]) continue;
      if (w == target && (target != start || edges >= 1)) {
        nbrs.push_back(w);  // terminal hop; allowed even if "visited" (cycle)
        continue;
      }
      if (!visited[w]) nbrs.push_back(w);
    }
    std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
      if (net.gamma[u][a] != net.gamma[u][b])
        return net.gamma[u][a] > net.gamma[u][b];
      return a < b;
    });
    if (k > 0 && static_cast<int>(nbrs.size()) > k) nbrs.resize(k);
    for (int w : nbrs) {
      walk.push_back(w);
      if (w == target) {
        out.push_back(walk);
        walk.pop_back();
        continue;  // never extend past the target
      }
      visited[w] = 1;
      self(self, w, edges + 1);
      visited[w] = 0;
      walk.pop_back();
    }
  };
  rec(rec, start, 0);
}

}  // namespace

std::vector<int> order_links(const OverlayApp& app) {
  const int P = app.block_count();
  const int L = app.link_count();
  std::vector<std::vector<std::pair<int, int>>> adj(P);  // (succ, link idx)
  for (int i = 0; i < L; ++i)
    adj[app.links[i].first].push_back({app.links[i].second, i});
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // DFS edge classification: an edge into a block on the current stack closes
  // a feedback cycle and is deferred to the end of the processing order.
  std::vector<char> color(P, 0);  // 0 new, 1 on stack, 2 done
  std::vector<char> is_back(L, 0);
  auto dfs = [&](auto&& self, int u) -> void {
    color[u] = 1;
    for (const auto& [v, i] : adj[u]) {
      if (color[v] == 1)
        is_back[i] = 1;
      else if (color[v] == 0)
        self(self, v);
    }
    color[u] = 2;
  };
  dfs(dfs, app.source_block);
  for (int p = 0; p < P; ++p)
    if (color[p] == 0) dfs(dfs, p);

  // Topological positions of the blocks ignoring feedback edges.
  std::vector<int> indeg(P, 0);
  for (int i = 0; i < L; ++i)
    if (!is_back[i]) ++indeg[app.links[i].second];
  std::set<int> ready;
  for (int p = 0; p < P; ++p)
    if (indeg[p] == 0) ready.insert(p);
  std::vector<int> pos(P, 0);
  int next = 0;
  while (!ready.empty()) {
    const int u = *ready.begin();
    ready.erase(ready.begin());
    pos[u] = next++;
    for (const auto& [v, i] : adj[u])
      if (!is_back[i] && --indeg[v] == 0) ready.insert(v);
  }

  auto key = [&](int i) {
    const auto& [a, b] = app.links[i];
    return std::array<int, 5>{is_back[i], pos[a], pos[b], a, b};
  };
  std::vector<int> order(L);
  for (int i = 0; i < L; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return key(x) < key(y); });
  return order;
}

bool schedule_path(SearchState& state, const Candidate& cand,
                   const InfrastructureNetwork& net, const OverlayApp& app,
                   const HeuristicParams& params) {
  const auto [p1, p2] = app.links[cand.link_index];
  if (cand.places_dest) {
    if (state.residual[cand.dest_host] + kEps < app.weights[p2]) return false;
    state.placement[p2] = {cand.dest_host};
    state.residual[cand.dest_host] -= app.weights[p2];
  }
  if (cand.path.size() < 2) return true;

  auto sched = replay(state, net);
  std::set<std::array<int, 4>> present;
  for (const auto& t : state.transmissions)
    present.insert({t.sender, t.receiver, t.block, t.origin});

  const int origin = cand.path.front();
  for (size_t h = 0; h + 1 < cand.path.size(); ++h) {
    Transmission tx{cand.path[h], cand.path[h + 1], p1, origin, -1};
    const std::array<int, 4> key{tx.sender, tx.receiver, tx.block, tx.origin};
    if (present.count(key)) continue;  // this hop already flows

    int placed = -1;
    // Multicast pass: join a slot where the sender already emits this stream.
    for (int t = 0; t < sched.used() && placed < 0; ++t)
      if (sched.sends_stream(t, tx.sender, tx.block, tx.origin) &&
          sched.can_add(t, tx))
        placed = t;
    for (int t = 0; t < sched.used() && placed < 0; ++t)
      if (sched.can_add(t, tx)) placed = t;
    if (placed < 0 && sched.used() < net.max_slots &&
        sched.can_add(sched.used(), tx))
      placed = sched.used();
    if (placed < 0) return false;

    sched.add(placed, tx);
    present.insert(key);
    tx.slot = placed;
    state.transmissions.push_back(tx);
  }
  state.slots_used = sched.used();
  return true;
}

std::vector<Candidate> candidate_mappings(const SearchState& state,
                                          int link_index,
                                          const InfrastructureNetwork& net,
                                          const OverlayApp& app,
                                          const HeuristicParams& params) {
  const auto [p1, p2] = app.links[link_index];
  const auto adj = usable_edges(net);
  const int max_hops = params.max_path_hops <= 0 ? net.node_count() - 1
                                                 : params.max_path_hops;
  std::vector<Candidate> raw;
  auto coloc = [&](int v) {
    const auto& h = state.placement[p1];
    return std::find(h.begin(), h.end(), v) != h.end();
  };

  if (!state.placement[p2].empty()) {
    for (int v : state.placement[p2]) {
      const bool satisfied =
          received_block(state, p1, v) ||
          (params.mode == Mode::relaxed && coloc(v));
      if (satisfied) {
        raw.push_back({link_index, {v}, p2, v, false, 0.0});
        continue;
      }
      for (int origin : state.placement[p1]) {
        std::vector<std::vector<int>> walks;
        kbest_walks(net, adj, origin, v, params.k, max_hops, false, walks);
        for (auto& w : walks)
          raw.push_back({link_index, std::move(w), p2, v, false, 0.0});
      }
    }
  } else {
    for (int origin : state.placement[p1]) {
      std::vector<std::vector<int>> walks;
      kbest_walks(net, adj, origin, -1, params.k, max_hops, true, walks);
      for (auto& w : walks) {
        if (params.mode == Mode::strict && w.size() < 2) continue;
        const int end = w.back();
        if (state.residual[end] + kEps < app.weights[p2]) continue;
        raw.push_back({link_index, std::move(w), p2, end, true, 0.0});
      }
    }
  }

  std::vector<Candidate> out;
  for (auto& cand : raw) {
    SearchState probe = state;
    if (!schedule_path(probe, cand, net, app, params)) continue;
    cand.cost = probe.slots_used;
    out.push_back(std::move(cand));
  }
  return out;
}

namespace {

struct StepFrame {
  SearchState before;
  std::vector<Candidate> cands;
  std::vector<size_t> order;  // candidate indices in retry order
  size_t next = 0;            // next alternative after the committed one
};

class Lookahead {
 public:
  Lookahead(const InfrastructureNetwork& net, const OverlayApp& app,
            const HeuristicParams& params)
      : net_(net), app_(app), params_(params), rng_(params.seed) {}

  HeuristicResult run() {
    Stopwatch watch;
    HeuristicResult res;
    check_instance(net_, app_);
    if (params_.level < 1)
      throw std::invalid_argument("lookahead level must be >= 1");
    if (params_.k < 0) throw std::invalid_argument("k must be >= 0");

    link_order_ = order_links(app_);
    SearchState state = initial_state();
    bool pinned_ok = true;
    for (double r : state.residual)
      if (r < -kEps) pinned_ok = false;

    std::vector<StepFrame> stack;
    std::int64_t budget = params_.backtrack_budget;
    bool dead = !pinned_ok;
    while (pinned_ok) {
      if (!dead && state.next_link == app_.link_count()) {
        if (!finish(state, res)) {
          dead = true;
          continue;
        }
        res.status = SolveStatus::solved;
        break;
      }
      if (!dead) {
        StepFrame frame;
        frame.before = state;
        if (!expand(state, frame)) {
          dead = true;
          continue;
        }
        commit(state, frame.cands[frame.order[0]]);
        frame.next = 1;
        stack.push_back(std::move(frame));
        continue;
      }
      // Backtrack: revisit the most recent decision with alternatives left.
      if (stack.empty()) {
        res.status = SolveStatus::infeasible;
        break;
      }
      if (budget == 0) {
        res.status = SolveStatus::budget_exhausted;
        break;
      }
      --budget;
      ++stats_.backtracks;
      StepFrame frame = std::move(stack.back());
      stack.pop_back();
      state = frame.before;
      if (frame.next < frame.order.size()) {
        commit(state, frame.cands[frame.order[frame.next]]);
        ++frame.next;
        stack.push_back(std::move(frame));
        dead = false;
      }
    }
    if (!pinned_ok) res.status = SolveStatus::infeasible;
    res.stats = stats_;
    res.stats.runtime_ms = watch.elapsed_ms();
    return res;
  }

 private:
  SearchState initial_state() const {
    SearchState st;
    st.placement.assign(app_.block_count(), {});
    st.residual = net_.capacities;
    for (int s : net_.source_nodes) {
      st.placement[app_.source_block].push_back(s);
      st.residual[s] -= app_.weights[app_.source_block];
    }
    st.placement[app_.sink_block] = {net_.sink_node};
    st.residual[net_.sink_node] -= app_.weights[app_.sink_block];
    return st;
  }

  // Evaluates the next decision with `level`-deep lookahead; fills
  // frame.cands/order and returns false when the position is dead.
  bool expand(const SearchState& state, StepFrame& frame) {
    const int remaining = app_.link_count() - state.next_link;
    const int window = std::min(params_.level, remaining);
    const bool endgame = window == remaining;

    ++stats_.expansions;
    frame.cands = candidate_mappings(state, link_order_[state.next_link], net_,
                                     app_, params_);
    stats_.candidates_generated += static_cast<std::int64_t>(frame.cands.size());
    if (stats_.first_expansion_candidates == 0 && stats_.expansions == 1)
      stats_.first_expansion_candidates =
          static_cast<std::int64_t>(frame.cands.size());
    if (frame.cands.empty()) return false;

    double best = kInf;
    std::vector<double> score(frame.cands.size(), kInf);
    for (size_t c = 0; c < frame.cands.size(); ++c) {
      SearchState probe = state;
      commit_probe(probe, frame.cands[c]);
      score[c] = window_best(probe, window - 1, endgame, best);
      best = std::min(best, score[c]);
    }
    if (best == kInf) return false;

    frame.order.resize(frame.cands.size());
    for (size_t c = 0; c < frame.order.size(); ++c) frame.order[c] = c;
    std::stable_sort(frame.order.begin(), frame.order.end(),
                     [&](size_t a, size_t b) { return score[a] < score[b]; });
    while (!frame.order.empty() && score[frame.order.back()] == kInf)
      frame.order.pop_back();

    size_t ties = 0;
    while (ties < frame.order.size() &&
           score[frame.order[ties]] == score[frame.order[0]])
      ++ties;
    if (ties > 1) {
      const size_t pick = static_cast<size_t>(
          rng_.uniform_int(0, static_cast<std::int64_t>(ties) - 1));
      std::rotate(frame.order.begin(), frame.order.begin() + pick,
                  frame.order.begin() + pick + 1);
    }
    return true;
  }

  // Best total-slot cost of any leaf within `depth` further links.
  double window_best(const SearchState& state, int depth, bool endgame,
                     double& global_best) {
    if (endgame && state.slots_used > global_best) return kInf;
    if (depth == 0 || state.next_link == app_.link_count()) {
      ++stats_.leaves_evaluated;
      global_best = std::min(global_best,
                             static_cast<double>(state.slots_used));
      return state.slots_used;
    }
    ++stats_.expansions;
    auto cands = candidate_mappings(state, link_order_[state.next_link], net_,
                                    app_, params_);
    stats_.candidates_generated += static_cast<std::int64_t>(cands.size());
    double best = kInf;
    for (const auto& cand : cands) {
      SearchState probe = state;
      commit_probe(probe, cand);
      best = std::min(best, window_best(probe, depth - 1, endgame, global_best));
    }
    return best;
  }

  void commit_probe(SearchState& state, const Candidate& cand) {
    const bool ok = schedule_path(state, cand, net_, app_, params_);
    if (!ok) throw std::logic_error("internal: vetted candidate failed");
    state.next_link += 1;
  }

  void commit(SearchState& state, const Candidate& cand) {
    commit_probe(state, cand);
  }

  // Hosts any unplaced (link-free) block, rebuilds the canonical solution,
  // and trims idle transmissions.
  bool finish(SearchState& state, HeuristicResult& res) {
    for (int p = 0; p < app_.block_count(); ++p) {
      if (!state.placement[p].empty()) continue;
      int host = -1;
      for (int v = 0; v < net_.node_count(); ++v)
        if (state.residual[v] + kEps >= app_.weights[p]) { host = v; break; }
      if (host < 0) return false;
      state.placement[p] = {host};
      state.residual[host] -= app_.weights[p];
    }
    Solution sol;
    sol.placement = state.placement;
    sol.transmissions = state.transmissions;
    sol.normalize();
    sol = prune_redundant(sol, net_, app_, params_.mode);
    const auto rep = validate(sol, net_, app_, params_.mode);
    if (!rep.ok)
      throw std::logic_error("internal: constructed embedding fails checks");
    res.solution = sol;
    return true;
  }

  const InfrastructureNetwork& net_;
  const OverlayApp& app_;
  const HeuristicParams& params_;
  Rng rng_;
  std::vector<int> link_order_;
  HeuristicStats stats_;
};

}  // namespace

HeuristicResult solve_heuristic(const InfrastructureNetwork& net,
                                const OverlayApp& app,
                                const HeuristicParams& params) {
  Lookahead search(net, app, params);
  return search.run();
}

}  // namespace wove
