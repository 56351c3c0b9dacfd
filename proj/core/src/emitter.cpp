#include "wove/emitter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wove {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("dyadic numerator overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("dyadic numerator overflow in multiplication");
  return r;
}

std::int64_t checked_shl(std::int64_t v, int by) {
  std::int64_t r = v;
  for (int i = 0; i < by; ++i) r = checked_mul(r, 2);
  return r;
}

}  // namespace

Dyadic Dyadic::half_pow(int i) {
  if (i < 0 || i > 62)
    throw std::invalid_argument("dyadic exponent out of range");
  return Dyadic{1, i};
}

Dyadic Dyadic::normalized() const {
  Dyadic d = *this;
  if (d.num == 0) return {0, 0};
  while (d.k > 0 && d.num % 2 == 0) {
    d.num /= 2;
    --d.k;
  }
  return d;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  const int kk = std::max(k, o.k);
  const std::int64_t a = checked_shl(num, kk - k);
  const std::int64_t b = checked_shl(o.num, kk - o.k);
  return Dyadic{checked_add(a, b), kk}.normalized();
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  if (k + o.k > 62) throw std::overflow_error("dyadic exponent overflow");
  return Dyadic{checked_mul(num, o.num), k + o.k}.normalized();
}

double Dyadic::to_double() const { return std::ldexp(double(num), -k); }

std::string Dyadic::to_string() const {
  const Dyadic d = normalized();
  if (d.k > 59) throw std::overflow_error("dyadic exponent too large to print");
  std::string out;
  std::uint64_t mag = d.num < 0 ? std::uint64_t(-(d.num + 1)) + 1
                                : std::uint64_t(d.num);
  if (d.num < 0) out.push_back('-');
  const std::uint64_t mask = d.k == 0 ? 0 : ((std::uint64_t(1) << d.k) - 1);
  out += std::to_string(mag >> d.k);
  std::uint64_t rem = mag & mask;
  if (rem != 0) {
    out.push_back('.');
    while (rem != 0) {
      rem *= 10;
      out.push_back(char('0' + (rem >> d.k)));
      rem &= mask;
    }
  }
  return out;
}

std::string coeff_to_string(double v) {
  if (v == 0.0) return "0";
  // Dyadic-valued doubles (all the averaging-encoding constants) get an
  // exact decimal expansion.
  for (int k = 0; k <= 50; ++k) {
    const double scaled = std::ldexp(v, k);
    if (std::abs(scaled) > 4.5e15) break;
    if (scaled == std::floor(scaled))
      return Dyadic{std::int64_t(scaled), k}.to_string();
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void LinExpr::add(int var, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = coeffs.emplace(var, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) coeffs.erase(it);
  }
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  for (const auto& [var, c] : o.coeffs) add(var, c);
  constant += o.constant;
  return *this;
}

int VarLayout::theta(int p, int v) const { return p * V + v; }

int VarLayout::f(int p, int v, int t) const {
  return P * V + (p * V + v) * T + t;
}

int VarLayout::s(int v1, int v2, int p, int v3, int t) const {
  return P * V + P * V * T + (((v1 * V + v2) * P + p) * V + v3) * T + t;
}

int VarLayout::beta(int t) const {
  return P * V + P * V * T + V * V * P * V * T + t;
}

std::int64_t VarLayout::total() const {
  const std::int64_t p = P, v = V, t = T;
  return p * v + p * v * t + v * v * p * v * t + t;
}

std::string VarLayout::name(int var) const {
  char buf[96];
  int x = var;
  if (x < P * V) {
    std::snprintf(buf, sizeof buf, "theta_%d_%d", x / V, x % V);
    return buf;
  }
  x -= P * V;
  if (x < P * V * T) {
    std::snprintf(buf, sizeof buf, "f_%d_%d_%d", x / (V * T), (x / T) % V,
                  x % T);
    return buf;
  }
  x -= P * V * T;
  if (std::int64_t(x) < std::int64_t(V) * V * P * V * T) {
    const int t = x % T;
    x /= T;
    const int v3 = x % V;
    x /= V;
    const int p = x % P;
    x /= P;
    std::snprintf(buf, sizeof buf, "s_%d_%d_%d_%d_%d", x / V, x % V, p, v3, t);
    return buf;
  }
  x -= V * V * P * V * T;
  std::snprintf(buf, sizeof buf, "beta_%d", x);
  return buf;
}

LinExpr conjunction_expr(const std::vector<int>& vars) {
  if (vars.empty())
    throw std::invalid_argument("conjunction over zero variables");
  if (vars.size() > 60)
    throw std::invalid_argument("conjunction too wide for exact encoding");
  LinExpr e;
  e.constant = Dyadic::half_pow(int(vars.size())).to_double();
  for (std::size_t i = 0; i < vars.size(); ++i)
    e.add(vars[i], Dyadic::half_pow(int(i) + 1).to_double());
  return e;
}

LinExpr disjunction_expr(const std::vector<int>& vars) {
  if (vars.empty())
    throw std::invalid_argument("disjunction over zero variables");
  if (vars.size() > 60)
    throw std::invalid_argument("disjunction too wide for exact encoding");
  LinExpr e;
  e.constant = 0.5;
  for (std::size_t i = 0; i < vars.size(); ++i)
    e.add(vars[i], Dyadic::half_pow(int(i) + 1).to_double());
  return e;
}

namespace {

struct TrackCtx {
  const VarLayout& L;
  const InfrastructureNetwork& net;
  int p;
  int v;  // origin node hosting p
  int max_len;
  LinExpr total;
  std::vector<std::vector<int>> paths;
  std::vector<char> visited;
  std::vector<int> chain;  // walk so far, start node first
};

LinExpr sends_over_time(const TrackCtx& c, int a, int b) {
  LinExpr e;
  for (int t = 0; t < c.L.T; ++t) e.add(c.L.s(a, b, c.p, c.v, t), 1.0);
  return e;
}

LinExpr halved(LinExpr e) {
  LinExpr out;
  out.constant = e.constant / 2.0;
  for (const auto& [var, coef] : e.coeffs) out.coeffs.emplace(var, coef / 2.0);
  return out;
}

// Recursive averaging walk: from the current node v1 step backwards over
// positive-attenuation edges until the origin is reached; every complete
// route contributes one term whose value is exactly 1 iff every edge of the
// route carries a send of this commodity.
void track(TrackCtx& c, int v1, int v2, const LinExpr& r) {
  if (v1 == c.v) {
    LinExpr term = sends_over_time(c, v1, v2);
    term += r;
    c.total += halved(std::move(term));
    std::vector<int> path = c.chain;
    path.push_back(v1);
    std::reverse(path.begin(), path.end());
    c.paths.push_back(std::move(path));
    return;
  }
  if (int(c.chain.size()) >= c.max_len)
    throw std::runtime_error(
        "route enumeration exceeded the exact-coefficient length budget (" +
        std::to_string(c.max_len) + " edges)");
  c.visited[v1] = 1;
  c.chain.push_back(v1);
  for (int vi = 0; vi < c.net.node_count(); ++vi) {
    if (c.visited[vi] || c.net.gamma[vi][v1] <= 0.0) continue;
    LinExpr r_new = sends_over_time(c, vi, v1);
    r_new += r;
    track(c, vi, v1, halved(std::move(r_new)));
  }
  c.chain.pop_back();
  c.visited[v1] = 0;
}

}  // namespace

ReachResult reachability_expression(const VarLayout& layout,
                                    const InfrastructureNetwork& net, int v1,
                                    int v2, int p, int v,
                                    const EmitterOptions& opts,
                                    const std::vector<int>& exclude) {
  const int V = net.node_count();
  if (v1 < 0 || v1 >= V || v2 < 0 || v2 >= V || v < 0 || v >= V || p < 0 ||
      p >= layout.P)
    throw std::invalid_argument("reachability expression index out of range");
  TrackCtx ctx{layout, net,
               p,      v,
               opts.max_path_len, {}, {}, std::vector<char>(V, 0), {}};
  for (int e : exclude) {
    if (e < 0 || e >= V)
      throw std::invalid_argument("excluded node out of range");
    ctx.visited[e] = 1;
  }
  LinExpr one;
  one.constant = 1.0;
  track(ctx, v1, v2, one);
  return ReachResult{std::move(ctx.total), std::move(ctx.paths)};
}

namespace {

std::string cname(const char* fam, std::initializer_list<int> idx) {
  std::string s = fam;
  for (int i : idx) {
    s.push_back('_');
    s += std::to_string(i);
  }
  return s;
}

}  // namespace

ConstraintModel build_model(const InfrastructureNetwork& net,
                            const OverlayApp& app,
                            const EmitterOptions& opts) {
  check_instance(net, app);
  const int V = net.node_count();
  const int P = app.block_count();
  const int T = net.max_slots;
  if (T <= 0) throw std::invalid_argument("model needs at least one slot");
  VarLayout L{P, V, T};
  if (L.total() > opts.var_cap)
    throw std::runtime_error("model would need " + std::to_string(L.total()) +
                             " variables, over the cap of " +
                             std::to_string(opts.var_cap));
  const double M =
      opts.big_m > 0 ? opts.big_m : double(V) * double(V) * double(T) + 1.0;
  const double th = net.sinr_threshold;
  const double noise = net.noise_floor;

  ConstraintModel model;
  model.layout = L;
  model.big_m = M;

  // --- pinned variables ---
  // Self-transmission can never happen.
  for (int v = 0; v < V; ++v)
    for (int p = 0; p < P; ++p)
      for (int v3 = 0; v3 < V; ++v3)
        for (int t = 0; t < T; ++t)
          model.pinned[L.s(v, v, p, v3, t)] = VarBounds{0.0, 0.0};
  // The entry block is hosted on every source node and nowhere else; the
  // collector block sits on the sink.
  for (int v = 0; v < V; ++v) {
    const bool is_src = std::binary_search(net.source_nodes.begin(),
                                           net.source_nodes.end(), v);
    model.pinned[L.theta(app.source_block, v)] =
        is_src ? VarBounds{1.0, 1.0} : VarBounds{0.0, 0.0};
  }
  model.pinned[L.theta(app.sink_block, net.sink_node)] = VarBounds{1.0, 1.0};

  auto& C = model.constraints;

  // Forwarding indicator bracketing: f(p,v,t) is up iff some send leaves.
  for (int p = 0; p < P; ++p)
    for (int v = 0; v < V; ++v)
      for (int t = 0; t < T; ++t) {
        LinExpr sends;
        for (int vi = 0; vi < V; ++vi) {
          if (vi == v) continue;
          for (int vj = 0; vj < V; ++vj)
            sends.add(L.s(v, vi, p, vj, t), 1.0);
        }
        Constraint lb;
        lb.name = cname("fwd_lb", {v, p, t});
        lb.lin = sends;
        lb.lin.add(L.f(p, v, t), -1.0);
        lb.sense = Sense::ge;
        lb.rhs = 0.0;
        C.push_back(std::move(lb));
        Constraint ub;
        ub.name = cname("fwd_ub", {v, p, t});
        ub.lin = std::move(sends);
        ub.lin.add(L.f(p, v, t), -M);
        ub.sense = Sense::le;
        ub.rhs = 0.0;
        C.push_back(std::move(ub));
      }

  // Slot-usage bracketing: beta(t) is up iff the slot carries anything.
  for (int t = 0; t < T; ++t) {
    LinExpr all;
    for (int v1 = 0; v1 < V; ++v1)
      for (int v2 = 0; v2 < V; ++v2)
        for (int p = 0; p < P; ++p)
          for (int v3 = 0; v3 < V; ++v3) all.add(L.s(v1, v2, p, v3, t), 1.0);
    Constraint ub;
    ub.name = cname("slot_ub", {t});
    ub.lin = all;
    ub.lin.add(L.beta(t), -M);
    ub.sense = Sense::le;
    ub.rhs = 0.0;
    C.push_back(std::move(ub));
    Constraint lb;
    lb.name = cname("slot_lb", {t});
    lb.lin = std::move(all);
    lb.lin.add(L.beta(t), -1.0);
    lb.sense = Sense::ge;
    lb.rhs = 0.0;
    C.push_back(std::move(lb));
  }

  // Every block except the (multi-hosted) entry block lives on one node.
  for (int p = 0; p < P; ++p) {
    if (p == app.source_block) continue;
    Constraint c;
    c.name = cname("place_once", {p});
    for (int v = 0; v < V; ++v) c.lin.add(L.theta(p, v), 1.0);
    c.sense = Sense::eq;
    c.rhs = 1.0;
    C.push_back(std::move(c));
  }

  // Node compute capacity.
  for (int v = 0; v < V; ++v) {
    Constraint c;
    c.name = cname("capacity", {v});
    for (int p = 0; p < P; ++p) c.lin.add(L.theta(p, v), app.weights[p]);
    c.sense = Sense::le;
    c.rhs = net.capacities[v];
    C.push_back(std::move(c));
  }

  // Radio exclusivity per node and slot: at most one of {emit one block's
  // stream, receive one transmission}.
  for (int v = 0; v < V; ++v)
    for (int t = 0; t < T; ++t) {
      Constraint c;
      c.name = cname("excl", {v, t});
      for (int p = 0; p < P; ++p) c.lin.add(L.f(p, v, t), 1.0);
      for (int vi = 0; vi < V; ++vi)
        for (int p = 0; p < P; ++p)
          for (int vj = 0; vj < V; ++vj) c.lin.add(L.s(vi, v, p, vj, t), 1.0);
      c.sense = Sense::le;
      c.rhs = 1.0;
      C.push_back(std::move(c));
    }

  // SINR with the denominator cleared: for every directed pair and slot,
  //   th * (noise + interference) * S <= signal * S
  // where S sums this pair's sends and interference couples S with the
  // forwarding indicators of every other node (the quadratic part).
  for (int v = 0; v < V; ++v)
    for (int vp = 0; vp < V; ++vp) {
      if (vp == v) continue;
      const double signal =
          opts.signal == SignalModel::attenuation ? net.gamma[v][vp] : 1.0;
      for (int t = 0; t < T; ++t) {
        Constraint c;
        c.name = cname("sinr", {v, vp, t});
        std::vector<int> svars;
        for (int p = 0; p < P; ++p)
          for (int vi = 0; vi < V; ++vi) svars.push_back(L.s(v, vp, p, vi, t));
        for (int sv : svars) c.lin.add(sv, th * noise - signal);
        for (int sv : svars)
          for (int u = 0; u < V; ++u) {
            if (u == v || net.gamma[u][vp] <= 0.0) continue;
            for (int p2 = 0; p2 < P; ++p2)
              c.quad.push_back(
                  QuadTerm{sv, L.f(p2, u, t), th * net.gamma[u][vp]});
          }
        c.sense = Sense::le;
        c.rhs = 0.0;
        C.push_back(std::move(c));
      }
    }

  // Dependency delivery: hosting a consumer requires receiving the producer's
  // stream (relaxed: unless the producer is co-hosted).
  for (int v = 0; v < V; ++v)
    for (const auto& [p1, p2] : app.links) {
      Constraint c;
      c.name = cname("dep", {v, p1, p2});
      for (int vi = 0; vi < V; ++vi)
        for (int vj = 0; vj < V; ++vj)
          for (int t = 0; t < T; ++t) c.lin.add(L.s(vi, v, p1, vj, t), 1.0);
      c.lin.add(L.theta(p2, v), -1.0);
      if (opts.mode == Mode::relaxed) c.lin.add(L.theta(p1, v), M);
      c.sense = Sense::ge;
      c.rhs = 0.0;
      C.push_back(std::move(c));
    }

  // Forwarding balance (counting form): receptions of one origin-tagged
  // stream are covered by hosted consumers plus onward sends.
  for (int v = 0; v < V; ++v)
    for (int vj = 0; vj < V; ++vj)
      for (int p1 = 0; p1 < P; ++p1) {
        Constraint c;
        c.name = cname("balance", {v, vj, p1});
        for (int vi = 0; vi < V; ++vi)
          for (int t = 0; t < T; ++t) c.lin.add(L.s(vi, v, p1, vj, t), 1.0);
        for (const auto& [lp1, lp2] : app.links)
          if (lp1 == p1) c.lin.add(L.theta(lp2, v), -1.0);
        for (int vi = 0; vi < V; ++vi) {
          if (vi == v) continue;
          for (int t = 0; t < T; ++t) c.lin.add(L.s(v, vi, p1, vj, t), -1.0);
        }
        c.sense = Sense::le;
        c.rhs = 0.0;
        C.push_back(std::move(c));
      }

  // Send legitimacy: a node may emit an origin-tagged stream only after
  // receiving it, or when it hosts the block itself.
  for (int v = 0; v < V; ++v)
    for (int vp = 0; vp < V; ++vp)
      for (int p = 0; p < P; ++p)
        for (int t = 0; t < T; ++t) {
          Constraint c;
          c.name = cname("legit", {v, vp, p, t});
          for (int vi = 0; vi < V; ++vi) c.lin.add(L.s(v, vi, p, vp, t), 1.0);
          for (int vi = 0; vi < V; ++vi) {
            if (vi == v) continue;
            for (int ti = 0; ti < T; ++ti)
              c.lin.add(L.s(vi, v, p, vp, ti), -M);
          }
          c.lin.add(L.theta(p, v), -M);
          c.sense = Sense::le;
          c.rhs = 0.0;
          C.push_back(std::move(c));
        }

  // Loop exclusion: a node's sends of an origin-tagged stream are bounded by
  // the route expressions reaching it from that origin, so traffic circling
  // with no live route back to its origin is infeasible.
  for (int p = 0; p < P; ++p)
    for (int v = 0; v < V; ++v)
      for (int vs = 0; vs < V; ++vs) {
        if (vs == v) continue;
        Constraint c;
        c.name = cname("loop_excl", {p, v, vs});
        for (int v2 = 0; v2 < V; ++v2) {
          if (v2 == vs) continue;
          for (int t = 0; t < T; ++t) c.lin.add(L.s(vs, v2, p, v, t), 1.0);
        }
        const ReachResult reach =
            reachability_expression(L, net, vs, vs, p, v, opts);
        for (const auto& [var, coef] : reach.expr.coeffs)
          c.lin.add(var, -M * coef);
        c.lin.constant += -M * reach.expr.constant;
        c.sense = Sense::le;
        c.rhs = 0.0;
        C.push_back(std::move(c));
      }

  // --- header ---
  auto& H = model.header;
  H.push_back("wireless overlay embedding model");
  H.push_back(std::string("mode: ") +
              (opts.mode == Mode::strict ? "strict" : "relaxed") +
              ", signal model: " +
              (opts.signal == SignalModel::attenuation ? "attenuation"
                                                       : "unit"));
  H.push_back("nodes: " + std::to_string(V) + ", blocks: " +
              std::to_string(P) + ", slots: " + std::to_string(T) +
              ", big-M: " + coeff_to_string(M));
  H.push_back("variables: theta " + std::to_string(P * V) + " + f " +
              std::to_string(P * V * T) + " + s " +
              std::to_string(std::int64_t(V) * V * P * V * T) + " + beta " +
              std::to_string(T) + " = " + std::to_string(L.total()));
  {
    std::string line = "node ids:";
    for (int v = 0; v < V; ++v)
      line += " " + std::to_string(v) + "=" + net.node_ids[v];
    H.push_back(std::move(line));
    line = "block ids:";
    for (int p = 0; p < P; ++p)
      line += " " + std::to_string(p) + "=" + app.block_ids[p];
    H.push_back(std::move(line));
  }
  H.push_back("objective: minimize the number of used slots (sum of beta)");
  H.push_back("notes:");
  H.push_back(" - s_v1_v2_p_v3_t carries an origin tag v3 (a node hosting p)"
              " so concurrent streams of one block stay distinguishable");
  H.push_back(" - loop exclusion bounds each node's origin-tagged send total"
              " by big-M times the summed route expressions from that origin;"
              " route enumeration expands positive-attenuation edges only, so"
              " a commodity with no physical route gets an identically-zero"
              " bound");
  H.push_back(" - forwarding balance counts receptions against hosted"
              " consumers plus onward sends; redundant double receptions"
              " should be pruned from schedules before substitution");
  H.push_back(" - the exclusivity family keys a sender's streams by block;"
              " checkers keying by (block, origin) are stricter on instances"
              " with several source nodes");
  H.push_back(" - the OR-style averaging expression (constant 1/2) is not a"
              " sound disjunction and is not used by any family here; route"
              " feasibility relies on summed AND-style terms instead");
  return model;
}

namespace {

void append_wrapped(std::string& out, std::string& line, const std::string& tok,
                    std::size_t width = 200) {
  if (line.size() + tok.size() + 1 > width) {
    out += line;
    out.push_back('\n');
    line = "   ";
  }
  line.push_back(' ');
  line += tok;
}

std::string lin_tokens(const ConstraintModel& model, const LinExpr& e,
                       const std::vector<QuadTerm>& quad) {
  std::string out;
  std::string line = "";
  bool first = true;
  auto push_term = [&](double c, const std::string& body) {
    std::string tok;
    if (c < 0)
      tok = "-";
    else if (!first)
      tok = "+";
    if (!tok.empty()) append_wrapped(out, line, tok);
    const double mag = std::abs(c);
    if (mag != 1.0 || body.empty())
      append_wrapped(out, line, coeff_to_string(mag));
    if (!body.empty()) append_wrapped(out, line, body);
    first = false;
  };
  for (const auto& [var, c] : e.coeffs) push_term(c, model.layout.name(var));
  if (!quad.empty()) {
    append_wrapped(out, line, first ? "[" : "+ [");
    first = true;
    for (const auto& q : quad) {
      std::string tok;
      if (q.coeff < 0)
        tok = "-";
      else if (!first)
        tok = "+";
      if (!tok.empty()) append_wrapped(out, line, tok);
      if (std::abs(q.coeff) != 1.0)
        append_wrapped(out, line, coeff_to_string(std::abs(q.coeff)));
      append_wrapped(out, line, model.layout.name(q.a) + " * " +
                                    model.layout.name(q.b));
      first = false;
    }
    append_wrapped(out, line, "]");
    first = false;
  }
  if (first) append_wrapped(out, line, "0");
  out += line;
  return out;
}

}  // namespace

std::string to_lp_text(const ConstraintModel& model) {
  std::string out;
  for (const auto& h : model.header) out += "\\ " + h + "\n";
  out += "Minimize\n obj:";
  {
    std::string body;
    std::string line = "";
    for (int t = 0; t < model.layout.T; ++t) {
      if (t) append_wrapped(body, line, "+");
      append_wrapped(body, line, model.layout.name(model.layout.beta(t)));
    }
    body += line;
    out += body;
  }
  out += "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out += " " + c.name + ":";
    out += lin_tokens(model, c.lin, c.quad);
    const double rhs = c.rhs - c.lin.constant;
    const char* rel = c.sense == Sense::le ? "<="
                      : c.sense == Sense::ge ? ">="
                                             : "=";
    out += std::string(" ") + rel + " " + coeff_to_string(rhs) + "\n";
  }
  out += "Bounds\n";
  for (const auto& [var, b] : model.pinned) {
    if (b.lo == b.hi)
      out += " " + model.layout.name(var) + " = " + coeff_to_string(b.lo) +
             "\n";
    else
      out += " " + coeff_to_string(b.lo) + " <= " + model.layout.name(var) +
             " <= " + coeff_to_string(b.hi) + "\n";
  }
  out += "Binary\n";
  {
    std::string body;
    std::string line = "";
    for (std::int64_t i = 0; i < model.layout.total(); ++i)
      append_wrapped(body, line, model.layout.name(int(i)));
    body += line;
    out += body;
  }
  out += "\nEnd\n";
  return out;
}

void emit_model(const InfrastructureNetwork& net, const OverlayApp& app,
                const EmitterOptions& opts, const std::string& path) {
  const ConstraintModel model = build_model(net, app, opts);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << to_lp_text(model);
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::vector<std::string> substitute_and_check(const ConstraintModel& model,
                                              const Solution& sol,
                                              const InfrastructureNetwork& net,
                                              const OverlayApp& app) {
  const VarLayout& L = model.layout;
  if (int(sol.placement.size()) != L.P)
    throw std::invalid_argument("placement size does not match the model");
  std::vector<double> x(std::size_t(L.total()), 0.0);
  for (int p = 0; p < L.P; ++p)
    for (int v : sol.placement[p]) {
      if (v < 0 || v >= L.V)
        throw std::invalid_argument("placement host outside the model");
      x[L.theta(p, v)] = 1.0;
    }
  for (const auto& tx : sol.transmissions) {
    if (tx.sender < 0 || tx.sender >= L.V || tx.receiver < 0 ||
        tx.receiver >= L.V || tx.block < 0 || tx.block >= L.P ||
        tx.origin < 0 || tx.origin >= L.V || tx.slot < 0 || tx.slot >= L.T)
      throw std::invalid_argument("transmission outside the model's ranges");
    x[L.s(tx.sender, tx.receiver, tx.block, tx.origin, tx.slot)] = 1.0;
    x[L.f(tx.block, tx.sender, tx.slot)] = 1.0;
    x[L.beta(tx.slot)] = 1.0;
  }
  (void)net;
  (void)app;

  std::vector<std::string> violated;
  for (const auto& [var, b] : model.pinned) {
    const double tol = 1e-9;
    if (x[var] < b.lo - tol || x[var] > b.hi + tol)
      violated.push_back("bound_" + L.name(var));
  }
  for (const auto& c : model.constraints) {
    double val = c.lin.constant;
    for (const auto& [var, coef] : c.lin.coeffs) val += coef * x[var];
    for (const auto& q : c.quad) val += q.coeff * x[q.a] * x[q.b];
    const double tol =
        1e-9 * std::max({1.0, std::abs(val), std::abs(c.rhs)});
    const bool bad = c.sense == Sense::le   ? val > c.rhs + tol
                     : c.sense == Sense::ge ? val < c.rhs - tol
                                            : std::abs(val - c.rhs) > tol;
    if (bad) violated.push_back(c.name);
  }
  return violated;
}

}  // namespace wove
