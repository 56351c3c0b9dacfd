#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "testsupport.hpp"
#include "wove/emitter.hpp"
#include "wove/exact.hpp"

using namespace wove;

namespace {

double eval(const LinExpr& e, const std::vector<int>& bits) {
  double v = e.constant;
  for (const auto& [var, c] : e.coeffs) v += c * bits.at(std::size_t(var));
  return v;
}

// Independent route counter: simple paths from `from` to `to` over positive
// attenuation, `from` appearing only first (mirrors the emitter's walk).
int count_routes(const InfrastructureNetwork& net, int from, int to,
                 std::vector<char>& seen, int at) {
  if (at == to) return 1;
  int total = 0;
  seen[at] = 1;
  for (int n = 0; n < net.node_count(); ++n)
    if (!seen[n] && n != from && net.gamma[at][n] > 0.0)
      total += count_routes(net, from, to, seen, n);
  // Also step back into `from`? No: `from` only ever starts a route.
  seen[at] = 0;
  return total;
}

int count_routes(const InfrastructureNetwork& net, int from, int to) {
  if (from == to) return 1;
  std::vector<char> seen(net.node_count(), 0);
  int total = 0;
  seen[from] = 1;
  for (int n = 0; n < net.node_count(); ++n)
    if (net.gamma[from][n] > 0.0 && n != from)
      total += n == to ? 1 : count_routes(net, from, to, seen, n);
  return total;
}

}  // namespace

TEST_CASE("dyadic arithmetic is exact and prints exact decimals") {
  using D = Dyadic;
  CHECK(D::half_pow(0).to_string() == "1");
  CHECK(D::half_pow(1).to_string() == "0.5");
  CHECK(D::half_pow(5).to_string() == "0.03125");
  CHECK((D{3, 3}).to_string() == "0.375");
  CHECK((D{-3, 3}).to_string() == "-0.375");
  CHECK((D{7, 0}).to_string() == "7");
  CHECK((D::half_pow(1) + D::half_pow(2)).to_string() == "0.75");
  CHECK((D{3, 1} * D{1, 1}).to_string() == "0.75");  // 1.5 * 0.5
  CHECK((D::half_pow(32)).to_double() == std::ldexp(1.0, -32));
  // Normalization strips factors of two.
  const D n = D{4, 3}.normalized();
  CHECK(n.num == 1);
  CHECK(n.k == 1);
}

TEST_CASE("coefficient printing: dyadics exactly, others round-trip") {
  CHECK(coeff_to_string(0.25) == "0.25");
  CHECK(coeff_to_string(-2.0) == "-2");
  CHECK(coeff_to_string(std::ldexp(1.0, -20)) == "0.00000095367431640625");
  CHECK(coeff_to_string(0.0) == "0");
  // 0.3 is not dyadic: falls back to shortest round-trip form.
  const std::string s = coeff_to_string(0.3);
  CHECK(std::stod(s) == 0.3);
}

TEST_CASE("conjunction expression is an exact AND for widths up to 6") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vars[std::size_t(i)] = i;
    const LinExpr e = conjunction_expr(vars);
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> bits(static_cast<std::size_t>(n));
      bool all = true;
      for (int i = 0; i < n; ++i) {
        bits[std::size_t(i)] = (mask >> i) & 1;
        all = all && bits[std::size_t(i)];
      }
      CHECK((eval(e, bits) >= 1.0) == all);
    }
  }
  CHECK_THROWS(conjunction_expr({}));
}

TEST_CASE("disjunction expression is NOT a sound OR: it tests the first "
          "input only") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vars[std::size_t(i)] = i;
    const LinExpr e = disjunction_expr(vars);
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> bits(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) bits[std::size_t(i)] = (mask >> i) & 1;
      // Documented behavior: the averaging encoding accepts exactly the
      // assignments whose FIRST input is one. (0,1,...) is a true
      // disjunct but evaluates below 1: the encoding is unsound as an OR.
      CHECK((eval(e, bits) >= 1.0) == (bits[0] == 1));
    }
  }
}

TEST_CASE("variable layout is a bijection with the documented name scheme") {
  VarLayout L{3, 4, 5};  // P V T
  CHECK(L.total() == 3 * 4 + 3 * 4 * 5 + 4 * 4 * 3 * 4 * 5 + 5);
  std::set<int> seen;
  for (int p = 0; p < 3; ++p)
    for (int v = 0; v < 4; ++v) seen.insert(L.theta(p, v));
  for (int p = 0; p < 3; ++p)
    for (int v = 0; v < 4; ++v)
      for (int t = 0; t < 5; ++t) seen.insert(L.f(p, v, t));
  for (int v1 = 0; v1 < 4; ++v1)
    for (int v2 = 0; v2 < 4; ++v2)
      for (int p = 0; p < 3; ++p)
        for (int v3 = 0; v3 < 4; ++v3)
          for (int t = 0; t < 5; ++t) seen.insert(L.s(v1, v2, p, v3, t));
  for (int t = 0; t < 5; ++t) seen.insert(L.beta(t));
  CHECK(std::int64_t(seen.size()) == L.total());
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == L.total() - 1);
  CHECK(L.name(L.theta(2, 1)) == "theta_2_1");
  CHECK(L.name(L.f(1, 3, 4)) == "f_1_3_4");
  CHECK(L.name(L.s(3, 0, 2, 1, 4)) == "s_3_0_2_1_4");
  CHECK(L.name(L.beta(4)) == "beta_4");
}

TEST_CASE("route expressions enumerate exactly the positive simple routes") {
  const auto inst = ts::clique4();
  const auto model_opts = EmitterOptions{};
  VarLayout L{inst.app.block_count(), inst.net.node_count(),
              inst.net.max_slots};

  SUBCASE("origin start collapses to the single immediate term") {
    const auto r = reachability_expression(L, inst.net, 2, 1, 1, 2,
                                           model_opts);
    REQUIRE(r.paths.size() == 1);
    CHECK(r.paths[0] == std::vector<int>{2});
    // (sum_t s(2,1,p,2,t) + 1) / 2: constant one half, T vars at one half.
    CHECK(r.expr.constant == 0.5);
    CHECK(int(r.expr.coeffs.size()) == inst.net.max_slots);
    for (const auto& [var, c] : r.expr.coeffs) CHECK(c == 0.5);
  }

  SUBCASE("full clique: all simple routes, count cross-checked") {
    const auto r = reachability_expression(L, inst.net, 0, 1, 1, 2,
                                           model_opts);
    CHECK(int(r.paths.size()) == count_routes(inst.net, 2, 0));
    CHECK(r.paths.size() == 5);  // 2-0, 2-1-0, 2-3-0, 2-1-3-0, 2-3-1-0
    for (const auto& path : r.paths) {
      CHECK(path.front() == 2);
      CHECK(path.back() == 0);
    }
  }

  SUBCASE("excluding the prospective receiver mirrors the two-route "
          "narrative") {
    const auto r = reachability_expression(L, inst.net, 0, 1, 1, 2,
                                           model_opts, {1});
    CHECK(r.paths.size() == 2);  // direct and via the fourth node
  }

  SUBCASE("a fully active route evaluates to exactly one") {
    const auto r = reachability_expression(L, inst.net, 0, 1, 1, 2,
                                           model_opts, {1, 3});
    REQUIRE(r.paths.size() == 1);  // only 2 -> 0
    std::vector<int> bits(std::size_t(L.total()), 0);
    bits[std::size_t(L.s(2, 0, 1, 2, 0))] = 1;  // the one edge, slot 0
    double v = r.expr.constant;
    for (const auto& [var, c] : r.expr.coeffs)
      v += c * bits[std::size_t(var)];
    CHECK(v == 1.0);  // exact dyadic arithmetic: no epsilon needed
    // Inactive route: strictly below one.
    CHECK(r.expr.constant < 1.0);
  }

  SUBCASE("disconnected origins yield the identically-zero expression") {
    const auto orphan = ts::orphan_cycle();
    VarLayout OL{orphan.app.block_count(), orphan.net.node_count(),
                 orphan.net.max_slots};
    const auto r = reachability_expression(OL, orphan.net, 2, 4, 0, 0,
                                           model_opts);
    CHECK(r.paths.empty());
    CHECK(r.expr.coeffs.empty());
    CHECK(r.expr.constant == 0.0);
  }

  SUBCASE("the length budget aborts over-long routes") {
    EmitterOptions tight = model_opts;
    tight.max_path_len = 1;
    CHECK_THROWS(reachability_expression(L, inst.net, 0, 1, 1, 2, tight));
  }
}

TEST_CASE("model counts variables with the closed formula and caps them") {
  const auto inst = ts::clique4();
  const auto model = build_model(inst.net, inst.app, {});
  const auto& L = model.layout;
  const std::int64_t expected =
      std::int64_t(L.P) * L.V + std::int64_t(L.P) * L.V * L.T +
      std::int64_t(L.V) * L.V * L.P * L.V * L.T + L.T;
  CHECK(L.total() == expected);

  EmitterOptions capped;
  capped.var_cap = 100;
  bool threw = false;
  try {
    build_model(inst.net, inst.app, capped);
  } catch (const std::runtime_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find(std::to_string(expected)) !=
          std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("every variable appears in a constraint, a pin, or the objective") {
  const auto inst = ts::clique4();
  const auto model = build_model(inst.net, inst.app, {});
  std::vector<char> used(std::size_t(model.layout.total()), 0);
  for (const auto& c : model.constraints) {
    for (const auto& [var, coef] : c.lin.coeffs) used[std::size_t(var)] = 1;
    for (const auto& q : c.quad) {
      used[std::size_t(q.a)] = 1;
      used[std::size_t(q.b)] = 1;
    }
  }
  for (const auto& [var, b] : model.pinned) used[std::size_t(var)] = 1;
  for (int t = 0; t < model.layout.T; ++t)
    used[std::size_t(model.layout.beta(t))] = 1;  // objective terms
  for (std::size_t i = 0; i < used.size(); ++i) CHECK(used[i] == 1);
}

TEST_CASE("quadratic terms appear only in the sinr family") {
  const auto inst = ts::clique4();
  const auto model = build_model(inst.net, inst.app, {});
  bool saw_quad = false;
  for (const auto& c : model.constraints) {
    if (!c.quad.empty()) {
      saw_quad = true;
      CHECK(c.name.substr(0, 4) == "sinr");
    }
  }
  CHECK(saw_quad);
}

TEST_CASE("big-M defaults to V*V*T + 1 and can be overridden") {
  const auto inst = ts::clique4();
  const auto model = build_model(inst.net, inst.app, {});
  CHECK(model.big_m == 4.0 * 4.0 * 6.0 + 1.0);
  EmitterOptions opts;
  opts.big_m = 123.0;
  CHECK(build_model(inst.net, inst.app, opts).big_m == 123.0);
}

TEST_CASE("lp text has the expected sections and is byte-stable") {
  const auto inst = ts::two_node_basic();
  const auto model = build_model(inst.net, inst.app, {});
  const std::string text = to_lp_text(model);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
  CHECK(text.find("beta_0") != std::string::npos);
  CHECK(text.find("loop_excl") != std::string::npos);
  CHECK(text.find(" sinr_0_1_0:") != std::string::npos);
  // Emitting twice gives identical bytes.
  CHECK(to_lp_text(build_model(inst.net, inst.app, {})) == text);
}

TEST_CASE("substitution accepts valid solutions and rejects corrupted ones") {
  const auto inst = ts::relay_multicast();
  EmitterOptions opts;
  opts.mode = Mode::relaxed;
  const auto model = build_model(inst.net, inst.app, opts);

  Solution sol;
  sol.placement = {{0}, {2}, {3}};
  sol.transmissions = {
      Transmission{0, 1, 0, 0, 0},
      Transmission{1, 2, 0, 0, 1},
      Transmission{1, 3, 0, 0, 1},
  };
  sol.normalize();
  REQUIRE(validate(sol, inst.net, inst.app, Mode::relaxed).ok);
  CHECK(substitute_and_check(model, sol, inst.net, inst.app).empty());

  SUBCASE("dropping the delivery violates the dependency family") {
    Solution bad = sol;
    bad.transmissions.erase(bad.transmissions.begin() + 1);
    bad.normalize();
    const auto viols = substitute_and_check(model, bad, inst.net, inst.app);
    CHECK(!viols.empty());
    bool dep = false;
    for (const auto& name : viols) dep |= name.substr(0, 3) == "dep";
    CHECK(dep);
  }
  SUBCASE("moving a block violates placement pins or legitimacy") {
    Solution bad = sol;
    bad.placement[2] = {1};  // b3 claims to live on B now
    const auto viols = substitute_and_check(model, bad, inst.net, inst.app);
    CHECK(!viols.empty());
  }
  SUBCASE("retiming into a half-duplex clash violates exclusivity") {
    Solution bad = sol;
    bad.transmissions[1].slot = 0;
    bad.normalize();
    const auto viols = substitute_and_check(model, bad, inst.net, inst.app);
    bool excl = false;
    for (const auto& name : viols) excl |= name.substr(0, 4) == "excl";
    CHECK(excl);
  }
}

TEST_CASE("the orphan ring violates an emitted loop-exclusion row") {
  const auto inst = ts::orphan_cycle();
  EmitterOptions opts;
  opts.mode = Mode::relaxed;
  const auto model = build_model(inst.net, inst.app, opts);
  const auto sol = ts::orphan_cycle_phantom_solution();
  const auto viols = substitute_and_check(model, sol, inst.net, inst.app);
  bool loop = false;
  for (const auto& name : viols) loop |= name.substr(0, 9) == "loop_excl";
  CHECK(loop);
}

TEST_CASE("strict vs relaxed models differ exactly in the dependency rows") {
  const auto inst = ts::colocate_zero();
  EmitterOptions strict_opts;
  strict_opts.mode = Mode::strict;
  EmitterOptions relaxed_opts;
  relaxed_opts.mode = Mode::relaxed;
  const auto strict_model = build_model(inst.net, inst.app, strict_opts);
  const auto relaxed_model = build_model(inst.net, inst.app, relaxed_opts);

  Solution sol;
  sol.placement = {{0}, {0}, {0}};
  sol.normalize();
  CHECK(substitute_and_check(relaxed_model, sol, inst.net, inst.app).empty());
  const auto viols = substitute_and_check(strict_model, sol, inst.net,
                                          inst.app);
  REQUIRE(!viols.empty());
  for (const auto& name : viols) CHECK(name.substr(0, 3) == "dep");
}
