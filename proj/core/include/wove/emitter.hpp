#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wove/model.hpp"
#include "wove/radio.hpp"
#include "wove/validator.hpp"

namespace wove {

// Exact dyadic rational num / 2^k. The nested averaging encodings below
// produce exactly these values; keeping them symbolic allows exact decimal
// printing into the model text (no float rounding).
struct Dyadic {
  std::int64_t num = 0;
  int k = 0;  // denominator exponent, >= 0

  static Dyadic from_int(std::int64_t v) { return {v, 0}; }
  static Dyadic half_pow(int i);  // 1 / 2^i
  Dyadic normalized() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  bool is_zero() const { return num == 0; }
  double to_double() const;
  std::string to_string() const;  // exact decimal expansion
};

// Exact decimal text for a coefficient: dyadic-valued doubles (all the
// encoding constants) print via long division, anything else shortest
// round-trip.
std::string coeff_to_string(double v);

struct LinExpr {
  std::map<int, double> coeffs;  // var index -> coefficient
  double constant = 0.0;

  void add(int var, double c);
  LinExpr& operator+=(const LinExpr& o);
};

enum class Sense { le, ge, eq };

struct QuadTerm {
  int a, b;  // var indices
  double coeff;
};

struct Constraint {
  std::string name;
  LinExpr lin;
  std::vector<QuadTerm> quad;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

// Variable layout (index-based names; the id tables live in the file
// header comments):
//   theta_p_v        block p hosted on node v
//   f_p_v_t          node v emits block p's output in slot t
//   s_v1_v2_p_v3_t   v1 sends block p's output, originated at v3, to v2 in t
//   beta_t           slot t carries at least one transmission
struct VarLayout {
  int P = 0, V = 0, T = 0;
  int theta(int p, int v) const;
  int f(int p, int v, int t) const;
  int s(int v1, int v2, int p, int v3, int t) const;
  int beta(int t) const;
  std::int64_t total() const;
  std::string name(int var) const;
};

struct VarBounds {
  double lo = 0.0, hi = 1.0;
};

struct ConstraintModel {
  VarLayout layout;
  std::vector<Constraint> constraints;
  std::map<int, VarBounds> pinned;  // overrides of the default binary [0,1]
  std::vector<std::string> header;  // comment lines for the model text
  double big_m = 0.0;
};

struct EmitterOptions {
  Mode mode = Mode::strict;
  SignalModel signal = SignalModel::attenuation;
  double big_m = 0.0;            // 0 -> |V|^2 * |T| + 1
  std::int64_t var_cap = 500'000;
  int max_path_len = 32;         // route length guard for exact coefficients
};

// Exact Boolean AND over binaries: value >= 1 iff all inputs are 1.
//   1/2^n + sum_i x_i / 2^i
LinExpr conjunction_expr(const std::vector<int>& vars);

// OR-flavored companion with constant 1/2, emitted in this exact shape for
// compatibility with the conjunction family. Caution: NOT a sound
// disjunction — e.g. inputs (0,1) give 1/2 + 1/4 < 1. See the model header.
LinExpr disjunction_expr(const std::vector<int>& vars);

// Route-availability expression: recursive averaging over all simple
// positive-attenuation paths from v (the origin hosting p) to v1. A fully
// active route pushes its term to exactly 1; with no route the expression is
// identically 0. v2 is the prospective receiver of v1's send (it only enters
// the immediate-origin base case). Also returns the enumerated routes
// (node sequences from v to v1). Throws if a route would exceed
// opts.max_path_len edges.
struct ReachResult {
  LinExpr expr;
  std::vector<std::vector<int>> paths;
};
ReachResult reachability_expression(const VarLayout& layout,
                                    const InfrastructureNetwork& net, int v1,
                                    int v2, int p, int v,
                                    const EmitterOptions& opts,
                                    const std::vector<int>& exclude = {});

ConstraintModel build_model(const InfrastructureNetwork& net,
                            const OverlayApp& app, const EmitterOptions& opts);

std::string to_lp_text(const ConstraintModel& model);

void emit_model(const InfrastructureNetwork& net, const OverlayApp& app,
                const EmitterOptions& opts, const std::string& path);

// Fixes every variable from (placement, transmissions), evaluates all
// constraints and pins, and returns the names of the violated ones
// (pins report as bound_<variable>).
std::vector<std::string> substitute_and_check(const ConstraintModel& model,
                                              const Solution& sol,
                                              const InfrastructureNetwork& net,
                                              const OverlayApp& app);

}  // namespace wove
