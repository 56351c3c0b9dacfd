// Command-line frontend: generate instances, solve them exactly or
// heuristically, validate solutions, emit solver-ready models, and run
// experiment sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wove/emitter.hpp"
#include "wove/exact.hpp"
#include "wove/experiment.hpp"
#include "wove/heuristic.hpp"
#include "wove/instance_io.hpp"
#include "wove/scenario.hpp"

namespace {

wove::Mode parse_mode(const std::string& s) {
  if (s == "strict") return wove::Mode::strict;
  if (s == "relaxed") return wove::Mode::relaxed;
  throw CLI::ValidationError("--mode", "must be strict or relaxed");
}

int cmd_gen(const std::string& out, int nodes, std::uint64_t seed, double room,
            double noise, double sinr_th, double block_weight) {
  wove::ScenarioConfig cfg;
  cfg.node_count = nodes;
  cfg.seed = seed;
  cfg.room_side = room;
  cfg.noise_floor = noise;
  cfg.sinr_threshold = sinr_th;
  cfg.block_weight = block_weight;
  const wove::Instance inst = wove::generate_instance(cfg);
  wove::save_instance(inst, out);
  std::printf("wrote %s (%d nodes, %d blocks, %d links, %d slots max)\n",
              out.c_str(), inst.net.node_count(), inst.app.block_count(),
              inst.app.link_count(), inst.net.max_slots);
  return 0;
}

void report_solution(const char* method, const wove::SolveStatus status,
                     const std::optional<wove::Solution>& sol,
                     const wove::Instance& inst, const std::string& out_path) {
  std::printf("method: %s\nstatus: %s\n", method, wove::to_string(status));
  if (sol) {
    std::printf("objective: %d slots, %zu transmissions\n",
                wove::objective(*sol), sol->transmissions.size());
    if (!out_path.empty()) {
      wove::save_solution(*sol, inst, out_path);
      std::printf("solution written to %s\n", out_path.c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wireless overlay embedding toolkit"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int gen_nodes = 4;
  std::uint64_t gen_seed = 0;
  double gen_room = 25.0, gen_noise = 1e-5, gen_th = 10.0, gen_w = 1.0;
  std::string gen_out;
  gen->add_option("--nodes", gen_nodes, "node count (>= 2)")->required();
  gen->add_option("--seed", gen_seed, "rng seed")->required();
  gen->add_option("--room", gen_room, "room side length");
  gen->add_option("--noise", gen_noise, "noise floor");
  gen->add_option("--sinr-th", gen_th, "SINR threshold");
  gen->add_option("--block-weight", gen_w, "worker block weight");
  gen->add_option("--out", gen_out, "output instance path")->required();

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string sv_method, sv_instance, sv_out, sv_mode = "relaxed";
  int sv_level = 1, sv_slot_max = -1, sv_slot_start = 0, sv_hops = 0;
  std::string sv_k = "all";
  std::uint64_t sv_seed = 0;
  std::int64_t sv_budget = 10'000, sv_node_limit = 50'000'000;
  bool sv_no_multicast = false;
  solve->add_option("--method", sv_method, "exact | heuristic | brute")
      ->required();
  solve->add_option("--instance", sv_instance, "instance path")->required();
  solve->add_option("--out", sv_out, "write the solution here");
  solve->add_option("--mode", sv_mode, "strict | relaxed");
  solve->add_option("--slot-max", sv_slot_max, "slot budget cap");
  solve->add_option("--slot-start", sv_slot_start, "slot budget sweep start");
  solve->add_option("--node-limit", sv_node_limit, "exact search node budget");
  solve->add_option("--level", sv_level, "heuristic lookahead window");
  solve->add_option("--k", sv_k, "heuristic expansion width (int or 'all')");
  solve->add_option("--seed", sv_seed, "heuristic tie-break seed");
  solve->add_option("--backtrack-budget", sv_budget,
                    "heuristic backtrack budget");
  solve->add_option("--max-path-hops", sv_hops, "relay hop cap (0: nodes-1)");
  solve->add_flag("--no-multicast", sv_no_multicast,
                  "brute force: one receiver per transmission");

  // --- validate ---
  auto* val = app.add_subcommand("validate", "check a solution");
  std::string va_instance, va_solution, va_mode = "strict";
  val->add_option("instance", va_instance, "instance path")->required();
  val->add_option("solution", va_solution, "solution path")->required();
  val->add_option("--mode", va_mode, "strict | relaxed");

  // --- emit ---
  auto* emit = app.add_subcommand("emit", "write a solver-ready model");
  std::string em_instance, em_out, em_mode = "strict", em_signal = "gamma";
  double em_big_m = 0.0;
  std::int64_t em_var_cap = 500'000;
  emit->add_option("--instance", em_instance, "instance path")->required();
  emit->add_option("--out", em_out, "model output path")->required();
  emit->add_option("--mode", em_mode, "strict | relaxed");
  emit->add_option("--big-m", em_big_m, "big-M override (0: auto)");
  emit->add_option("--signal-model", em_signal,
                   "gamma (attenuation) | unit");
  emit->add_option("--var-cap", em_var_cap, "variable count cap");

  // --- experiment ---
  auto* exp = app.add_subcommand("experiment", "run a sweep from a plan file");
  std::string ex_config, ex_out_dir;
  int ex_jobs = 0;
  bool ex_no_timing = false;
  exp->add_option("--config", ex_config, "plan file (json)")->required();
  exp->add_option("--out-dir", ex_out_dir, "output directory")->required();
  exp->add_option("--jobs", ex_jobs, "worker threads (0: all cores)");
  exp->add_flag("--no-timing", ex_no_timing,
                "blank the runtime columns for reproducible bytes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen)
      return cmd_gen(gen_out, gen_nodes, gen_seed, gen_room, gen_noise, gen_th,
                     gen_w);

    if (*solve) {
      const wove::Instance inst = wove::load_instance(sv_instance);
      const wove::Mode mode = parse_mode(sv_mode);
      if (sv_method == "exact") {
        wove::ExactConfig cfg;
        cfg.mode = mode;
        cfg.slot_budget_start = sv_slot_start;
        cfg.slot_budget_max = sv_slot_max;
        cfg.node_limit = sv_node_limit;
        const auto res = wove::solve_exact(inst.net, inst.app, cfg);
        report_solution("exact", res.status, res.solution, inst, sv_out);
        std::printf("stats: %lld nodes, %lld placements (%lld pruned), "
                    "%d budgets, %.3f ms\n",
                    (long long)res.stats.nodes_expanded,
                    (long long)res.stats.placements_tried,
                    (long long)res.stats.placements_pruned,
                    res.stats.budgets_tried, res.stats.runtime_ms);
        return res.status == wove::SolveStatus::solved ? 0 : 1;
      }
      if (sv_method == "brute") {
        wove::BruteForceConfig cfg;
        cfg.mode = mode;
        cfg.slot_cap = sv_slot_max;
        cfg.allow_multicast = !sv_no_multicast;
        const auto res = wove::brute_force(inst.net, inst.app, cfg);
        report_solution("brute", res.status, res.solution, inst, sv_out);
        return res.status == wove::SolveStatus::solved ? 0 : 1;
      }
      if (sv_method == "heuristic") {
        wove::HeuristicParams hp;
        hp.mode = mode;
        hp.level = sv_level;
        hp.k = sv_k == "all" ? 0 : std::stoi(sv_k);
        hp.seed = sv_seed;
        hp.backtrack_budget = sv_budget;
        hp.max_path_hops = sv_hops;
        const auto res = wove::solve_heuristic(inst.net, inst.app, hp);
        report_solution("heuristic", res.status, res.solution, inst, sv_out);
        std::printf("stats: %lld expansions, %lld candidates, "
                    "%lld leaves, %lld backtracks, %.3f ms\n",
                    (long long)res.stats.expansions,
                    (long long)res.stats.candidates_generated,
                    (long long)res.stats.leaves_evaluated,
                    (long long)res.stats.backtracks, res.stats.runtime_ms);
        return res.status == wove::SolveStatus::solved ? 0 : 1;
      }
      std::fprintf(stderr, "unknown method: %s\n", sv_method.c_str());
      return 2;
    }

    if (*val) {
      const wove::Instance inst = wove::load_instance(va_instance);
      const wove::Solution sol = wove::load_solution(va_solution, inst);
      const auto report =
          wove::validate(sol, inst.net, inst.app, parse_mode(va_mode));
      std::fputs(wove::format_report(report).c_str(), stdout);
      return report.ok ? 0 : 1;
    }

    if (*emit) {
      const wove::Instance inst = wove::load_instance(em_instance);
      wove::EmitterOptions opts;
      opts.mode = parse_mode(em_mode);
      if (em_signal == "gamma")
        opts.signal = wove::SignalModel::attenuation;
      else if (em_signal == "unit")
        opts.signal = wove::SignalModel::unit;
      else
        throw CLI::ValidationError("--signal-model", "must be gamma or unit");
      opts.big_m = em_big_m;
      opts.var_cap = em_var_cap;
      wove::emit_model(inst.net, inst.app, opts, em_out);
      std::printf("model written to %s\n", em_out.c_str());
      return 0;
    }

    if (*exp) {
      wove::ExperimentPlan plan = wove::load_plan(ex_config);
      if (ex_jobs > 0) plan.threads = ex_jobs;
      if (ex_no_timing) plan.timing = false;
      const auto records = wove::run_experiment(plan);
      std::filesystem::create_directories(ex_out_dir);
      wove::write_csv(records, ex_out_dir + "/records.csv", plan.timing);
      wove::write_summary_csv(records, ex_out_dir + "/summary.csv");
      wove::write_plots(records, ex_out_dir);
      const std::string text = wove::summarize(records);
      std::fputs(text.c_str(), stdout);
      std::ofstream(ex_out_dir + "/summary.txt") << text;
      std::printf("results in %s\n", ex_out_dir.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
