#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "testsupport.hpp"
#include "wove/experiment.hpp"

using namespace wove;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "wove_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

ExperimentPlan tiny_plan() {
  ExperimentPlan plan;
  plan.node_counts = {2, 3};
  plan.levels = {1};
  plan.ks = {0};
  plan.seeds = 2;
  plan.exact_cutoff = 4;
  plan.threads = 2;
  return plan;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("gap is defined only with both sides and a positive optimum") {
  CHECK(!compute_gap(std::nullopt, std::nullopt));
  CHECK(!compute_gap(3, std::nullopt));
  CHECK(!compute_gap(std::nullopt, 3));
  CHECK(!compute_gap(3, 0));  // a zero-slot optimum has no relative gap
  CHECK(*compute_gap(4, 2) == 1.0);
  CHECK(*compute_gap(2, 2) == 0.0);
  CHECK(*compute_gap(5, 4) == doctest::Approx(0.25));
}

TEST_CASE("plan files parse with defaults and integer-or-all k entries") {
  const auto dir = scratch_dir("plan");
  spill(dir / "plan.json",
        R"({"node_counts": [4, 8], "levels": [1, 2], "ks": [3, "all"],
            "seeds": 7, "seed_base": 100, "exact_cutoff": 5,
            "max_path_hops": 3, "block_weight": 2.0, "threads": 4,
            "timing": false})");
  const auto plan = load_plan((dir / "plan.json").string());
  CHECK(plan.node_counts == std::vector<int>{4, 8});
  CHECK(plan.levels == std::vector<int>{1, 2});
  CHECK(plan.ks == std::vector<int>{3, 0});
  CHECK(plan.seeds == 7);
  CHECK(plan.seed_base == 100);
  CHECK(plan.exact_cutoff == 5);
  CHECK(plan.max_path_hops == 3);
  CHECK(plan.block_weight == 2.0);
  CHECK(plan.threads == 4);
  CHECK(plan.timing == false);
  // Unspecified knobs keep their defaults.
  CHECK(plan.room_side == 25.0);
  CHECK(plan.noise_floor == 1e-5);
  CHECK(plan.sinr_threshold == 10.0);

  spill(dir / "defaults.json",
        R"({"node_counts": [2], "levels": [1], "ks": ["all"]})");
  const auto d = load_plan((dir / "defaults.json").string());
  CHECK(d.seeds == 50);
  CHECK(d.exact_cutoff == 4);
  CHECK(d.timing == true);

  SUBCASE("rejects malformed plans") {
    spill(dir / "bad1.json", R"({"levels": [1], "ks": [1]})");
    CHECK_THROWS(load_plan((dir / "bad1.json").string()));
    spill(dir / "bad2.json",
          R"({"node_counts": [1], "levels": [1], "ks": [1]})");
    CHECK_THROWS(load_plan((dir / "bad2.json").string()));
    spill(dir / "bad3.json",
          R"({"node_counts": [3], "levels": [1], "ks": ["some"]})");
    CHECK_THROWS(load_plan((dir / "bad3.json").string()));
    spill(dir / "bad4.json",
          R"({"node_counts": [3], "levels": [1], "ks": [-1]})");
    CHECK_THROWS(load_plan((dir / "bad4.json").string()));
    spill(dir / "bad5.json",
          R"({"node_counts": [3], "levels": [1], "ks": [1], "seeds": 0})");
    CHECK_THROWS(load_plan((dir / "bad5.json").string()));
    CHECK_THROWS(load_plan((dir / "missing.json").string()));
  }
}

TEST_CASE("a small sweep reproduces the frozen baseline numbers") {
  const auto records = run_experiment(tiny_plan());
  REQUIRE(records.size() == 4);

  // Plan order: node counts outermost, then levels, ks, seeds.
  CHECK(records[0].node_count == 2);
  CHECK(records[0].seed == 0);
  CHECK(records[1].node_count == 2);
  CHECK(records[1].seed == 1);
  CHECK(records[2].node_count == 3);
  CHECK(records[2].seed == 0);
  CHECK(records[3].node_count == 3);
  CHECK(records[3].seed == 1);
  for (const auto& r : records) {
    CHECK(r.level == 1);
    CHECK(r.k == 0);
  }

  // Frozen outcomes: the first two-node field cannot host the five worker
  // blocks at all; the second has a one-slot optimum the one-step-lookahead
  // heuristic misses by one slot.
  CHECK(records[0].status == "infeasible");
  CHECK(!records[0].heuristic_slots);
  CHECK(!records[0].exact_slots);
  CHECK(!records[0].gap);

  CHECK(records[1].status == "ok");
  CHECK(*records[1].heuristic_slots == 2);
  CHECK(*records[1].exact_slots == 1);
  CHECK(*records[1].gap == doctest::Approx(1.0));

  CHECK(records[2].status == "ok");
  CHECK(*records[2].heuristic_slots == 2);
  CHECK(*records[2].exact_slots == 2);
  CHECK(*records[2].gap == doctest::Approx(0.0));

  CHECK(records[3].status == "ok");
  CHECK(*records[3].heuristic_slots == 3);
  CHECK(*records[3].exact_slots == 3);
  CHECK(*records[3].gap == doctest::Approx(0.0));

  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(records[i].heuristic_runtime_ms.has_value());
    CHECK(records[i].exact_runtime_ms.has_value());
    CHECK(*records[i].gap >= 0.0);
  }

  SUBCASE("rerunning gives identical outcomes") {
    const auto again = run_experiment(tiny_plan());
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(again[i].status == records[i].status);
      CHECK(again[i].heuristic_slots == records[i].heuristic_slots);
      CHECK(again[i].exact_slots == records[i].exact_slots);
      CHECK(again[i].gap == records[i].gap);
    }
  }

  SUBCASE("timing-free csv bytes are frozen and rerun-stable") {
    const auto dir = scratch_dir("csv");
    write_csv(records, (dir / "a.csv").string(), false);
    write_csv(records, (dir / "b.csv").string(), false);
    const std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(a ==
          "node_count,level,k,seed,heuristic_slots,exact_slots,gap,"
          "heuristic_runtime_ms,exact_runtime_ms,status\n"
          "2,1,all,0,,,,,,infeasible\n"
          "2,1,all,1,2,1,1.000000,,,ok\n"
          "3,1,all,0,2,2,0.000000,,,ok\n"
          "3,1,all,1,3,3,0.000000,,,ok\n");
  }

  SUBCASE("timed csv fills the runtime columns for solved rows") {
    const auto dir = scratch_dir("csv_timed");
    write_csv(records, (dir / "t.csv").string(), true);
    std::istringstream in(slurp(dir / "t.csv"));
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);  // infeasible row keeps blanks
    auto f = split_csv_line(line);
    REQUIRE(f.size() == 10);
    CHECK(f[7].empty());
    CHECK(f[8].empty());
    while (std::getline(in, line)) {
      f = split_csv_line(line);
      REQUIRE(f.size() == 10);
      CHECK(!f[7].empty());
      CHECK(!f[8].empty());
      CHECK(f[9] == "ok");
    }
  }

  SUBCASE("summary views carry the per-cell aggregates") {
    const std::string text = summarize(records);
    CHECK(text.find("mean_gap") != std::string::npos);
    CHECK(text.find("\n2     1     all") != std::string::npos);
    CHECK(text.find("\n3     1     all") != std::string::npos);
    CHECK(text.find("1.0000") != std::string::npos);

    const auto dir = scratch_dir("summary");
    write_summary_csv(records, (dir / "s.csv").string());
    std::istringstream in(slurp(dir / "s.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "node_count,level,k,n_gap,mean_gap,ci95,"
          "median_heuristic_runtime_ms,mean_heuristic_slots");
    std::getline(in, line);
    CHECK(line.rfind("2,1,all,1,1.000000,0.000000,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("3,1,all,2,0.000000,0.000000,", 0) == 0);
  }

  SUBCASE("plots render one svg per view") {
    const auto dir = scratch_dir("plots");
    write_plots(records, dir.string());
    for (const char* leaf :
         {"runtime_curves.svg", "gap_intervals.svg", "slot_counts.svg"}) {
      const std::string svg = slurp(dir / leaf);
      CHECK(svg.find("<svg") != std::string::npos);
      CHECK(svg.find("</svg>") != std::string::npos);
    }
  }
}

TEST_CASE("the exact baseline stops at the cutoff size") {
  auto plan = tiny_plan();
  plan.exact_cutoff = 2;
  const auto records = run_experiment(plan);
  REQUIRE(records.size() == 4);
  CHECK(records[1].status == "ok");  // two nodes: still under the cutoff
  CHECK(records[2].status == "exact_skipped");
  CHECK(records[3].status == "exact_skipped");
  CHECK(records[2].heuristic_slots.has_value());
  CHECK(!records[2].exact_slots);
  CHECK(!records[2].gap);
}
