#include "wove/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "wove/exact.hpp"

namespace wove {

namespace {

using nlohmann::json;

int parse_k(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "all") return 0;
    throw std::runtime_error("plan: k entries must be integers or \"all\"");
  }
  const int k = j.get<int>();
  if (k < 0) throw std::runtime_error("plan: k must be >= 0");
  return k;
}

}  // namespace

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  ExperimentPlan plan;
  plan.node_counts = j.at("node_counts").get<std::vector<int>>();
  plan.levels = j.at("levels").get<std::vector<int>>();
  for (const auto& jk : j.at("ks")) plan.ks.push_back(parse_k(jk));
  plan.seeds = j.value("seeds", plan.seeds);
  plan.seed_base = j.value("seed_base", plan.seed_base);
  plan.exact_cutoff = j.value("exact_cutoff", plan.exact_cutoff);
  plan.max_path_hops = j.value("max_path_hops", plan.max_path_hops);
  plan.block_weight = j.value("block_weight", plan.block_weight);
  plan.room_side = j.value("room_side", plan.room_side);
  plan.noise_floor = j.value("noise_floor", plan.noise_floor);
  plan.sinr_threshold = j.value("sinr_threshold", plan.sinr_threshold);
  plan.threads = j.value("threads", plan.threads);
  plan.timing = j.value("timing", plan.timing);
  if (plan.node_counts.empty() || plan.levels.empty() || plan.ks.empty() ||
      plan.seeds <= 0)
    throw std::runtime_error("plan: node_counts, levels, ks, seeds must all "
                             "be nonempty/positive");
  for (int n : plan.node_counts)
    if (n < 2) throw std::runtime_error("plan: node counts must be >= 2");
  return plan;
}

std::optional<double> compute_gap(const std::optional<int>& heuristic_slots,
                                  const std::optional<int>& exact_slots) {
  if (!heuristic_slots || !exact_slots || *exact_slots < 1)
    return std::nullopt;
  return (double(*heuristic_slots) - double(*exact_slots)) /
         double(*exact_slots);
}

namespace {

void run_pool(std::size_t jobs, int threads,
              const std::function<void(std::size_t)>& body) {
  int n = threads > 0 ? threads
                      : int(std::max(1u, std::thread::hardware_concurrency()));
  n = int(std::min<std::size_t>(std::size_t(n), jobs));
  if (n <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CellKey {
  int node_count, level, k;
  auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
  int n_gap = 0;
  double gap_mean = 0.0, gap_ci = 0.0;
  double median_heur_ms = 0.0;
  double mean_slots = 0.0;
  int n_slots = 0;
  int n_heur_ms = 0;
};

std::map<CellKey, CellStats> cell_statistics(
    const std::vector<ExperimentRecord>& records) {
  std::map<CellKey, std::vector<const ExperimentRecord*>> cells;
  for (const auto& r : records)
    cells[CellKey{r.node_count, r.level, r.k}].push_back(&r);
  std::map<CellKey, CellStats> out;
  for (const auto& [key, rs] : cells) {
    CellStats st;
    std::vector<double> gaps, times, slots;
    for (const auto* r : rs) {
      if (r->gap) gaps.push_back(*r->gap);
      if (r->heuristic_runtime_ms) times.push_back(*r->heuristic_runtime_ms);
      if (r->heuristic_slots) slots.push_back(double(*r->heuristic_slots));
    }
    st.n_gap = int(gaps.size());
    if (!gaps.empty()) {
      double sum = 0.0;
      for (double g : gaps) sum += g;
      st.gap_mean = sum / double(gaps.size());
      double ss = 0.0;
      for (double g : gaps) ss += (g - st.gap_mean) * (g - st.gap_mean);
      const double sd =
          gaps.size() > 1 ? std::sqrt(ss / double(gaps.size() - 1)) : 0.0;
      st.gap_ci = 1.96 * sd / std::sqrt(double(gaps.size()));
    }
    st.n_heur_ms = int(times.size());
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      const std::size_t m = times.size();
      st.median_heur_ms = m % 2 ? times[m / 2]
                                : 0.5 * (times[m / 2 - 1] + times[m / 2]);
    }
    st.n_slots = int(slots.size());
    if (!slots.empty()) {
      double sum = 0.0;
      for (double s : slots) sum += s;
      st.mean_slots = sum / double(slots.size());
    }
    out.emplace(key, st);
  }
  return out;
}

std::string fmt_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string k_label(int k) { return k == 0 ? "all" : std::to_string(k); }

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentPlan& plan) {
  struct InstanceJob {
    int node_count;
    std::uint64_t seed;
    Instance inst;
    std::optional<int> exact_slots;
    std::optional<double> exact_ms;
    bool run_exact = false;
  };

  std::vector<InstanceJob> instances;
  std::map<std::pair<int, std::uint64_t>, std::size_t> instance_index;
  for (int nodes : plan.node_counts)
    for (int i = 0; i < plan.seeds; ++i) {
      const std::uint64_t seed = plan.seed_base + std::uint64_t(i);
      ScenarioConfig cfg;
      cfg.node_count = nodes;
      cfg.room_side = plan.room_side;
      cfg.noise_floor = plan.noise_floor;
      cfg.sinr_threshold = plan.sinr_threshold;
      cfg.block_weight = plan.block_weight;
      cfg.seed = seed;
      InstanceJob job;
      job.node_count = nodes;
      job.seed = seed;
      job.inst = generate_instance(cfg);
      job.run_exact = nodes <= plan.exact_cutoff;
      instance_index[{nodes, seed}] = instances.size();
      instances.push_back(std::move(job));
    }

  // Phase 1: the exact baseline, once per instance.
  run_pool(instances.size(), plan.threads, [&](std::size_t i) {
    InstanceJob& job = instances[i];
    if (!job.run_exact) return;
    ExactConfig cfg;
    cfg.mode = Mode::relaxed;
    const SolveResult res = solve_exact(job.inst.net, job.inst.app, cfg);
    if (res.status == SolveStatus::solved) {
      const auto report =
          validate(*res.solution, job.inst.net, job.inst.app, Mode::relaxed);
      if (!report.ok)
        throw std::logic_error("exact solution failed validation (nodes=" +
                               std::to_string(job.node_count) + " seed=" +
                               std::to_string(job.seed) + ")");
      job.exact_slots = objective(*res.solution);
      job.exact_ms = res.stats.runtime_ms;
    }
  });

  // Phase 2: every heuristic cell, assembled in plan order.
  std::vector<ExperimentRecord> records;
  for (int nodes : plan.node_counts)
    for (int level : plan.levels)
      for (int k : plan.ks)
        for (int i = 0; i < plan.seeds; ++i) {
          ExperimentRecord r;
          r.node_count = nodes;
          r.level = level;
          r.k = k;
          r.seed = plan.seed_base + std::uint64_t(i);
          records.push_back(r);
        }

  run_pool(records.size(), plan.threads, [&](std::size_t i) {
    ExperimentRecord& r = records[i];
    const InstanceJob& job =
        instances[instance_index.at({r.node_count, r.seed})];
    HeuristicParams hp;
    hp.level = r.level;
    hp.k = r.k;
    hp.seed = r.seed;
    hp.max_path_hops = plan.max_path_hops;
    hp.mode = Mode::relaxed;
    const HeuristicResult res = solve_heuristic(job.inst.net, job.inst.app, hp);
    switch (res.status) {
      case SolveStatus::solved: {
        const auto report =
            validate(*res.solution, job.inst.net, job.inst.app, Mode::relaxed);
        if (!report.ok)
          throw std::logic_error(
              "heuristic solution failed validation (nodes=" +
              std::to_string(r.node_count) + " seed=" +
              std::to_string(r.seed) + ")");
        r.heuristic_slots = objective(*res.solution);
        r.heuristic_runtime_ms = res.stats.runtime_ms;
        r.status = job.run_exact ? "ok" : "exact_skipped";
        break;
      }
      case SolveStatus::infeasible:
        r.status = "infeasible";
        break;
      case SolveStatus::budget_exhausted:
        r.status = "budget";
        break;
    }
    if (job.exact_slots) {
      r.exact_slots = job.exact_slots;
      r.exact_runtime_ms = job.exact_ms;
    }
    r.gap = compute_gap(r.heuristic_slots, r.exact_slots);
    if (r.gap && *r.gap < 0.0)
      throw std::logic_error(
          "heuristic beat the exact optimum (nodes=" +
          std::to_string(r.node_count) + " seed=" + std::to_string(r.seed) +
          "): the exact solver is not optimal");
  });

  return records;
}

void write_csv(const std::vector<ExperimentRecord>& records,
               const std::string& path, bool timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "node_count,level,k,seed,heuristic_slots,exact_slots,gap,"
         "heuristic_runtime_ms,exact_runtime_ms,status\n";
  for (const auto& r : records) {
    out << r.node_count << ',' << r.level << ',' << k_label(r.k) << ','
        << r.seed << ',';
    if (r.heuristic_slots) out << *r.heuristic_slots;
    out << ',';
    if (r.exact_slots) out << *r.exact_slots;
    out << ',';
    if (r.gap) out << fmt_double(*r.gap, 6);
    out << ',';
    if (timing && r.heuristic_runtime_ms)
      out << fmt_double(*r.heuristic_runtime_ms, 3);
    out << ',';
    if (timing && r.exact_runtime_ms) out << fmt_double(*r.exact_runtime_ms, 3);
    out << ',' << r.status << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string summarize(const std::vector<ExperimentRecord>& records) {
  const auto cells = cell_statistics(records);
  std::ostringstream os;
  os << "cell summary (one row per node_count/level/k)\n";
  os << "nodes level k     n_gap mean_gap  ci95      med_heur_ms mean_slots\n";
  for (const auto& [key, st] : cells) {
    char line[160];
    std::snprintf(line, sizeof line, "%-5d %-5d %-5s %-5d %-9s %-9s %-11s %s\n",
                  key.node_count, key.level, k_label(key.k).c_str(), st.n_gap,
                  st.n_gap ? fmt_double(st.gap_mean, 4).c_str() : "-",
                  st.n_gap ? fmt_double(st.gap_ci, 4).c_str() : "-",
                  st.n_heur_ms ? fmt_double(st.median_heur_ms, 3).c_str()
                               : "-",
                  st.n_slots ? fmt_double(st.mean_slots, 3).c_str() : "-");
    os << line;
  }
  return os.str();
}

void write_summary_csv(const std::vector<ExperimentRecord>& records,
                       const std::string& path) {
  const auto cells = cell_statistics(records);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "node_count,level,k,n_gap,mean_gap,ci95,median_heuristic_runtime_ms,"
         "mean_heuristic_slots\n";
  for (const auto& [key, st] : cells) {
    out << key.node_count << ',' << key.level << ',' << k_label(key.k) << ','
        << st.n_gap << ',';
    if (st.n_gap) out << fmt_double(st.gap_mean, 6) << ','
                      << fmt_double(st.gap_ci, 6);
    else out << ',';
    out << ',';
    if (st.n_heur_ms) out << fmt_double(st.median_heur_ms, 3);
    out << ',';
    if (st.n_slots) out << fmt_double(st.mean_slots, 3);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

// Minimal SVG chart scaffolding: one coordinate box with ticks plus
// polyline/point series and a legend.
struct Chart {
  double width = 720, height = 460;
  double ml = 70, mr = 180, mt = 30, mb = 55;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  std::ostringstream body;

  double px(double x) const {
    return ml + (x - xmin) / (xmax - xmin + 1e-300) * (width - ml - mr);
  }
  double py(double y) const {
    return height - mb -
           (y - ymin) / (ymax - ymin + 1e-300) * (height - mt - mb);
  }
  static std::string color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf",
                                    "#7f7f7f"};
    return palette[i % (sizeof palette / sizeof palette[0])];
  }
  void frame(const std::string& title, const std::string& xlabel,
             const std::string& ylabel) {
    body << "<rect x='" << ml << "' y='" << mt << "' width='"
         << width - ml - mr << "' height='" << height - mt - mb
         << "' fill='none' stroke='#333'/>\n";
    body << "<text x='" << (ml + (width - mr)) / 2 << "' y='18' "
         << "text-anchor='middle' font-size='15'>" << title << "</text>\n";
    body << "<text x='" << (ml + (width - mr)) / 2 << "' y='"
         << height - 12 << "' text-anchor='middle' font-size='12'>" << xlabel
         << "</text>\n";
    body << "<text x='16' y='" << (mt + height - mb) / 2
         << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
         << (mt + height - mb) / 2 << ")'>" << ylabel << "</text>\n";
    for (int i = 0; i <= 5; ++i) {
      const double fx = xmin + (xmax - xmin) * i / 5.0;
      const double fy = ymin + (ymax - ymin) * i / 5.0;
      body << "<line x1='" << px(fx) << "' y1='" << height - mb << "' x2='"
           << px(fx) << "' y2='" << height - mb + 5 << "' stroke='#333'/>\n"
           << "<text x='" << px(fx) << "' y='" << height - mb + 18
           << "' text-anchor='middle' font-size='10'>" << fmt_double(fx, 2)
           << "</text>\n";
      body << "<line x1='" << ml - 5 << "' y1='" << py(fy) << "' x2='" << ml
           << "' y2='" << py(fy) << "' stroke='#333'/>\n"
           << "<text x='" << ml - 8 << "' y='" << py(fy) + 3
           << "' text-anchor='end' font-size='10'>" << fmt_double(fy, 2)
           << "</text>\n";
    }
  }
  void legend_entry(std::size_t i, const std::string& label) {
    const double y = mt + 14 + 16 * double(i);
    body << "<line x1='" << width - mr + 10 << "' y1='" << y << "' x2='"
         << width - mr + 30 << "' y2='" << y << "' stroke='" << color(i)
         << "' stroke-width='2'/>\n<text x='" << width - mr + 35 << "' y='"
         << y + 4 << "' font-size='11'>" << label << "</text>\n";
  }
  std::string finish() const {
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
       << "' height='" << height << "' viewBox='0 0 " << width << ' '
       << height << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
       << body.str() << "</svg>\n";
    return os.str();
  }
};

void spill_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace

void write_plots(const std::vector<ExperimentRecord>& records,
                 const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto cells = cell_statistics(records);

  // Series keyed by (level, k), points over node_count.
  std::map<std::pair<int, int>, std::map<int, CellStats>> series;
  for (const auto& [key, st] : cells)
    series[{key.level, key.k}][key.node_count] = st;

  auto series_label = [](const std::pair<int, int>& lk) {
    return "level=" + std::to_string(lk.first) + " k=" + k_label(lk.second);
  };

  {  // Median heuristic runtime vs node count.
    Chart ch;
    ch.xmin = 1e300, ch.xmax = -1e300, ch.ymin = 0, ch.ymax = -1e300;
    bool any = false;
    for (const auto& [lk, pts] : series)
      for (const auto& [nodes, st] : pts)
        if (st.n_heur_ms) {
          any = true;
          ch.xmin = std::min(ch.xmin, double(nodes));
          ch.xmax = std::max(ch.xmax, double(nodes));
          ch.ymax = std::max(ch.ymax, st.median_heur_ms);
        }
    if (!any) { ch.xmin = 0; ch.xmax = 1; ch.ymax = 1; }
    if (ch.xmax <= ch.xmin) ch.xmax = ch.xmin + 1;
    if (ch.ymax <= 0) ch.ymax = 1;
    ch.ymax *= 1.1;
    ch.frame("heuristic runtime vs network size", "nodes",
             "median runtime (ms)");
    std::size_t si = 0;
    for (const auto& [lk, pts] : series) {
      std::ostringstream poly;
      for (const auto& [nodes, st] : pts)
        if (st.n_heur_ms)
          poly << ch.px(double(nodes)) << ',' << ch.py(st.median_heur_ms)
               << ' ';
      ch.body << "<polyline points='" << poly.str()
              << "' fill='none' stroke='" << Chart::color(si)
              << "' stroke-width='2'/>\n";
      for (const auto& [nodes, st] : pts)
        if (st.n_heur_ms)
          ch.body << "<circle cx='" << ch.px(double(nodes)) << "' cy='"
                  << ch.py(st.median_heur_ms) << "' r='3' fill='"
                  << Chart::color(si) << "'/>\n";
      ch.legend_entry(si, series_label(lk));
      ++si;
    }
    spill_file(dir + "/runtime_curves.svg", ch.finish());
  }

  {  // Gap mean with 95% confidence intervals, one column per cell.
    std::vector<std::pair<CellKey, CellStats>> gap_cells;
    for (const auto& [key, st] : cells)
      if (st.n_gap) gap_cells.emplace_back(key, st);
    Chart ch;
    ch.xmin = 0;
    ch.xmax = double(std::max<std::size_t>(1, gap_cells.size())) + 1.0;
    ch.ymin = 0, ch.ymax = 0.0;
    for (const auto& [key, st] : gap_cells) {
      ch.ymax = std::max(ch.ymax, st.gap_mean + st.gap_ci);
      ch.ymin = std::min(ch.ymin, st.gap_mean - st.gap_ci);
    }
    if (ch.ymax <= ch.ymin) ch.ymax = ch.ymin + 1;
    ch.ymax += 0.05;
    ch.frame("optimality gap by cell (mean with 95% CI)", "cell",
             "(heuristic - exact) / exact");
    std::size_t i = 0;
    for (const auto& [key, st] : gap_cells) {
      const double x = ch.px(double(i) + 1.0);
      ch.body << "<line x1='" << x << "' y1='" << ch.py(st.gap_mean - st.gap_ci)
              << "' x2='" << x << "' y2='" << ch.py(st.gap_mean + st.gap_ci)
              << "' stroke='" << Chart::color(i) << "' stroke-width='2'/>\n"
              << "<circle cx='" << x << "' cy='" << ch.py(st.gap_mean)
              << "' r='4' fill='" << Chart::color(i) << "'/>\n";
      ch.legend_entry(i, "n=" + std::to_string(key.node_count) + " level=" +
                             std::to_string(key.level) + " k=" +
                             k_label(key.k));
      ++i;
    }
    spill_file(dir + "/gap_intervals.svg", ch.finish());
  }

  {  // Mean heuristic slot count vs node count.
    Chart ch;
    ch.xmin = 1e300, ch.xmax = -1e300, ch.ymin = 0, ch.ymax = -1e300;
    bool any = false;
    for (const auto& [lk, pts] : series)
      for (const auto& [nodes, st] : pts)
        if (st.n_slots) {
          any = true;
          ch.xmin = std::min(ch.xmin, double(nodes));
          ch.xmax = std::max(ch.xmax, double(nodes));
          ch.ymax = std::max(ch.ymax, st.mean_slots);
        }
    if (!any) { ch.xmin = 0; ch.xmax = 1; ch.ymax = 1; }
    if (ch.xmax <= ch.xmin) ch.xmax = ch.xmin + 1;
    if (ch.ymax <= 0) ch.ymax = 1;
    ch.ymax *= 1.1;
    ch.frame("schedule length vs network size", "nodes",
             "mean heuristic slots");
    std::size_t si = 0;
    for (const auto& [lk, pts] : series) {
      std::ostringstream poly;
      for (const auto& [nodes, st] : pts)
        if (st.n_slots)
          poly << ch.px(double(nodes)) << ',' << ch.py(st.mean_slots) << ' ';
      ch.body << "<polyline points='" << poly.str()
              << "' fill='none' stroke='" << Chart::color(si)
              << "' stroke-width='2'/>\n";
      for (const auto& [nodes, st] : pts)
        if (st.n_slots)
          ch.body << "<circle cx='" << ch.px(double(nodes)) << "' cy='"
                  << ch.py(st.mean_slots) << "' r='3' fill='"
                  << Chart::color(si) << "'/>\n";
      ch.legend_entry(si, series_label(lk));
      ++si;
    }
    spill_file(dir + "/slot_counts.svg", ch.finish());
  }
}

}  // namespace wove
