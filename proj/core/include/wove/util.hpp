#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace wove {

/// Deterministic RNG wrapper. mt19937_64 has a standardized bit stream, and
/// the derived draws below avoid the implementation-defined std::*_distribution
/// classes, so identical seeds reproduce identical values on any platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform double in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

private:
  std::mt19937_64 eng_;
};

/// Wall-clock stopwatch used for runtime columns in experiment records.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/// Outcome of a solver run (shared by the exact and heuristic search).
enum class SolveStatus { solved, infeasible, budget_exhausted };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

}  // namespace wove
