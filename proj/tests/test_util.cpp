#include "doctest.h"
#include "wove/util.hpp"

using wove::Rng;

TEST_CASE("rng reproduces the same stream for the same seed") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.uniform_int(0, 1000) == b.uniform_int(0, 1000));
  }
}

TEST_CASE("rng stream is frozen across platforms and releases") {
  // mt19937_64 output is pinned by the standard and our derivations avoid
  // implementation-defined library distributions, so these exact values must
  // never change.
  Rng r(12345);
  CHECK(r.uniform() == doctest::Approx(0.357629722888426).epsilon(1e-13));
  CHECK(r.uniform() == doctest::Approx(0.400442617044061).epsilon(1e-13));
  Rng ri(12345);
  CHECK(ri.uniform_int(0, 99) == 46);
  CHECK(ri.uniform_int(0, 99) == 21);
}

TEST_CASE("rng uniform stays in range and uniform_int covers bounds") {
  Rng r(7);
  bool lo_seen = false, hi_seen = false;
  for (int i = 0; i < 2000; ++i) {
    const double u = r.uniform(2.0, 3.0);
    CHECK(u >= 2.0);
    CHECK(u < 3.0);
    const auto v = r.uniform_int(0, 3);
    CHECK(v >= 0);
    CHECK(v <= 3);
    lo_seen |= v == 0;
    hi_seen |= v == 3;
  }
  CHECK(lo_seen);
  CHECK(hi_seen);
  CHECK_THROWS(r.uniform_int(2, 1));
}

TEST_CASE("solve status names") {
  CHECK(std::string(to_string(wove::SolveStatus::solved)) == "solved");
  CHECK(std::string(to_string(wove::SolveStatus::infeasible)) == "infeasible");
  CHECK(std::string(to_string(wove::SolveStatus::budget_exhausted)) ==
        "budget_exhausted");
}
