#include <algorithm>

#include "doctest.h"
#include "testsupport.hpp"
#include "wove/exact.hpp"
#include "wove/validator.hpp"

using namespace wove;

namespace {

bool has_tag(const ValidationReport& r, ConstraintTag tag) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.tag == tag; });
}

Solution two_node_solution() {
  Solution sol;
  sol.placement = {{0}, {1}};
  sol.transmissions = {Transmission{0, 1, 0, 0, 0}};
  sol.normalize();
  return sol;
}

}  // namespace

TEST_CASE("the one-hop solution validates in both modes") {
  const auto inst = ts::two_node_basic();
  const auto sol = two_node_solution();
  CHECK(validate(sol, inst.net, inst.app, Mode::strict).ok);
  CHECK(validate(sol, inst.net, inst.app, Mode::relaxed).ok);
  CHECK(format_report(validate(sol, inst.net, inst.app, Mode::strict)) ==
        "valid\n");
}

TEST_CASE("zero-transmission co-location is valid only in relaxed mode") {
  const auto inst = ts::colocate_zero();
  Solution sol;
  sol.placement = {{0}, {0}, {0}};
  sol.normalize();
  const auto relaxed = validate(sol, inst.net, inst.app, Mode::relaxed);
  CHECK(relaxed.ok);
  const auto strict = validate(sol, inst.net, inst.app, Mode::strict);
  CHECK_FALSE(strict.ok);
  CHECK(has_tag(strict, ConstraintTag::dep_delivery));
}

TEST_CASE("placement family: uniqueness, source set, sink pin, capacity") {
  const auto inst = ts::relay_multicast();
  Solution sol;
  sol.placement = {{0}, {2}, {3}};
  sol.transmissions = {
      Transmission{0, 1, 0, 0, 0},
      Transmission{1, 2, 0, 0, 1},
      Transmission{1, 3, 0, 0, 1},
  };
  sol.normalize();
  REQUIRE(validate(sol, inst.net, inst.app, Mode::relaxed).ok);

  SUBCASE("a worker block on two nodes is flagged") {
    sol.placement[2] = {1, 3};
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::placement_unique));
  }
  SUBCASE("the entry block must sit exactly on the source nodes") {
    // Drop the traffic first: with the source moved, its transmissions
    // would trip the structural origin check, which short-circuits the
    // placement family this subcase is about.
    sol.transmissions.clear();
    sol.normalize();
    sol.placement[0] = {1};
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::placement_unique));
  }
  SUBCASE("moving a transmitting block trips the structural origin check") {
    sol.placement[0] = {1};
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::structural));
  }
  SUBCASE("the collector block must sit on the sink") {
    sol.placement[1] = {3};
    sol.placement[2] = {2};
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::placement_unique));
  }
  SUBCASE("overloading a node violates capacity") {
    // b2 joins b3 on D: weight 2 > capacity 1.
    sol.placement[1] = {3};
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK(has_tag(r, ConstraintTag::capacity));
  }
}

TEST_CASE("slot exclusivity catches conflicts") {
  const auto inst = ts::relay_multicast();
  Solution sol;
  sol.placement = {{0}, {2}, {3}};
  sol.transmissions = {
      Transmission{0, 1, 0, 0, 0},
      Transmission{1, 2, 0, 0, 1},
      Transmission{1, 3, 0, 0, 1},
  };
  sol.normalize();

  SUBCASE("send and receive in one slot") {
    sol.transmissions[1].slot = 0;  // B receives and sends in slot 0
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::slot_exclusive));
  }
  SUBCASE("two receptions at one node in one slot") {
    // C -> A and B -> A... use receivers: A -> B plus C -> B in slot 0.
    sol.transmissions.push_back(Transmission{2, 1, 1, 2, 0});
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::slot_exclusive));
  }
}

TEST_CASE("sinr violations are detected") {
  const auto inst = ts::relay_multicast();
  Solution sol;
  sol.placement = {{0}, {2}, {3}};
  // A -> B while D also transmits (gamma[D][B] = 1): SINR below threshold.
  sol.transmissions = {
      Transmission{0, 1, 0, 0, 0},
      Transmission{3, 2, 2, 3, 0},
  };
  sol.normalize();
  const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
  CHECK_FALSE(r.ok);
  CHECK(has_tag(r, ConstraintTag::sinr));
}

TEST_CASE("flow family: delivery, dead ends, send legitimacy") {
  const auto inst = ts::relay_multicast();
  SUBCASE("missing delivery to a consumer host") {
    Solution sol;
    sol.placement = {{0}, {2}, {3}};
    sol.transmissions = {Transmission{0, 1, 0, 0, 0},
                         Transmission{1, 2, 0, 0, 1}};  // b3 on D never fed
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::dep_delivery));
  }
  SUBCASE("received traffic that is neither consumed nor forwarded") {
    Solution sol;
    sol.placement = {{0}, {2}, {3}};
    sol.transmissions = {
        Transmission{0, 1, 0, 0, 0},
        Transmission{1, 2, 0, 0, 1},
        Transmission{1, 3, 0, 0, 1},
        Transmission{2, 1, 1, 2, 2},  // B receives b2's stream, dead end
    };
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::no_dead_end));
  }
  SUBCASE("sending a stream never obtained") {
    Solution sol;
    sol.placement = {{0}, {2}, {3}};
    sol.transmissions = {
        Transmission{0, 1, 0, 0, 0},
        Transmission{1, 2, 0, 0, 1},
        Transmission{1, 3, 0, 0, 1},
        Transmission{2, 1, 2, 3, 2},  // C claims to forward b3's stream
    };
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::send_legitimacy));
  }
  SUBCASE("a host may originate its own block without a prior reception") {
    // D hosts b3 and pushes its stream to B, who hands it to the sink host C
    // (C consumes nothing from it, so give C an outgoing use: none needed —
    // b3 has no consumers, so B forwarding to C would dead-end at C. Instead
    // let D's stream stop at B? B neither hosts a consumer of b3 nor
    // forwards: dead end. So the legal shape is just... no b3 traffic at
    // all. Verify send legitimacy in isolation via the origin itself:
    Solution sol;
    sol.placement = {{0}, {2}, {3}};
    sol.transmissions = {
        Transmission{0, 1, 0, 0, 0},
        Transmission{1, 2, 0, 0, 1},
        Transmission{1, 3, 0, 0, 1},
    };
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
    CHECK(r.ok);  // origin A sends without any reception: legitimate
  }
}

TEST_CASE("phantom loops are rejected even when every local rule holds") {
  const auto inst = ts::orphan_cycle();
  const auto sol = ts::orphan_cycle_phantom_solution();
  const auto r = validate(sol, inst.net, inst.app, Mode::relaxed);
  CHECK_FALSE(r.ok);
  CHECK(has_tag(r, ConstraintTag::phantom_loop));
  // Everything except the orphan ring is fine: no other family fires.
  for (const auto& v : r.violations) CHECK(v.tag == ConstraintTag::phantom_loop);

  // Dropping the ring yields a valid solution.
  Solution clean = sol;
  clean.transmissions.resize(1);
  clean.normalize();
  CHECK(validate(clean, inst.net, inst.app, Mode::strict).ok);
}

TEST_CASE("structural checks catch malformed solutions") {
  const auto inst = ts::two_node_basic();
  auto sol = two_node_solution();
  SUBCASE("transmission indices out of range") {
    sol.transmissions.push_back(Transmission{5, 1, 0, 0, 0});
    const auto r = validate(sol, inst.net, inst.app, Mode::strict);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::structural));
  }
  SUBCASE("self reception") {
    sol.transmissions.push_back(Transmission{1, 1, 0, 0, 1});
    const auto r = validate(sol, inst.net, inst.app, Mode::strict);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::structural));
  }
  SUBCASE("frame length beyond the slot bound") {
    sol.transmissions[0].slot = 7;  // max_slots = 4
    sol.normalize();
    const auto r = validate(sol, inst.net, inst.app, Mode::strict);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::structural));
  }
  SUBCASE("origin must host the block") {
    sol.transmissions[0].origin = 1;
    const auto r = validate(sol, inst.net, inst.app, Mode::strict);
    CHECK_FALSE(r.ok);
    CHECK(has_tag(r, ConstraintTag::structural));
  }
}

TEST_CASE("validation is invariant under slot permutation") {
  const auto inst = ts::relay_multicast();
  Solution sol;
  sol.placement = {{0}, {2}, {3}};
  sol.transmissions = {
      Transmission{0, 1, 0, 0, 0},
      Transmission{1, 2, 0, 0, 1},
      Transmission{1, 3, 0, 0, 1},
  };
  sol.normalize();
  REQUIRE(validate(sol, inst.net, inst.app, Mode::strict).ok);

  // Swap the two used slots: reception "after" forwarding must stay valid
  // (frames repeat, so slot order carries no causality).
  Solution swapped = sol;
  for (auto& tx : swapped.transmissions) tx.slot = tx.slot == 0 ? 1 : 0;
  swapped.normalize();
  CHECK(validate(swapped, inst.net, inst.app, Mode::strict).ok);

  // Spread into arbitrary distinct slots: still valid, same objective.
  Solution spread = sol;
  for (auto& tx : spread.transmissions) tx.slot = tx.slot == 0 ? 5 : 2;
  spread.normalize();
  CHECK(validate(spread, inst.net, inst.app, Mode::strict).ok);
  CHECK(objective(spread) == objective(sol));
}

TEST_CASE("strict and relaxed modes differ exactly on co-location") {
  const auto inst = ts::clique4();
  // mid on the source node A, snk on B: relaxed needs only mid -> snk
  // delivery; strict additionally needs src -> mid traffic (a cycle through
  // another node, since A cannot send to itself).
  Solution sol;
  sol.placement = {{0}, {0}, {1}};
  sol.transmissions = {Transmission{0, 1, 1, 0, 0}};
  sol.normalize();
  CHECK(validate(sol, inst.net, inst.app, Mode::relaxed).ok);
  const auto strict = validate(sol, inst.net, inst.app, Mode::strict);
  CHECK_FALSE(strict.ok);
  CHECK(has_tag(strict, ConstraintTag::dep_delivery));
}
