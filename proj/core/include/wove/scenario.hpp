#pragma once

#include <cstdint>

#include "wove/instance_io.hpp"
#include "wove/model.hpp"

namespace wove {

struct ScenarioConfig {
  int node_count = 4;
  double room_side = 25.0;       // square room, positions i.i.d. uniform
  double noise_floor = 1e-5;
  double sinr_threshold = 10.0;
  double block_weight = 1.0;     // w_o for the worker blocks
  std::uint64_t seed = 0;
};

// Seven-block chain with one feedback edge:
//   src -> 1 -> 2 -> 3 -> 4 -> 5 -> snk, plus 5 -> 2.
// Worker blocks weigh w_o; src and snk weigh 0.
OverlayApp chain_loop_overlay(double block_weight);

// Random placement field: positions uniform in the room, gamma = 1/d^2,
// capacities uniform in [w_o, 5*w_o], one random source, distinct sink.
InfrastructureNetwork generate_infrastructure(const ScenarioConfig& cfg);

Instance generate_instance(const ScenarioConfig& cfg);

}  // namespace wove
