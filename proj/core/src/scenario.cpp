#include "wove/scenario.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wove/radio.hpp"
#include "wove/util.hpp"

namespace wove {

OverlayApp chain_loop_overlay(double block_weight) {
  if (block_weight < 0)
    throw std::invalid_argument("block weight must be nonnegative");
  OverlayApp app;
  app.block_ids = {"src", "b1", "b2", "b3", "b4", "b5", "snk"};
  app.weights = {0, block_weight, block_weight, block_weight, block_weight,
                 block_weight, 0};
  // Chain with one feedback edge closing the 2-3-4-5 loop.
  app.links = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}, {5, 6}};
  app.source_block = 0;
  app.sink_block = 6;
  return app;
}

InfrastructureNetwork generate_infrastructure(const ScenarioConfig& cfg) {
  if (cfg.node_count < 2)
    throw std::invalid_argument("node_count must be >= 2");
  if (cfg.room_side <= 0)
    throw std::invalid_argument("room_side must be positive");

  Rng rng(cfg.seed);
  InfrastructureNetwork net;
  std::vector<std::pair<double, double>> pos;
  for (int v = 0; v < cfg.node_count; ++v) {
    net.node_ids.push_back("n" + std::to_string(v));
    const double x = rng.uniform(0.0, cfg.room_side);
    const double y = rng.uniform(0.0, cfg.room_side);
    pos.push_back({x, y});
  }
  net.gamma = attenuation_from_positions(pos);

  // Capacity window follows the canonical overlay: U(max w_p, sum w_p).
  const OverlayApp app = chain_loop_overlay(cfg.block_weight);
  double w_max = 0.0, w_sum = 0.0;
  for (double w : app.weights) {
    w_max = std::max(w_max, w);
    w_sum += w;
  }
  for (int v = 0; v < cfg.node_count; ++v)
    net.capacities.push_back(rng.uniform(w_max, w_sum));

  net.noise_floor = cfg.noise_floor;
  net.sinr_threshold = cfg.sinr_threshold;
  net.max_slots = 4 * app.link_count();

  const int source =
      static_cast<int>(rng.uniform_int(0, cfg.node_count - 1));
  int sink = static_cast<int>(rng.uniform_int(0, cfg.node_count - 2));
  if (sink >= source) ++sink;  // uniform over the remaining nodes
  net.source_nodes = {source};
  net.sink_node = sink;
  return net;
}

Instance generate_instance(const ScenarioConfig& cfg) {
  Instance inst;
  inst.net = generate_infrastructure(cfg);
  inst.app = chain_loop_overlay(cfg.block_weight);
  check_instance(inst.net, inst.app);
  return inst;
}

}  // namespace wove
