#include "wove/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace wove {

std::vector<std::vector<double>> attenuation_from_positions(
    const std::vector<std::pair<double, double>>& positions) {
  const int n = static_cast<int>(positions.size());
  std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = positions[i].first - positions[j].first;
      const double dy = positions[i].second - positions[j].second;
      const double d2 = dx * dx + dy * dy;
      if (d2 == 0.0)
        throw std::invalid_argument("coincident node positions");
      g[i][j] = 1.0 / d2;
    }
  }
  return g;
}

double sinr_at(int sender, int receiver, const SlotLoad& load,
               const InfrastructureNetwork& net, SignalModel model) {
  const double signal = model == SignalModel::attenuation
                            ? net.gamma[sender][receiver]
                            : 1.0;
  double interference = net.noise_floor;
  for (int u : load.active_senders)
    if (u != sender) interference += net.gamma[u][receiver];
  return signal / interference;
}

bool slot_feasible(const SlotLoad& load, const InfrastructureNetwork& net,
                   SignalModel model) {
  // Half-duplex and single-decode limits.
  std::set<int> receivers;
  for (const auto& [s, r] : load.receptions) {
    if (load.active_senders.count(r)) return false;
    if (!receivers.insert(r).second) return false;
  }
  for (const auto& [s, r] : load.receptions)
    if (sinr_at(s, r, load, net, model) < net.sinr_threshold) return false;
  return true;
}

std::map<int, SlotLoad> build_slot_loads(const Solution& sol) {
  std::map<int, SlotLoad> loads;
  for (const auto& t : sol.transmissions) {
    auto& load = loads[t.slot];
    load.slot = t.slot;
    load.active_senders.insert(t.sender);
    load.receptions.push_back({t.sender, t.receiver});
  }
  return loads;
}

}  // namespace wove
