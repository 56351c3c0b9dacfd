#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "wove/model.hpp"

namespace wove {

/// How the received signal power of a transmission is modelled:
///  - attenuation: power equals the channel attenuation gamma[sender][receiver]
///  - unit:        power is a constant 1 regardless of the channel
/// `attenuation` is the default everywhere; `unit` exists so the emitted
/// optimization model can mirror either convention.
enum class SignalModel { attenuation, unit };

/// Everything happening in one TDMA slot: which nodes transmit and which
/// (sender, receiver) receptions are expected to decode.
struct SlotLoad {
  int slot = 0;
  std::set<int> active_senders;
  std::vector<std::pair<int, int>> receptions;  // senders must be active
};

/// Free-space style attenuation from node positions: gamma = 1 / distance^2.
/// Throws std::invalid_argument when two nodes coincide.
std::vector<std::vector<double>> attenuation_from_positions(
    const std::vector<std::pair<double, double>>& positions);

/// SINR of one reception given everything else active in the slot:
/// signal / (noise_floor + sum of attenuation from the other active senders).
double sinr_at(int sender, int receiver, const SlotLoad& load,
               const InfrastructureNetwork& net,
               SignalModel model = SignalModel::attenuation);

/// A slot is feasible when no node both sends and receives, no node has to
/// decode two receptions at once, and every reception meets the threshold.
bool slot_feasible(const SlotLoad& load, const InfrastructureNetwork& net,
                   SignalModel model = SignalModel::attenuation);

/// Group a solution's transmissions into per-slot loads (multicast receivers
/// become separate receptions of the same sender).
std::map<int, SlotLoad> build_slot_loads(const Solution& sol);

}  // namespace wove
