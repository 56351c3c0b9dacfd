#include "wove/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wove/radio.hpp"

namespace wove {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int require_node(const InfrastructureNetwork& net, const std::string& id) {
  const int v = net.index_of(id);
  if (v < 0) throw std::runtime_error("unknown node id: " + id);
  return v;
}

int require_block(const OverlayApp& app, const std::string& id) {
  const int p = app.index_of(id);
  if (p < 0) throw std::runtime_error("unknown block id: " + id);
  return p;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("instance is not valid JSON: ") +
                             e.what());
  }

  Instance inst;
  const auto& ji = j.at("infrastructure");
  std::vector<std::pair<double, double>> positions;
  bool have_positions = true;
  for (const auto& jn : ji.at("nodes")) {
    inst.net.node_ids.push_back(jn.at("id").get<std::string>());
    inst.net.capacities.push_back(jn.at("capacity").get<double>());
    if (jn.contains("x") && jn.contains("y"))
      positions.push_back({jn.at("x").get<double>(), jn.at("y").get<double>()});
    else
      have_positions = false;
  }
  if (ji.contains("gamma")) {
    inst.net.gamma = ji.at("gamma").get<std::vector<std::vector<double>>>();
  } else if (have_positions) {
    inst.net.gamma = attenuation_from_positions(positions);
  } else {
    throw std::runtime_error(
        "instance needs either a gamma matrix or node positions");
  }
  inst.net.noise_floor = ji.at("noise_floor").get<double>();
  inst.net.sinr_threshold = ji.at("sinr_threshold").get<double>();
  inst.net.max_slots = ji.at("max_slots").get<int>();
  for (const auto& js : ji.at("sources"))
    inst.net.source_nodes.push_back(
        require_node(inst.net, js.get<std::string>()));
  std::sort(inst.net.source_nodes.begin(), inst.net.source_nodes.end());
  inst.net.sink_node = require_node(inst.net, ji.at("sink").get<std::string>());
  if (ji.contains("desired_rate"))
    inst.net.desired_rate = ji.at("desired_rate").get<double>();

  const auto& jo = j.at("overlay");
  for (const auto& jb : jo.at("blocks")) {
    inst.app.block_ids.push_back(jb.at("id").get<std::string>());
    inst.app.weights.push_back(jb.at("weight").get<double>());
  }
  for (const auto& jl : jo.at("links")) {
    const int a = require_block(inst.app, jl.at(0).get<std::string>());
    const int b = require_block(inst.app, jl.at(1).get<std::string>());
    inst.app.links.push_back({a, b});
  }
  inst.app.source_block =
      require_block(inst.app, jo.at("source_block").get<std::string>());
  inst.app.sink_block =
      require_block(inst.app, jo.at("sink_block").get<std::string>());

  check_instance(inst.net, inst.app);
  return inst;
}

Instance load_instance(const std::string& path) {
  return parse_instance(slurp(path));
}

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  auto& ji = j["infrastructure"];
  ji["nodes"] = ordered_json::array();
  for (int v = 0; v < inst.net.node_count(); ++v) {
    ordered_json jn;
    jn["id"] = inst.net.node_ids[v];
    jn["capacity"] = inst.net.capacities[v];
    ji["nodes"].push_back(jn);
  }
  ji["gamma"] = inst.net.gamma;
  ji["noise_floor"] = inst.net.noise_floor;
  ji["sinr_threshold"] = inst.net.sinr_threshold;
  ji["max_slots"] = inst.net.max_slots;
  ji["sources"] = ordered_json::array();
  for (int v : inst.net.source_nodes)
    ji["sources"].push_back(inst.net.node_ids[v]);
  ji["sink"] = inst.net.node_ids[inst.net.sink_node];
  if (inst.net.desired_rate) ji["desired_rate"] = *inst.net.desired_rate;

  auto& jo = j["overlay"];
  jo["blocks"] = ordered_json::array();
  for (int p = 0; p < inst.app.block_count(); ++p) {
    ordered_json jb;
    jb["id"] = inst.app.block_ids[p];
    jb["weight"] = inst.app.weights[p];
    jo["blocks"].push_back(jb);
  }
  jo["links"] = ordered_json::array();
  for (const auto& [a, b] : inst.app.links)
    jo["links"].push_back({inst.app.block_ids[a], inst.app.block_ids[b]});
  jo["source_block"] = inst.app.block_ids[inst.app.source_block];
  jo["sink_block"] = inst.app.block_ids[inst.app.sink_block];
  return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
  spill(path, instance_to_json(inst));
}

Solution parse_solution(const std::string& json_text, const Instance& inst) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("solution is not valid JSON: ") +
                             e.what());
  }

  Solution sol;
  sol.placement.assign(inst.app.block_count(), {});
  for (const auto& [block_id, value] : j.at("placement").items()) {
    const int p = require_block(inst.app, block_id);
    if (value.is_array()) {
      for (const auto& jn : value)
        sol.placement[p].push_back(
            require_node(inst.net, jn.get<std::string>()));
    } else {
      sol.placement[p].push_back(
          require_node(inst.net, value.get<std::string>()));
    }
  }
  for (const auto& jt : j.at("transmissions")) {
    if (!jt.is_array() || jt.size() != 5)
      throw std::runtime_error(
          "each transmission must be [sender, receiver, block, origin, slot]");
    Transmission t;
    t.sender = require_node(inst.net, jt.at(0).get<std::string>());
    t.receiver = require_node(inst.net, jt.at(1).get<std::string>());
    t.block = require_block(inst.app, jt.at(2).get<std::string>());
    t.origin = require_node(inst.net, jt.at(3).get<std::string>());
    t.slot = jt.at(4).get<int>();
    sol.transmissions.push_back(t);
  }
  if (j.contains("frame_length"))
    sol.frame_length = j.at("frame_length").get<int>();
  const int claimed = sol.frame_length;
  sol.normalize();
  sol.frame_length = std::max(sol.frame_length, claimed);
  return sol;
}

Solution load_solution(const std::string& path, const Instance& inst) {
  return parse_solution(slurp(path), inst);
}

std::string solution_to_json(const Solution& sol, const Instance& inst) {
  Solution s = sol;
  s.normalize();
  ordered_json j;
  j["placement"] = ordered_json::object();
  for (int p = 0; p < static_cast<int>(s.placement.size()); ++p) {
    const auto& hostsv = s.placement[p];
    if (hostsv.size() == 1) {
      j["placement"][inst.app.block_ids[p]] = inst.net.node_ids[hostsv[0]];
    } else {
      auto arr = ordered_json::array();
      for (int v : hostsv) arr.push_back(inst.net.node_ids[v]);
      j["placement"][inst.app.block_ids[p]] = arr;
    }
  }
  j["transmissions"] = ordered_json::array();
  for (const auto& t : s.transmissions)
    j["transmissions"].push_back(
        {inst.net.node_ids[t.sender], inst.net.node_ids[t.receiver],
         inst.app.block_ids[t.block], inst.net.node_ids[t.origin], t.slot});
  j["frame_length"] = s.frame_length;
  return j.dump(2) + "\n";
}

void save_solution(const Solution& sol, const Instance& inst,
                   const std::string& path) {
  spill(path, solution_to_json(sol, inst));
}

}  // namespace wove
