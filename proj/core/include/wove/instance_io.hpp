#pragma once

#include <string>

#include "wove/model.hpp"

namespace wove {

struct Instance {
  InfrastructureNetwork net;
  OverlayApp app;
};

// JSON file formats.
//
// Instance:
//   {
//     "infrastructure": {
//       "nodes": [{"id": "n0", "capacity": 2.0, "x": 1.5, "y": 3.0}, ...],
//       "gamma": [[0, 0.25], [0.25, 0]],        // optional; else from x/y
//       "noise_floor": 1e-5,
//       "sinr_threshold": 10.0,
//       "max_slots": 28,
//       "sources": ["n0"],
//       "sink": "n3"
//     },
//     "overlay": {
//       "blocks": [{"id": "src", "weight": 0.0}, ...],
//       "links": [["src", "b1"], ...],
//       "source_block": "src",
//       "sink_block": "snk"
//     }
//   }
//
// Solution:
//   {
//     "placement": {"b1": "n2", "src": ["n0", "n1"]},
//     "transmissions": [["n0", "n2", "b1", "n0", 0], ...],
//     "frame_length": 3
//   }

Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& json_text);
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);

Solution load_solution(const std::string& path, const Instance& inst);
Solution parse_solution(const std::string& json_text, const Instance& inst);
void save_solution(const Solution& sol, const Instance& inst,
                   const std::string& path);
std::string solution_to_json(const Solution& sol, const Instance& inst);

}  // namespace wove
