#pragma once

// JSON network configs. Node indices are 1-based on disk and in messages,
// 0-based in memory. Unknown keys are rejected.
//
// {
//   "n": 5,
//   "arcs": [[1,3],[1,4],[2,4],[3,5],[4,5]],
//   "buffers": ["inf","inf",0,1,0],
//   "services": [{"type":"exponential","mean":1.0}, ...]
// }
//
// or, instead of "services", a network-level block
//   "correlation": {"type":"correlated-exponential","a":0.5}

#include <string>

#include "netq/network.hpp"

namespace netq {

NetworkSpec parse_network_config(const std::string& json_text);
NetworkSpec load_network_config(const std::string& path);

// Canonical re-emission; parses back to an identical NetworkSpec.
std::string to_canonical_json(const NetworkSpec& spec);

}  // namespace netq
