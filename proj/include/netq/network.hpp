#pragma once

// Declarative fork-join network topology: a DAG of single-server FCFS nodes
// with initial buffer contents, validated and compiled into the partial
// adjacency matrices G_0..G_M (arc (i,j) lands in G_m when node j starts
// with m customers in its buffer).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netq/maxplus.hpp"
#include "netq/stochastic.hpp"

namespace netq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NetworkSpec {
  int node_count = 0;
  std::vector<std::pair<int, int>> arcs;        // 0-based internally
  std::vector<std::optional<int>> buffers;      // nullopt = saturated (r = inf)
  ServiceModel services;

  bool operator==(const NetworkSpec&) const = default;
};

struct ValidatedNetwork {
  NetworkSpec spec;
  std::vector<std::vector<int>> predecessors;
  std::vector<std::vector<int>> successors;
  std::vector<int> topo_order;  // full-graph topological order

  int node_count() const { return spec.node_count; }
  bool is_source(int i) const { return predecessors[size_t(i)].empty(); }
  // Finite initial buffer content of a non-source node.
  int buffer(int i) const { return *spec.buffers[size_t(i)]; }
};

// Checks DAG-ness (reporting a witness cycle by node names), buffer placement
// (saturated exactly on source nodes, finite r >= 0 elsewhere) and service
// parameters. Node names in messages are 1-based to match configs.
ValidatedNetwork validate(NetworkSpec spec);

struct PartialGraphs {
  int max_buffer = 0;                  // M: largest finite buffer content
  std::vector<maxplus::Matrix> g;      // G_0..G_M (eps-0 matrices)
  maxplus::Matrix g_all;               // G_0 + ... + G_M
  int p0 = 0;                          // longest path of the graph of G_0
  int q = 0;                           // longest path of the graph of g_all
};

PartialGraphs build_partial_graphs(const ValidatedNetwork& net);

// Buffer contents reduced to zero: G~_0 = G_0 + ... + G_M, all higher
// matrices empty. Idempotent.
PartialGraphs zero_buffer_transform(const PartialGraphs& pg);

}  // namespace netq
