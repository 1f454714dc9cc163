#include "netq/network.hpp"

#include <algorithm>
#include <cassert>

namespace netq {

namespace {

std::string node_name(int i) { return std::to_string(i + 1); }

maxplus::Matrix arc_matrix(const NetworkSpec& spec) {
  maxplus::Matrix adj(spec.node_count, spec.node_count);
  for (auto [i, j] : spec.arcs) adj.at(i, j) = maxplus::Scalar::unit();
  return adj;
}

void check_services(const NetworkSpec& spec) {
  if (const auto* per_node = std::get_if<std::vector<DistributionSpec>>(&spec.services)) {
    if (int(per_node->size()) != spec.node_count)
      throw ConfigError("expected " + std::to_string(spec.node_count) +
                        " service entries, got " + std::to_string(per_node->size()));
    for (int i = 0; i < spec.node_count; ++i) {
      const auto& s = (*per_node)[size_t(i)];
      if (const auto* c = std::get_if<Constant>(&s)) {
        if (!(c->value >= 0.0))
          throw ConfigError("node " + node_name(i) + ": constant service must be >= 0");
      } else if (const auto* e = std::get_if<Exponential>(&s)) {
        if (!(e->mean > 0.0))
          throw ConfigError("node " + node_name(i) + ": exponential mean must be > 0");
      } else if (const auto* erl = std::get_if<ScaledErlang>(&s)) {
        if (erl->shape < 1)
          throw ConfigError("node " + node_name(i) + ": erlang shape must be >= 1");
      }
    }
  } else {
    const auto& corr = std::get<CorrelatedExponential>(spec.services);
    if (spec.node_count < 2)
      throw ConfigError("correlated-exponential model needs at least 2 nodes");
    const double lo = 1.0 / spec.node_count;
    if (!(corr.a >= lo && corr.a <= 1.0))
      throw ConfigError("correlation parameter a=" + std::to_string(corr.a) +
                        " outside [1/" + std::to_string(spec.node_count) + ", 1]");
  }
}

}  // namespace

ValidatedNetwork validate(NetworkSpec spec) {
  if (spec.node_count <= 0) throw ConfigError("node count must be positive");
  if (int(spec.buffers.size()) != spec.node_count)
    throw ConfigError("expected " + std::to_string(spec.node_count) +
                      " buffer entries, got " + std::to_string(spec.buffers.size()));

  std::vector<std::vector<int>> preds(size_t(spec.node_count));
  std::vector<std::vector<int>> succs(size_t(spec.node_count));
  std::vector<std::vector<bool>> seen(size_t(spec.node_count),
                                      std::vector<bool>(size_t(spec.node_count), false));
  for (auto [i, j] : spec.arcs) {
    if (i < 0 || i >= spec.node_count || j < 0 || j >= spec.node_count)
      throw ConfigError("arc (" + node_name(i) + "," + node_name(j) +
                        ") references a node outside 1.." + std::to_string(spec.node_count));
    if (seen[size_t(i)][size_t(j)])
      throw ConfigError("duplicate arc (" + node_name(i) + "," + node_name(j) + ")");
    seen[size_t(i)][size_t(j)] = true;
    succs[size_t(i)].push_back(j);
    preds[size_t(j)].push_back(i);
  }

  const maxplus::Matrix adj = arc_matrix(spec);
  auto order = maxplus::topological_order(adj);
  if (!order) {
    auto cycle = maxplus::find_cycle(adj);
    std::string msg = "network graph has a cycle:";
    for (size_t k = 0; k < cycle.size(); ++k)
      msg += (k == 0 ? " " : " -> ") + node_name(cycle[k]);
    throw ConfigError(msg);
  }

  for (int i = 0; i < spec.node_count; ++i) {
    const auto& b = spec.buffers[size_t(i)];
    if (preds[size_t(i)].empty()) {
      if (b.has_value())
        throw ConfigError("node " + node_name(i) +
                          " has no predecessors and must be saturated (r = inf)");
    } else {
      if (!b.has_value())
        throw ConfigError("node " + node_name(i) +
                          " has predecessors and cannot be saturated");
      if (*b < 0)
        throw ConfigError("node " + node_name(i) + ": negative initial buffer " +
                          std::to_string(*b));
    }
  }

  check_services(spec);

  ValidatedNetwork net{std::move(spec), std::move(preds), std::move(succs),
                       std::move(*order)};
  return net;
}

PartialGraphs build_partial_graphs(const ValidatedNetwork& net) {
  const int n = net.node_count();
  int max_buffer = 0;
  for (int i = 0; i < n; ++i)
    if (!net.is_source(i)) max_buffer = std::max(max_buffer, net.buffer(i));

  PartialGraphs pg;
  pg.max_buffer = max_buffer;
  pg.g.assign(size_t(max_buffer) + 1, maxplus::Matrix(n, n));
  pg.g_all = maxplus::Matrix(n, n);
  for (auto [i, j] : net.spec.arcs) {
    pg.g[size_t(net.buffer(j))].at(i, j) = maxplus::Scalar::unit();
    pg.g_all.at(i, j) = maxplus::Scalar::unit();
  }

  // Subgraphs of a DAG are DAGs; both longest paths exist.
  pg.p0 = *maxplus::longest_path(pg.g[0]);
  pg.q = *maxplus::longest_path(pg.g_all);
  return pg;
}

PartialGraphs zero_buffer_transform(const PartialGraphs& pg) {
  PartialGraphs out;
  out.max_buffer = 0;
  out.g = {pg.g_all};
  out.g_all = pg.g_all;
  out.p0 = pg.q;
  out.q = pg.q;
  return out;
}

}  // namespace netq
