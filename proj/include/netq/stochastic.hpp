#pragma once

// Seeded service-time samplers and their exact moments. Draws are produced
// by a counter-based construction: each (node, replica) pair owns an
// independent substream derived from the master seed, so adding replicas or
// nodes never perturbs existing streams.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace netq {

struct Constant {
  double value = 0.0;  // mean value, variance 0
  bool operator==(const Constant&) const = default;
};

struct Exponential {
  double mean = 1.0;
  bool operator==(const Exponential&) const = default;
};

// xi/r with xi Erlang of shape r and unit rate: mean 1, variance 1/r.
struct ScaledErlang {
  int shape = 1;
  bool operator==(const ScaledErlang&) const = default;
};

using DistributionSpec = std::variant<Constant, Exponential, ScaledErlang>;

// Network-level model: tau_i = a*xi_i + (1-a)/(n-1) * sum_{j != i} xi_j with
// xi_j i.i.d. exponential of mean 1. a = 1 gives independent nodes, a = 1/n
// makes all tau_i equal within a cycle.
struct CorrelatedExponential {
  double a = 1.0;
  bool operator==(const CorrelatedExponential&) const = default;
};

using ServiceModel = std::variant<std::vector<DistributionSpec>, CorrelatedExponential>;

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const DistributionSpec& spec);
Moments moments(const CorrelatedExponential& spec, int node_count);

// Per-node moments under either service model.
std::vector<Moments> node_moments(const ServiceModel& model, int node_count);

// Row of the mixing matrix used by CorrelatedExponential (sums to 1).
std::vector<double> mixing_row(double a, int node_count, int row);

class ServiceSampler {
 public:
  ServiceSampler(int node_count, ServiceModel model, std::uint64_t seed,
                 std::uint32_t replica = 0);

  int node_count() const { return node_count_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t replica() const { return replica_; }

  // Service times for the next cycle; i.i.d. across cycles per node.
  std::vector<double> next_cycle();
  void next_cycle(std::span<double> out);

  // Fresh sampler on the same master seed with independent streams.
  ServiceSampler fork_replica(std::uint32_t replica) const;

 private:
  double unit_draw(int node);         // uniform in [0,1)
  double exponential_draw(int node);  // unit mean

  int node_count_;
  ServiceModel model_;
  std::uint64_t seed_;
  std::uint32_t replica_;
  std::vector<std::uint64_t> stream_key_;
  std::vector<std::uint64_t> counter_;
};

}  // namespace netq
