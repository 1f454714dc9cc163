#include "netq/stochastic.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace netq {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint32_t node, std::uint32_t replica) {
  std::uint64_t id = (std::uint64_t(replica) << 32) | node;
  return mix64(mix64(seed + kGamma) ^ mix64(id + kGamma));
}

}  // namespace

Moments moments(const DistributionSpec& spec) {
  struct Visitor {
    Moments operator()(const Constant& c) const { return {c.value, 0.0}; }
    Moments operator()(const Exponential& e) const { return {e.mean, e.mean * e.mean}; }
    Moments operator()(const ScaledErlang& s) const { return {1.0, 1.0 / s.shape}; }
  };
  return std::visit(Visitor{}, spec);
}

Moments moments(const CorrelatedExponential& spec, int node_count) {
  // mean = sum of mixing weights = 1; variance = sum of squared weights.
  const double d = (1.0 - spec.a) / (node_count - 1);
  return {1.0, spec.a * spec.a + (node_count - 1) * d * d};
}

std::vector<Moments> node_moments(const ServiceModel& model, int node_count) {
  std::vector<Moments> out;
  out.reserve(size_t(node_count));
  if (const auto* per_node = std::get_if<std::vector<DistributionSpec>>(&model)) {
    assert(int(per_node->size()) == node_count);
    for (const auto& spec : *per_node) out.push_back(moments(spec));
  } else {
    const auto& corr = std::get<CorrelatedExponential>(model);
    out.assign(size_t(node_count), moments(corr, node_count));
  }
  return out;
}

std::vector<double> mixing_row(double a, int node_count, int row) {
  std::vector<double> w(size_t(node_count), (1.0 - a) / (node_count - 1));
  w[size_t(row)] = a;
  return w;
}

ServiceSampler::ServiceSampler(int node_count, ServiceModel model, std::uint64_t seed,
                               std::uint32_t replica)
    : node_count_(node_count),
      model_(std::move(model)),
      seed_(seed),
      replica_(replica),
      stream_key_(size_t(node_count)),
      counter_(size_t(node_count), 0) {
  for (int i = 0; i < node_count; ++i)
    stream_key_[size_t(i)] = stream_key(seed, std::uint32_t(i), replica);
}

double ServiceSampler::unit_draw(int node) {
  const std::uint64_t word =
      mix64(stream_key_[size_t(node)] + (++counter_[size_t(node)]) * kGamma);
  return double(word >> 11) * 0x1.0p-53;
}

double ServiceSampler::exponential_draw(int node) {
  // Inverse CDF; log1p keeps small draws accurate.
  return -std::log1p(-unit_draw(node));
}

std::vector<double> ServiceSampler::next_cycle() {
  std::vector<double> tau(size_t(node_count_));
  next_cycle(tau);
  return tau;
}

void ServiceSampler::next_cycle(std::span<double> out) {
  assert(int(out.size()) == node_count_);
  if (const auto* per_node = std::get_if<std::vector<DistributionSpec>>(&model_)) {
    for (int i = 0; i < node_count_; ++i) {
      const auto& spec = (*per_node)[size_t(i)];
      if (const auto* c = std::get_if<Constant>(&spec)) {
        out[size_t(i)] = c->value;
      } else if (const auto* e = std::get_if<Exponential>(&spec)) {
        out[size_t(i)] = e->mean * exponential_draw(i);
      } else {
        const auto& erl = std::get<ScaledErlang>(spec);
        double sum = 0.0;
        for (int s = 0; s < erl.shape; ++s) sum += exponential_draw(i);
        out[size_t(i)] = sum / erl.shape;
      }
    }
    return;
  }

  const auto& corr = std::get<CorrelatedExponential>(model_);
  const double d = (1.0 - corr.a) / (node_count_ - 1);
  const double c = corr.a - d;
  std::vector<double> xi(size_t(node_count_));
  double total = 0.0;
  for (int i = 0; i < node_count_; ++i) total += xi[size_t(i)] = exponential_draw(i);
  // tau_i = a*xi_i + d*(total - xi_i) = c*xi_i + d*total; c = 0 at a = 1/n
  // makes every entry identical.
  for (int i = 0; i < node_count_; ++i) out[size_t(i)] = c * xi[size_t(i)] + d * total;
}

ServiceSampler ServiceSampler::fork_replica(std::uint32_t replica) const {
  return ServiceSampler(node_count_, model_, seed_, replica);
}

}  // namespace netq
