#pragma once

// Cycle-by-cycle evolution of the network state vector x(k) (entry i = the
// k-th departure epoch at node i) through the explicit state equation
//   x(k) = A_1(k) x(k-1) + ... + A_M(k) x(k-M),
// plus an independent scalar recursion over arrival/departure epochs used as
// a cross-check oracle.

#include <vector>

#include "netq/maxplus.hpp"
#include "netq/network.hpp"
#include "netq/stochastic.hpp"

namespace netq {

// Diagonal matrix of one cycle's service times.
struct ServiceMatrix {
  std::vector<double> tau;

  int size() const { return int(tau.size()); }
  maxplus::Matrix to_matrix() const { return maxplus::Matrix::diag(tau); }
  double max_tau() const;  // its norm
};

struct TransitionSet {
  // a[m-1] holds A_m(k), m = 1..max(M,1).
  std::vector<maxplus::Matrix> a;
  int p = 0;  // longest path of the graph of G_0
};

// A_1(k) = (I + T G_0^T)^p T (I + G_1^T); A_m(k) = (I + T G_0^T)^p T G_m^T.
// The (I + T G_0^T)^p factor is applied by forward substitution on each
// right-hand-side column rather than by literal powering. Networks with
// M = 0 get history depth 1 with G_1 empty.
TransitionSet build_transitions(const ServiceMatrix& tk, const PartialGraphs& pg);

// Sliding window of past states implementing the start-up conventions
// x(0) = all-zeros and x(k) = all-eps for k < 0.
class StateHistory {
 public:
  StateHistory(int node_count, int depth);

  long cycle() const { return k_; }
  int depth() const { return depth_; }

  // x(j) for j in [cycle()-depth, cycle()]; conventions apply for j <= 0.
  const maxplus::Vector& at(long j) const;
  void push(maxplus::Vector x);

 private:
  int n_;
  int depth_;
  long k_ = 0;
  maxplus::Vector zeros_, eps_;
  std::vector<maxplus::Vector> ring_;
};

// Computes x(k) for k = cycle()+1, appends it to the history, returns it.
maxplus::Vector step(const TransitionSet& ts, StateHistory& hist);

// Scalar recursion oracle: x_i(k) = tau_ik * u_i(k) + tau_ik * x_i(k-1) with
// u_i(k) the max over predecessors j of x_j(k - r_i) (eps for sources),
// evaluated in topological order so same-cycle dependencies resolve. Keeps
// the full history; intended for tests and cross-checks.
class LindleyRecursion {
 public:
  explicit LindleyRecursion(const ValidatedNetwork& net);

  long cycle() const { return long(states_.size()); }
  const maxplus::Vector& step(const ServiceMatrix& tk);
  const maxplus::Vector& state(long j) const;  // same conventions as StateHistory

 private:
  const ValidatedNetwork& net_;
  maxplus::Vector zeros_, eps_;
  std::vector<maxplus::Vector> states_;
};

struct CycleRecord {
  double norm_x = 0.0;     // completion time of the k-th cycle
  double lower = 0.0;      // per-cycle sandwich lower bound
  double upper = 0.0;      // per-cycle sandwich upper bound
  double gamma_hat = 0.0;  // norm_x / k
};

struct RunResult {
  std::vector<CycleRecord> cycles;
  maxplus::Vector final_state;
  long sandwich_violations = 0;
  int q = 0;  // longest path used by the sandwich upper bound
};

// Simulates K cycles with per-cycle sampled service matrices, recording the
// cycle completion times, the running estimate and the sandwich bounds.
RunResult run(const ValidatedNetwork& net, ServiceSampler& sampler, long cycles);

}  // namespace netq
