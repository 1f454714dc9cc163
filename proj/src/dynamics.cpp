#include "netq/dynamics.hpp"

#include <algorithm>
#include <cassert>

#include "netq/analysis.hpp"

namespace netq {

using maxplus::Matrix;
using maxplus::Scalar;
using maxplus::Vector;

double ServiceMatrix::max_tau() const {
  double m = tau.empty() ? 0.0 : tau[0];
  for (double t : tau) m = std::max(m, t);
  return m;
}

namespace {

// T * X for diagonal T: adds tau_i to row i.
Matrix scale_rows(const std::vector<double>& tau, const Matrix& x) {
  Matrix r = x;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) *= Scalar{tau[size_t(i)]};
  return r;
}

}  // namespace

TransitionSet build_transitions(const ServiceMatrix& tk, const PartialGraphs& pg) {
  const int n = tk.size();
  assert(pg.g_all.rows() == n);

  const Matrix u = scale_rows(tk.tau, pg.g[0].transpose());

  TransitionSet ts;
  ts.p = pg.p0;
  const int depth = std::max(pg.max_buffer, 1);
  ts.a.reserve(size_t(depth));

  // m = 1: right-hand side T (I + G_1^T); G_1 empty when M = 0.
  Matrix rhs1 = Matrix::identity(n);
  if (pg.max_buffer >= 1) rhs1 = rhs1 + pg.g[1].transpose();
  ts.a.push_back(maxplus::solve_columns(u, scale_rows(tk.tau, rhs1)));

  for (int m = 2; m <= pg.max_buffer; ++m)
    ts.a.push_back(maxplus::solve_columns(u, scale_rows(tk.tau, pg.g[size_t(m)].transpose())));

  return ts;
}

StateHistory::StateHistory(int node_count, int depth)
    : n_(node_count),
      depth_(depth),
      zeros_(size_t(node_count), Scalar::unit()),
      eps_(size_t(node_count)) {
  assert(depth >= 1);
  ring_.resize(size_t(depth));
}

const Vector& StateHistory::at(long j) const {
  if (j < 0) return eps_;
  if (j == 0) return zeros_;
  assert(j <= k_ && j > k_ - depth_);
  return ring_[size_t(j % depth_)];
}

void StateHistory::push(Vector x) {
  assert(int(x.size()) == n_);
  ++k_;
  ring_[size_t(k_ % depth_)] = std::move(x);
}

Vector step(const TransitionSet& ts, StateHistory& hist) {
  const long k = hist.cycle() + 1;
  Vector x = ts.a[0] * hist.at(k - 1);
  for (size_t m = 2; m <= ts.a.size(); ++m) {
    const Vector xm = ts.a[m - 1] * hist.at(k - long(m));
    for (size_t i = 0; i < x.size(); ++i) x[i] += xm[i];
  }
  hist.push(x);
  return x;
}

LindleyRecursion::LindleyRecursion(const ValidatedNetwork& net)
    : net_(net),
      zeros_(size_t(net.node_count()), Scalar::unit()),
      eps_(size_t(net.node_count())) {}

const Vector& LindleyRecursion::state(long j) const {
  if (j < 0) return eps_;
  if (j == 0) return zeros_;
  assert(j <= cycle());
  return states_[size_t(j - 1)];
}

const Vector& LindleyRecursion::step(const ServiceMatrix& tk) {
  const long k = cycle() + 1;
  Vector x(size_t(net_.node_count()));
  // Full-graph topological order also orders the same-cycle (r = 0) arcs.
  for (int i : net_.topo_order) {
    Scalar u;  // eps for sources
    if (!net_.is_source(i)) {
      const long j_cycle = k - net_.buffer(i);
      for (int j : net_.predecessors[size_t(i)]) {
        const Scalar xj = j_cycle == k ? x[size_t(j)] : state(j_cycle)[size_t(j)];
        u += xj;
      }
    }
    const Scalar tau{tk.tau[size_t(i)]};
    x[size_t(i)] = tau * u + tau * state(k - 1)[size_t(i)];
  }
  states_.push_back(std::move(x));
  return states_.back();
}

RunResult run(const ValidatedNetwork& net, ServiceSampler& sampler, long cycles) {
  assert(cycles >= 1);
  const PartialGraphs pg = build_partial_graphs(net);
  const int n = net.node_count();

  StateHistory hist(n, std::max(pg.max_buffer, 1));
  SandwichAccumulator sandwich(n, pg.q);

  RunResult result;
  result.q = pg.q;
  result.cycles.reserve(size_t(cycles));

  ServiceMatrix tk;
  tk.tau.resize(size_t(n));
  for (long k = 1; k <= cycles; ++k) {
    sampler.next_cycle(tk.tau);
    const TransitionSet ts = build_transitions(tk, pg);
    const Vector x = step(ts, hist);
    sandwich.add_cycle(tk.tau);

    CycleRecord rec;
    rec.norm_x = maxplus::norm(x).value();
    rec.lower = sandwich.lower();
    rec.upper = sandwich.upper();
    rec.gamma_hat = rec.norm_x / double(k);
    if (rec.lower > rec.norm_x || rec.norm_x > rec.upper) ++result.sandwich_violations;
    result.cycles.push_back(rec);
    if (k == cycles) result.final_state = x;
  }
  return result;
}

}  // namespace netq
