#include "netq/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

namespace netq {

const char* to_string(UpperMethod m) {
  switch (m) {
    case UpperMethod::Analytic: return "analytic";
    case UpperMethod::Quadrature: return "quadrature";
    case UpperMethod::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

double lower_bound(const ValidatedNetwork& net) {
  double lo = 0.0;
  for (const auto& m : node_moments(net.spec.services, net.node_count()))
    lo = std::max(lo, m.mean);
  return lo;
}

namespace {

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

// E[max] of independent exponentials by inclusion-exclusion over rate sums.
double expmax_inclusion_exclusion(const std::vector<double>& rates) {
  const int n = int(rates.size());
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double rate_sum = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) rate_sum += rates[size_t(i)];
    total += (std::popcount(mask) % 2 == 1 ? 1.0 : -1.0) / rate_sum;
  }
  return total;
}

double cdf(const DistributionSpec& spec, double t) {
  if (const auto* c = std::get_if<Constant>(&spec)) return t >= c->value ? 1.0 : 0.0;
  if (const auto* e = std::get_if<Exponential>(&spec))
    return t <= 0.0 ? 0.0 : -std::expm1(-t / e->mean);
  const auto& erl = std::get<ScaledErlang>(spec);
  if (t <= 0.0) return 0.0;
  // Erlang of integer shape r and rate r (mean 1): 1 - e^-x sum_{m<r} x^m/m!.
  const double x = erl.shape * t;
  double term = 1.0, tail = 1.0;
  for (int m = 1; m < erl.shape; ++m) {
    term *= x / m;
    tail += term;
  }
  return 1.0 - std::exp(-x) * tail;
}

UpperBound upper_bound_monte_carlo(const ValidatedNetwork& net) {
  // Fallback estimator; fixed internal stream, independent of run seeds.
  constexpr std::uint64_t kSeed = 0x5bd1e995cc9e2d51ULL;
  constexpr long kSamples = 10'000'000;
  ServiceSampler sampler(net.node_count(), net.spec.services, kSeed);
  std::vector<double> tau(size_t(net.node_count()));
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < kSamples; ++s) {
    sampler.next_cycle(tau);
    const double m = *std::max_element(tau.begin(), tau.end());
    sum += m;
    sum_sq += m * m;
  }
  const double mean = sum / kSamples;
  const double var = std::max(0.0, sum_sq / kSamples - mean * mean);
  UpperBound ub;
  ub.value = mean;
  ub.method = UpperMethod::MonteCarlo;
  ub.ci_halfwidth = 1.96 * std::sqrt(var / kSamples);
  return ub;
}

}  // namespace

UpperBound upper_bound(const ValidatedNetwork& net) {
  const int n = net.node_count();

  if (const auto* corr = std::get_if<CorrelatedExponential>(&net.spec.services)) {
    // max_i tau_i = c * max_j xi_j + d * sum_j xi_j with c = a - d >= 0,
    // so the expectation is c H_n + d n.
    const double d = (1.0 - corr->a) / (n - 1);
    const double c = corr->a - d;
    return {c * harmonic(n) + d * n, UpperMethod::Analytic, std::nullopt};
  }

  const auto& specs = std::get<std::vector<DistributionSpec>>(net.spec.services);

  const bool all_constant =
      std::all_of(specs.begin(), specs.end(),
                  [](const auto& s) { return std::holds_alternative<Constant>(s); });
  if (all_constant) {
    double m = 0.0;
    for (const auto& s : specs) m = std::max(m, std::get<Constant>(s).value);
    return {m, UpperMethod::Analytic, std::nullopt};
  }

  const bool all_exponential =
      std::all_of(specs.begin(), specs.end(),
                  [](const auto& s) { return std::holds_alternative<Exponential>(s); });
  if (all_exponential && n <= 20) {
    std::vector<double> rates;
    rates.reserve(size_t(n));
    for (const auto& s : specs) rates.push_back(1.0 / std::get<Exponential>(s).mean);
    return {expmax_inclusion_exclusion(rates), UpperMethod::Analytic, std::nullopt};
  }

  std::vector<double> breakpoints;
  for (const auto& s : specs)
    if (const auto* c = std::get_if<Constant>(&s)) breakpoints.push_back(c->value);

  auto survival = [&specs](double t) {
    double prod = 1.0;
    for (const auto& s : specs) {
      prod *= cdf(s, t);
      if (prod == 0.0) break;
    }
    return 1.0 - prod;
  };
  if (auto v = quadrature::integrate_survival(survival, 1e-9, 1e-12, breakpoints))
    return {*v, UpperMethod::Quadrature, std::nullopt};
  return upper_bound_monte_carlo(net);
}

BoundsReport bounds_report(const ValidatedNetwork& net) {
  BoundsReport r;
  r.lower = lower_bound(net);
  const UpperBound ub = upper_bound(net);
  r.upper = ub.value;
  r.upper_method = ub.method;
  r.ci_halfwidth = ub.ci_halfwidth;
  return r;
}

double gumbel_hartley(double mean, double variance, long k) {
  assert(k >= 1 && variance >= 0.0);
  return mean + double(k - 1) / std::sqrt(double(2 * k - 1)) * std::sqrt(variance);
}

SandwichAccumulator::SandwichAccumulator(int node_count, int q)
    : q_(q), node_sums_(size_t(node_count), 0.0) {}

void SandwichAccumulator::add_cycle(std::span<const double> tau) {
  assert(tau.size() == node_sums_.size());
  ++k_;
  double cycle_max = 0.0;
  for (size_t i = 0; i < tau.size(); ++i) {
    node_sums_[i] += tau[i];
    cycle_max = std::max(cycle_max, tau[i]);
  }
  sum_norms_ += cycle_max;
  max_norm_ = std::max(max_norm_, cycle_max);
}

double SandwichAccumulator::lower() const {
  return *std::max_element(node_sums_.begin(), node_sums_.end());
}

Estimate estimate(const RunResult& result) {
  assert(!result.cycles.empty());
  Estimate est;
  est.gamma_hat = result.cycles.back().gamma_hat;
  est.infinite_throughput = est.gamma_hat == 0.0;
  est.throughput = est.infinite_throughput ? std::numeric_limits<double>::infinity()
                                           : 1.0 / est.gamma_hat;
  const long K = long(result.cycles.size());
  for (long k = 1; k < K; k *= 2)
    est.convergence.emplace_back(k, result.cycles[size_t(k - 1)].gamma_hat);
  est.convergence.emplace_back(K, est.gamma_hat);
  return est;
}

namespace quadrature {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double abs_tol;
  long evals = 0;
  bool converged = true;
  static constexpr long kMaxEvals = 2'000'000;

  double eval(double x) {
    ++evals;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole,
                 double tol, int depth) {
    if (evals > kMaxEvals) {
      converged = false;
      return whole;
    }
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
      converged = false;
      return left + right;
    }
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double segment(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = eval(a), fm = eval(m), fb = eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, 48);
  }
};

}  // namespace

std::optional<double> integrate_survival(const std::function<double(double)>& s,
                                         double abs_tol, double tail_eps,
                                         std::span<const double> breakpoints) {
  double t_max = 1.0;
  for (double b : breakpoints) t_max = std::max(t_max, 2.0 * b + 1.0);
  constexpr double kHardCap = 1e9;
  while (s(t_max) > tail_eps) {
    t_max *= 2.0;
    if (t_max > kHardCap) return std::nullopt;
  }

  std::vector<double> knots{0.0};
  for (double b : breakpoints)
    if (b > 0.0 && b < t_max) knots.push_back(b);
  knots.push_back(t_max);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  SimpsonState state{s, abs_tol};
  double total = 0.0;
  const double seg_tol = abs_tol / double(knots.size() - 1);
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    total += state.segment(knots[i], knots[i + 1], seg_tol);
  if (!state.converged) return std::nullopt;
  return total;
}

}  // namespace quadrature

}  // namespace netq
