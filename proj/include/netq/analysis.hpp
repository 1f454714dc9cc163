#pragma once

// Mean cycle time bounds: the lower bound |E[T_1]| (norm of the expected
// service matrix), the upper bound E|T_1| (expected norm, i.e. the expected
// maximum service time of one cycle), the extreme-value bound on expected
// maxima, the per-cycle sandwich bounds and the simulation estimator.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netq/dynamics.hpp"
#include "netq/network.hpp"

namespace netq {

enum class UpperMethod { Analytic, Quadrature, MonteCarlo };

const char* to_string(UpperMethod m);

struct UpperBound {
  double value = 0.0;
  UpperMethod method = UpperMethod::Analytic;
  std::optional<double> ci_halfwidth;  // present for Monte Carlo only
};

struct BoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  UpperMethod upper_method = UpperMethod::Analytic;
  std::optional<double> ci_halfwidth;
  std::optional<double> gamma_estimate;
  std::optional<double> throughput;
};

// max_i E[tau_i1]; holds for every k and in the limit.
double lower_bound(const ValidatedNetwork& net);

// E[max_i tau_i1] by the sharpest available route: closed forms for the
// correlated model, independent exponentials and constants; quadrature of
// the survival function 1 - prod F_i otherwise; Monte Carlo as a fallback
// when quadrature fails to converge.
UpperBound upper_bound(const ValidatedNetwork& net);

BoundsReport bounds_report(const ValidatedNetwork& net);

// E[max of k i.i.d. variables] <= mean + (k-1)/sqrt(2k-1) * stddev.
double gumbel_hartley(double mean, double variance, long k);

// Per-cycle sandwich bounds maintained incrementally:
//   lower_k = max_i sum_{c<=k} tau_i(c),
//   upper_k = sum_{c<=k} max_i tau_i(c) + q * max_{c<=k} max_i tau_i(c).
class SandwichAccumulator {
 public:
  SandwichAccumulator(int node_count, int q);

  void add_cycle(std::span<const double> tau);
  long cycles() const { return k_; }
  double lower() const;
  double upper() const { return sum_norms_ + double(q_) * max_norm_; }

 private:
  int q_;
  long k_ = 0;
  std::vector<double> node_sums_;
  double sum_norms_ = 0.0;
  double max_norm_ = 0.0;
};

struct Estimate {
  double gamma_hat = 0.0;
  double throughput = 0.0;  // 1/gamma_hat; infinite flag below
  bool infinite_throughput = false;
  // (k, gamma_hat_k) at roughly logarithmically spaced k, ending at K.
  std::vector<std::pair<long, double>> convergence;
};

Estimate estimate(const RunResult& result);

namespace quadrature {

// Integral over [0, inf) of a nonincreasing survival function: the upper
// integration limit is extended until the integrand falls below tail_eps,
// then adaptive Simpson refinement runs to the absolute tolerance.
// breakpoints splits the range at known kinks (e.g. constant service jumps).
// Returns nullopt when refinement fails to converge.
std::optional<double> integrate_survival(const std::function<double(double)>& s,
                                         double abs_tol = 1e-9, double tail_eps = 1e-12,
                                         std::span<const double> breakpoints = {});

}  // namespace quadrature

}  // namespace netq
