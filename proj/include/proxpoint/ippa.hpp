#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "proxpoint/envelope.hpp"
#include "proxpoint/inner_solver.hpp"

namespace proxpoint {

using DeltaSchedule = std::function<double(int)>;

DeltaSchedule constant_delta(double delta);
DeltaSchedule geometric_delta(double delta0, double ratio);
// Entry k of the list; the last entry repeats.
DeltaSchedule delta_sequence(std::vector<double> deltas);

struct IppaIterate {
  int k;
  const Vector& x;
  const EnvelopeGradient& grad;
};

struct IppaOptions {
  double mu = 1.0;
  DeltaSchedule deltas = constant_delta(0.0);
  double epsilon = 1e-6;
  // Maximum number of outer updates.
  int budget = 1000;
  std::optional<GrowthModel> growth;
  std::function<void(const IppaIterate&)> observer;
};

// Inexact proximal point loop.  At x^k the inner solver returns z with
// |z - prox(x^k)| <= delta_k and g = (x^k - z) / mu.  The run stops and
// returns x^k once |g| <= epsilon and delta_k / mu <= epsilon; otherwise
// x^{k+1} = z.  On budget exhaustion the iterate with the smallest |g| is
// returned.
CertifiedResult ippa_run(const ProblemInstance& p, const Vector& x0, const IppaOptions& opts,
                         InnerSolver& inner, RunMonitor& monitor);
CertifiedResult ippa_run(const ProblemInstance& p, const Vector& x0, const IppaOptions& opts,
                         InnerSolver& inner);

// ceil(dist0 / (mu sigma - delta)).
std::int64_t noise_robustness_bound(double dist0, double mu, double sigma_F, double delta);

// Sharp growth, constant injected noise delta < mu sigma_F: first k with
// dist(x^k, X*) <= delta.
int ippa_noise_robustness(const ProblemInstance& p, const Vector& x0, double mu, double delta,
                          const GrowthModel& g, int max_iter = 10'000'000);

// Exact proximal point steps until dist(x^k, X*) <= target; returns k.
std::int64_t ppa_iterations_to_distance(const ProblemInstance& p, const Vector& x0, double mu,
                                        double target, std::int64_t max_iter = 100'000'000);

}  // namespace proxpoint
