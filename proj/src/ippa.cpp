#include "proxpoint/ippa.hpp"

#include <cmath>
#include <sstream>

#include "proxpoint/errors.hpp"
#include "proxpoint/psgm.hpp"

namespace proxpoint {

DeltaSchedule constant_delta(double delta) {
  if (!(delta >= 0.0)) throw ArgumentError("constant_delta: delta must be >= 0");
  return [delta](int) { return delta; };
}

DeltaSchedule geometric_delta(double delta0, double ratio) {
  if (!(delta0 >= 0.0)) throw ArgumentError("geometric_delta: delta0 must be >= 0");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw ArgumentError("geometric_delta: ratio must lie in (0, 1]");
  return [delta0, ratio](int k) { return delta0 * std::pow(ratio, k); };
}

DeltaSchedule delta_sequence(std::vector<double> deltas) {
  if (deltas.empty()) throw ArgumentError("delta_sequence: empty schedule");
  for (double d : deltas)
    if (!(d >= 0.0)) throw ArgumentError("delta_sequence: entries must be >= 0");
  return [v = std::move(deltas)](int k) {
    return v[std::min<std::size_t>(static_cast<std::size_t>(k), v.size() - 1)];
  };
}

CertifiedResult ippa_run(const ProblemInstance& p, const Vector& x0, const IppaOptions& opts,
                         InnerSolver& inner, RunMonitor& monitor) {
  if (!(opts.mu > 0.0)) throw ArgumentError("ippa_run: mu must be > 0");
  if (!(opts.epsilon > 0.0)) throw ArgumentError("ippa_run: epsilon must be > 0");
  if (opts.budget < 0) throw ArgumentError("ippa_run: budget must be >= 0");
  if (!opts.deltas) throw ArgumentError("ippa_run: missing delta schedule");
  check_dimension(p, x0, "ippa_run");

  Vector x = x0;
  CertifiedResult best;
  double best_norm = kInf;
  for (int k = 0;; ++k) {
    monitor.set_outer(k);
    double dk = opts.deltas(k);
    if (!(dk >= 0.0)) throw ArgumentError("ippa_run: delta schedule produced a negative value");
    ProxEstimate est = inner.solve(p, x, opts.mu, dk, monitor);
    EnvelopeGradient eg = make_envelope_gradient(x, est.point, opts.mu, est.certified_delta);
    if (opts.observer) opts.observer(IppaIterate{k, x, eg});

    double gn = eg.norm();
    double cert = kNaN;
    if (opts.growth) {
      auto c = distance_certificate(*opts.growth, eg);
      if (c) cert = *c;
    }
    monitor.set_distance_hint(cert);

    if (gn < best_norm) {
      best_norm = gn;
      best.point = x;
      best.grad_norm = gn;
      best.delta_at_exit = eg.delta;
      best.dist_bound = cert;
    }
    if (gn <= opts.epsilon && eg.delta <= opts.mu * opts.epsilon) {
      CertifiedResult r;
      r.point = x;
      r.grad_norm = gn;
      r.delta_at_exit = eg.delta;
      r.dist_bound = cert;
      r.status = RunStatus::converged;
      r.iterations = k;
      return r;
    }
    if (k == opts.budget) break;
    x = est.point;
  }
  best.status = RunStatus::budget_exhausted;
  best.iterations = opts.budget;
  return best;
}

CertifiedResult ippa_run(const ProblemInstance& p, const Vector& x0, const IppaOptions& opts,
                         InnerSolver& inner) {
  RunMonitor m(p);
  return ippa_run(p, x0, opts, inner, m);
}

std::int64_t noise_robustness_bound(double dist0, double mu, double sigma_F, double delta) {
  double gap = mu * sigma_F - delta;
  if (!(gap > 0.0)) throw ArgumentError("noise robustness: need delta < mu * sigma_F");
  return tolerant_ceil(dist0 / gap);
}

int ippa_noise_robustness(const ProblemInstance& p, const Vector& x0, double mu, double delta,
                          const GrowthModel& g, int max_iter) {
  if (g.gamma != 1.0) throw ArgumentError("ippa_noise_robustness: needs gamma = 1");
  if (!(delta >= 0.0)) throw ArgumentError("ippa_noise_robustness: delta must be >= 0");
  if (!(delta < mu * g.sigma_F)) throw ArgumentError("ippa_noise_robustness: need delta < mu * sigma_F");
  if (!p.X_star_witness && !p.dist_to_solutions)
    throw ArgumentError("ippa_noise_robustness: problem has no known solution");
  check_dimension(p, x0, "ippa_noise_robustness");
  InjectedNoiseSolver noise;
  RunMonitor m(p);
  Vector x = x0;
  for (int k = 0; k <= max_iter; ++k) {
    if (distance_to_solutions(p, x) <= delta) return k;
    x = noise.solve(p, x, mu, delta, m).point;
  }
  std::ostringstream os;
  os << "ippa_noise_robustness: distance " << delta << " not reached in " << max_iter << " iterations";
  throw ContractError(os.str());
}

std::int64_t ppa_iterations_to_distance(const ProblemInstance& p, const Vector& x0, double mu,
                                        double target, std::int64_t max_iter) {
  if (!(mu > 0.0)) throw ArgumentError("ppa_iterations_to_distance: mu must be > 0");
  if (!(target > 0.0)) throw ArgumentError("ppa_iterations_to_distance: target must be > 0");
  if (!p.exact_prox) throw ArgumentError(p.name + ": no closed-form prox available");
  check_dimension(p, x0, "ppa_iterations_to_distance");
  Vector x = x0;
  for (std::int64_t k = 0; k <= max_iter; ++k) {
    if (distance_to_solutions(p, x) <= target) return k;
    x = p.exact_prox(x, mu);
  }
  throw ContractError("ppa_iterations_to_distance: target not reached");
}

}  // namespace proxpoint
