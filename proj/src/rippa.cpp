#include "proxpoint/rippa.hpp"

#include <cmath>
#include <sstream>

#include "proxpoint/errors.hpp"

namespace proxpoint {

EpochState epoch_schedule(double mu0, double delta0, double rho, int t) {
  if (!(mu0 > 0.0) || !(delta0 > 0.0)) throw ArgumentError("epoch_schedule: mu0, delta0 must be > 0");
  if (t < 0) throw ArgumentError("epoch_schedule: t must be >= 0");
  EpochState s;
  s.t = t;
  s.mu = std::ldexp(mu0, t);
  s.delta_grad = delta0 * std::pow(2.0, -rho * t);
  s.delta = s.mu * s.delta_grad;
  return s;
}

EpochState RippPsgmSchedule::at(int t) const {
  EpochState s = epoch_schedule(mu0, delta0, rho, t);
  s.alpha = alpha0 * std::pow(2.0, -q * t);
  s.N_real = N0 * std::pow(2.0, (q + 1.0) * t);
  s.N = std::max<std::int64_t>(1, tolerant_ceil(s.N_real));
  return s;
}

RippPsgmSchedule make_ripp_psgm_schedule(double mu0, double delta0, double rho, double q, double L_f,
                                         double nu) {
  if (!(mu0 > 0.0) || !(delta0 > 0.0)) throw ArgumentError("ripp_psgm: mu0, delta0 must be > 0");
  if (!(rho > 1.0)) throw ArgumentError("ripp_psgm: rho must be > 1");
  if (!(q >= 0.0)) throw ArgumentError("ripp_psgm: q must be >= 0");
  if (!(L_f > 0.0) || !std::isfinite(L_f)) throw ArgumentError("ripp_psgm: L_f must be finite and > 0");
  RippPsgmSchedule s;
  s.mu0 = mu0;
  s.delta0 = delta0;
  s.rho = rho;
  s.q = q;
  s.alpha0 = inner_stepsize_bound(mu0, mu0 * delta0, nu, L_f);
  s.N0 = std::max({1.0, 8.0 * std::log(L_f / delta0) + 1.0, rho - 1.0});
  return s;
}

RippaResult rippa_run(const ProblemInstance& p, const Vector& x0, const RippaOptions& opts,
                      InnerSolver& inner, RunMonitor& monitor) {
  if (!(opts.rho > 1.0)) throw ArgumentError("rippa_run: rho must be > 1");
  if (!(opts.epsilon > 0.0)) throw ArgumentError("rippa_run: epsilon must be > 0");
  if (opts.max_epochs < 1) throw ArgumentError("rippa_run: max_epochs must be >= 1");
  check_dimension(p, x0, "rippa_run");
  RippaResult out;
  Vector x = x0;
  for (int t = 0; t < opts.max_epochs; ++t) {
    EpochState st = epoch_schedule(opts.mu0, opts.delta0, opts.rho, t);
    monitor.set_epoch(t);
    IppaOptions io;
    io.mu = st.mu;
    io.deltas = constant_delta(st.delta);
    io.epsilon = 5.0 * st.delta_grad;
    io.budget = opts.ippa_budget;
    io.growth = opts.growth;
    CertifiedResult r = ippa_run(p, x, io, inner, monitor);
    x = r.point;

    EpochReport rep;
    rep.state = st;
    rep.iterations = r.iterations;
    rep.exit_grad_norm = r.grad_norm;
    rep.x_exit = x;
    rep.evals_at_exit = monitor.evaluations();
    rep.converged = r.status == RunStatus::converged;
    out.epochs.push_back(rep);
    out.result = r;

    bool grad_done = rep.converged && r.grad_norm <= opts.epsilon && r.delta_at_exit <= st.mu * opts.epsilon;
    bool dist_done = !std::isnan(r.dist_bound) && r.dist_bound <= opts.epsilon;
    if (grad_done || dist_done) {
      out.result.status = RunStatus::converged;
      return out;
    }
  }
  out.result.status = RunStatus::budget_exhausted;
  return out;
}

RippPsgmResult ripp_psgm_run(const ProblemInstance& p, const Vector& x0, const RippPsgmOptions& opts,
                             RunMonitor& monitor) {
  check_dimension(p, x0, "ripp_psgm_run");
  if (opts.T < 1) throw ArgumentError("ripp_psgm_run: T must be >= 1");
  if (opts.max_blocks < 2) throw ArgumentError("ripp_psgm_run: max_blocks must be >= 2");
  double L = std::isnan(opts.L_f) ? p.subgrad_bound : opts.L_f;
  double delta0 = std::isnan(opts.delta0) ? 2.0 * L : opts.delta0;
  double q = std::isnan(opts.q) ? 2.0 * opts.rho - 1.0 : opts.q;

  RippPsgmResult out;
  out.schedule = make_ripp_psgm_schedule(opts.mu0, delta0, opts.rho, q, L, opts.nu);
  out.stepsize_guard_bound = out.schedule.alpha0 < opts.mu0 / 2.0;

  Vector x = x0;
  for (int t = 0; t < opts.T; ++t) {
    EpochState st = out.schedule.at(t);
    if (st.N > opts.max_inner) {
      std::ostringstream os;
      os << "ripp_psgm_run: epoch " << t << " needs " << st.N << " inner steps, max_inner is "
         << opts.max_inner;
      throw BudgetError(os.str(), x, st.N, opts.max_inner);
    }
    monitor.set_epoch(t);
    const double threshold = st.mu * st.delta_grad;
    Vector prev = x;
    int blocks = 0;
    double moved = kInf;
    while (true) {
      monitor.set_outer(blocks);
      Vector next = psgm_run(p, x, x, st.alpha, st.mu, st.N, monitor);
      ++blocks;
      prev = x;
      x = next;
      if (blocks >= 2) {
        moved = (x - prev).norm();
        if (moved <= threshold) break;
      }
      if (blocks >= opts.max_blocks) break;
    }
    EpochReport rep;
    rep.state = st;
    rep.iterations = blocks;
    rep.exit_grad_norm = moved / st.mu;
    rep.x_exit = x;
    rep.evals_at_exit = monitor.evaluations();
    rep.converged = moved <= threshold;
    out.epochs.push_back(rep);
  }
  EpochState last = out.schedule.at(opts.T);
  out.x = x;
  out.delta_T = last.delta_grad;
  out.mu_T = last.mu;
  return out;
}

PostprocessResult postprocess(const ProblemInstance& p, const Vector& x0, double beta0, double mu,
                              std::int64_t N, int K, RunMonitor& monitor) {
  if (K < 1) throw ArgumentError("postprocess: K must be >= 1");
  if (N < 1) throw ArgumentError("postprocess: N must be >= 1");
  if (!(beta0 > 0.0)) throw ArgumentError("postprocess: beta0 must be > 0");
  if (!(mu > 0.0)) throw ArgumentError("postprocess: mu must be > 0");
  PostprocessResult out;
  Vector x = x0;
  double beta = beta0;
  for (int k = 0; k < K; ++k) {
    monitor.set_outer(k);
    x = psgm_run(p, x, x, beta, mu, N, monitor);
    out.stepsizes.push_back(beta);
    beta /= 2.0;
  }
  out.point = x;
  return out;
}

PostprocessResult postprocess(const ProblemInstance& p, const Vector& x0, double beta0, double mu,
                              std::int64_t N, int K) {
  RunMonitor m(p);
  return postprocess(p, x0, beta0, mu, N, K, m);
}

namespace {

double pos_log(double v) { return v > 1.0 ? std::log(v) : 0.0; }

}  // namespace

std::int64_t predict_epoch_count(const GrowthModel& g, double mu0, double delta0, double rho,
                                 double epsilon, double dist0) {
  if (!(g.gamma >= 1.0)) throw ArgumentError("predict_epoch_count: gamma must be >= 1");
  if (!(g.sigma_F > 0.0)) throw ArgumentError("predict_epoch_count: sigma_F must be > 0");
  if (!(rho > 1.0)) throw ArgumentError("predict_epoch_count: rho must be > 1");
  if (!(mu0 > 0.0) || !(delta0 > 0.0) || !(epsilon > 0.0))
    throw ArgumentError("predict_epoch_count: mu0, delta0, epsilon must be > 0");
  if (!(dist0 >= 0.0)) throw ArgumentError("predict_epoch_count: dist0 must be >= 0");
  const double gm = g.gamma;
  const std::int64_t K0 = tolerant_ceil(dist0 / (mu0 * delta0));
  if (gm == 1.0) {
    std::int64_t a = tolerant_ceil(pos_log(mu0 * delta0 / epsilon) / (rho - 1.0));
    std::int64_t b = tolerant_ceil(pos_log(12.0 * delta0 / g.sigma_F) / rho);
    return a + K0 * b;
  }
  if (gm == 2.0) return tolerant_ceil(pos_log(delta0 / epsilon) / rho) + K0;
  if (gm < 2.0) {
    double a = (gm - 1.0) / rho * pos_log(delta0 / epsilon);
    double b = pos_log(mu0 * delta0 / epsilon) / (rho - 1.0);
    return tolerant_ceil(std::max(a, b)) + K0;
  }
  double c = (1.0 - 1.0 / rho) * (gm - 1.0);
  double e = (c - 1.0) * std::max(1.0, 1.0 / c);
  return tolerant_ceil(std::pow(delta0 / epsilon, e)) + K0;
}

}  // namespace proxpoint
