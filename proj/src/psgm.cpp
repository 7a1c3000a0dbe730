#include "proxpoint/psgm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "proxpoint/errors.hpp"

namespace proxpoint {

Vector psgm_run(const ProblemInstance& p, const Vector& z0, const Vector& anchor, double alpha,
                double mu, std::int64_t N, RunMonitor& monitor) {
  if (!(alpha > 0.0)) throw ArgumentError("psgm_run: alpha must be > 0");
  if (!(mu > 0.0)) throw ArgumentError("psgm_run: mu must be > 0");
  if (N < 1) throw ArgumentError("psgm_run: N must be >= 1");
  check_dimension(p, z0, "psgm_run");
  check_dimension(p, anchor, "psgm_run");
  Vector z = z0;
  for (std::int64_t l = 0; l < N; ++l) {
    Vector g = p.f_subgrad(z);
    Vector step = z - alpha * (g + (z - anchor) / mu);
    z = prox(p.psi, step, alpha);
    if (!z.allFinite()) {
      std::ostringstream os;
      os << "psgm_run: non-finite iterate at step " << l + 1 << " (alpha = " << alpha
         << ", mu = " << mu << ")";
      throw NumericalError(os.str());
    }
    monitor.on_evaluation(z, static_cast<int>(std::min<std::int64_t>(l + 1, INT32_MAX)));
  }
  return z;
}

Vector psgm_run(const ProblemInstance& p, const Vector& z0, const Vector& anchor, double alpha,
                double mu, std::int64_t N) {
  RunMonitor m(p);
  return psgm_run(p, z0, anchor, alpha, mu, N, m);
}

std::int64_t tolerant_ceil(double v) {
  double c = std::ceil(v - std::min(1e-3, 1e-9 * std::max(1.0, std::abs(v))));
  if (!(c < 9.0e18)) return INT64_MAX;
  return static_cast<std::int64_t>(c);
}

double inner_stepsize_bound(double mu, double delta, double nu, double L_f) {
  if (!(mu > 0.0) || !(delta > 0.0)) throw ArgumentError("inner_stepsize_bound: mu, delta must be > 0");
  if (!(L_f > 0.0)) throw ArgumentError("inner_stepsize_bound: L_f must be > 0");
  double b = std::pow(delta, 2.0 * (1.0 - nu)) / (4.0 * mu * L_f * L_f);
  return std::min(mu / 2.0, b);
}

InnerBudget budget_for_delta(double mu, double alpha, double dist0, double delta) {
  if (!(mu > 0.0) || !(alpha > 0.0)) throw ArgumentError("budget_for_delta: mu, alpha must be > 0");
  if (!(delta > 0.0)) throw ArgumentError("budget_for_delta: delta must be > 0");
  if (!(dist0 >= 0.0)) throw ArgumentError("budget_for_delta: dist0 must be >= 0");
  InnerBudget b;
  b.alpha = alpha;
  if (dist0 <= delta) {
    b.N = 1;
    b.certified_delta = dist0;
    return b;
  }
  b.N = std::max<std::int64_t>(1, tolerant_ceil(4.0 * mu / alpha * std::log(dist0 / delta)));
  b.certified_delta = delta;
  return b;
}

InnerBudget budget_wsm_phase2(double dist0, double alpha, double L_f, double sigma_F) {
  if (!(alpha > 0.0) || !(L_f > 0.0)) throw ArgumentError("budget_wsm_phase2: alpha, L_f must be > 0");
  if (!(dist0 >= 0.0)) throw ArgumentError("budget_wsm_phase2: dist0 must be >= 0");
  InnerBudget b;
  b.alpha = alpha;
  double r = dist0 / (alpha * L_f);
  b.N = std::max<std::int64_t>(1, tolerant_ceil(2.0 * r * r));
  b.certified_delta = sigma_F > 0.0 ? alpha * L_f * L_f / (2.0 * sigma_F) : kNaN;
  return b;
}

double psi_subgrad_bound(const ProxSpec& ps, int dim) {
  switch (ps.kind) {
    case ProxSpec::Kind::l1_norm: return ps.weight * std::sqrt(static_cast<double>(dim));
    case ProxSpec::Kind::nuclear_norm:
      return ps.weight * std::sqrt(static_cast<double>(std::min(ps.rows, ps.cols)));
    default: return 0.0;
  }
}

ProxEstimate PsgmInnerSolver::solve(const ProblemInstance& p, const Vector& anchor, double mu,
                                    double delta, RunMonitor& monitor) {
  if (!(mu > 0.0)) throw ArgumentError("psgm inner: mu must be > 0");
  if (!(delta > 0.0)) throw ArgumentError("psgm inner: delta must be > 0");
  check_dimension(p, anchor, "psgm inner");
  double L = std::isnan(opts_.L_f) ? p.subgrad_bound : opts_.L_f;
  if (!(L > 0.0) || !std::isfinite(L)) throw ArgumentError(p.name + ": psgm inner needs a finite L_f");
  double guard = inner_stepsize_bound(mu, delta, opts_.nu, L);
  double alpha = std::isnan(opts_.alpha) ? guard : std::min(opts_.alpha, guard);

  double dist0;
  if (last_ && last_->output.size() == anchor.size() && last_->output == anchor) {
    // |x+ - prox(x+)| <= |x+ - prox(x)| + |prox(x) - prox(x+)| <= delta + |x - x+|
    dist0 = last_->certified + (last_->anchor - last_->output).norm();
    // |x - prox_mu(x)| is nondecreasing in mu and at most linear in it.
    if (mu > last_->mu) dist0 *= mu / last_->mu;
  } else if (!std::isnan(opts_.initial_radius)) {
    dist0 = opts_.initial_radius;
  } else {
    // |x - prox_mu(x)| <= mu |F'(x)| for feasible x; an infeasible anchor
    // pays twice its distance to the feasible set on top.
    Vector feasible = p.psi.is_indicator() ? prox(p.psi, anchor, 1.0) : anchor;
    Vector g = p.f_subgrad(feasible);
    monitor.on_evaluation(feasible, 0);
    dist0 = 2.0 * (anchor - feasible).norm() + mu * (g.norm() + psi_subgrad_bound(p.psi, p.dim));
  }

  budget_ = budget_for_delta(mu, alpha, dist0, delta);
  if (budget_.N > opts_.max_inner) {
    std::ostringstream os;
    os << "psgm inner: certified budget " << budget_.N << " exceeds max_inner " << opts_.max_inner
       << " (mu = " << mu << ", delta = " << delta << ", alpha = " << alpha << ")";
    throw BudgetError(os.str(), anchor, budget_.N, opts_.max_inner);
  }
  Vector z = psgm_run(p, anchor, anchor, alpha, mu, budget_.N, monitor);
  last_ = Memory{anchor, z, mu, budget_.certified_delta};
  return {z, budget_.certified_delta};
}

}  // namespace proxpoint
