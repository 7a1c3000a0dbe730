#pragma once

#include <cstdint>
#include <optional>

#include "proxpoint/inner_solver.hpp"

namespace proxpoint {

// N steps of z <- prox_{alpha psi}(z - alpha (f'(z) + (z - anchor) / mu)).
// Every step is one subgradient evaluation reported to the monitor.
Vector psgm_run(const ProblemInstance& p, const Vector& z0, const Vector& anchor, double alpha,
                double mu, std::int64_t N, RunMonitor& monitor);
Vector psgm_run(const ProblemInstance& p, const Vector& z0, const Vector& anchor, double alpha,
                double mu, std::int64_t N);

struct InnerBudget {
  double alpha = 0.0;
  std::int64_t N = 1;
  double certified_delta = kNaN;
};

// Largest stepsize for which the N-step budget below is certified:
// min(mu/2, delta^(2(1-nu)) / (4 mu L^2)).
double inner_stepsize_bound(double mu, double delta, double nu, double L_f);

// N = ceil((4 mu / alpha) ln(dist0 / delta)); dist0 <= delta gives N = 1.
InnerBudget budget_for_delta(double mu, double alpha, double dist0, double delta);

// N = max(1, ceil(2 (dist0 / (alpha L))^2)); output distance alpha L^2 / (2 sigma_F).
InnerBudget budget_wsm_phase2(double dist0, double alpha, double L_f, double sigma_F = kNaN);

// ceil that ignores rounding noise just above an integer.
std::int64_t tolerant_ceil(double v);

// PsGM as an inner solver, with the iteration count chosen by the certified
// budget.  The distance from the warm start to the true prox is bounded by
// mu |g_prev| + delta_prev when the anchor is the previous output, and by
// mu |F'(anchor)| otherwise.
class PsgmInnerSolver : public InnerSolver {
 public:
  struct Options {
    double nu = 0.0;
    double L_f = kNaN;             // NaN: take the problem's subgrad_bound
    double alpha = kNaN;           // NaN: largest certified stepsize
    double initial_radius = kNaN;  // NaN: mu |F'| at the projected anchor (one extra evaluation)
    std::int64_t max_inner = 10'000'000;
  };

  PsgmInnerSolver() = default;
  explicit PsgmInnerSolver(Options o) : opts_(o) {}

  ProxEstimate solve(const ProblemInstance& p, const Vector& anchor, double mu, double delta,
                     RunMonitor& monitor) override;
  std::string name() const override { return "psgm"; }
  void reset() override { last_.reset(); }

  const InnerBudget& last_budget() const { return budget_; }

 private:
  struct Memory {
    Vector anchor;
    Vector output;
    double mu;
    double certified;
  };
  Options opts_;
  std::optional<Memory> last_;
  InnerBudget budget_;
};

// Bound on |psi'(x)| for feasible x, used to size the first warm start.
double psi_subgrad_bound(const ProxSpec& ps, int dim);

}  // namespace proxpoint
