#include "proxpoint/inner_solver.hpp"

#include "proxpoint/errors.hpp"
#include "proxpoint/psgm.hpp"

namespace proxpoint {

namespace {

Vector exact_prox_or_throw(const ProblemInstance& p, const Vector& anchor, double mu) {
  if (!p.exact_prox) throw ArgumentError(p.name + ": no closed-form prox available");
  if (!(mu > 0.0)) throw ArgumentError("inner solve: mu must be > 0");
  check_dimension(p, anchor, "inner solve");
  return p.exact_prox(anchor, mu);
}

}  // namespace

ProxEstimate ExactProxSolver::solve(const ProblemInstance& p, const Vector& anchor, double mu,
                                    double /*delta*/, RunMonitor& monitor) {
  Vector z = exact_prox_or_throw(p, anchor, mu);
  monitor.add_evaluations(1, z, 1);
  return {z, 0.0};
}

ProxEstimate InjectedNoiseSolver::solve(const ProblemInstance& p, const Vector& anchor, double mu,
                                        double delta, RunMonitor& monitor) {
  if (!(delta >= 0.0)) throw ArgumentError("injected noise: delta must be >= 0");
  Vector z = exact_prox_or_throw(p, anchor, mu);
  if (delta > 0.0) {
    Vector dir;
    if (p.X_star_witness) dir = z - *p.X_star_witness;
    if (dir.size() == 0 || dir.norm() == 0.0) dir = anchor - z;
    if (dir.norm() == 0.0) {
      dir = Vector::Zero(z.size());
      dir(0) = 1.0;
    }
    z += delta * dir / dir.norm();
  }
  monitor.add_evaluations(1, z, 1);
  return {z, delta};
}

std::unique_ptr<InnerSolver> make_inner_solver(const std::string& name) {
  if (name == "exact_prox") return std::make_unique<ExactProxSolver>();
  if (name == "injected_noise") return std::make_unique<InjectedNoiseSolver>();
  if (name == "psgm") return std::make_unique<PsgmInnerSolver>();
  throw ArgumentError("unknown inner solver '" + name + "'");
}

}  // namespace proxpoint
