#include "proxpoint/core.hpp"

#include <sstream>

#include "proxpoint/errors.hpp"

namespace proxpoint {

GrowthModel::GrowthModel(double gamma_, double sigma_, double nu_, double L_)
    : gamma(gamma_), sigma_F(sigma_), nu(nu_), L_f(L_) {
  if (!(gamma >= 1.0)) throw ArgumentError("GrowthModel: gamma must be >= 1");
  if (!(sigma_F > 0.0)) throw ArgumentError("GrowthModel: sigma_F must be > 0");
  if (!(nu >= 0.0 && nu <= 1.0)) throw ArgumentError("GrowthModel: nu must lie in [0, 1]");
  if (!(L_f > 0.0)) throw ArgumentError("GrowthModel: L_f must be > 0");
}

void check_dimension(const ProblemInstance& p, const Vector& x, const char* where) {
  if (x.size() != p.dim) {
    std::ostringstream os;
    os << where << ": expected dimension " << p.dim << ", got " << x.size();
    throw ArgumentError(os.str());
  }
}

double evaluate_objective(const ProblemInstance& p, const Vector& x) {
  check_dimension(p, x, "evaluate_objective");
  double ps = psi_value(p.psi, x);
  if (ps == kInf) return kInf;
  return p.f_value(x) + ps;
}

double distance_to_solutions(const ProblemInstance& p, const Vector& x) {
  if (p.dist_to_solutions) return p.dist_to_solutions(x);
  if (p.X_star_witness) return (x - *p.X_star_witness).norm();
  return kNaN;
}

const char* to_string(RunStatus s) {
  return s == RunStatus::converged ? "converged" : "budget_exhausted";
}

}  // namespace proxpoint
