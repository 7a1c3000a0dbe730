#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxpoint/proxlib.hpp"
#include "proxpoint/types.hpp"

namespace proxpoint {

// Growth F(x) - F* >= sigma_F * dist(x, X*)^gamma, plus optional smoothness data for f.
// nu = 0 means f is only Lipschitz with subgradients bounded by L_f.
struct GrowthModel {
  double gamma = 1.0;
  double sigma_F = 1.0;
  double nu = 0.0;
  double L_f = kInf;

  GrowthModel() = default;
  GrowthModel(double gamma, double sigma_F, double nu = 0.0, double L_f = kInf);
};

struct NamedBlock {
  std::string name;
  Matrix value;
};

// Data an instance was built from, kept for serialization.
struct ProblemData {
  std::string family;
  int rows = 0;
  int cols = 0;
  double tau = kInf;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<NamedBlock> blocks;
};

// F = f + psi.  f is reached only through value and subgradient oracles.
struct ProblemInstance {
  std::string name;
  int dim = 0;
  std::function<double(const Vector&)> f_value;
  std::function<Vector(const Vector&)> f_subgrad;
  ProxSpec psi;
  std::optional<double> F_star;
  std::optional<Vector> X_star_witness;
  // Exact dist(x, X*) when the solution set is known in closed form.
  std::function<double(const Vector&)> dist_to_solutions;
  // argmin_z F(z) + |z - x|^2 / (2 mu), when available in closed form.
  std::function<Vector(const Vector&, double)> exact_prox;
  std::optional<GrowthModel> growth;
  // Bound on |f'(x)| over the region of interest.
  double subgrad_bound = kInf;
  std::shared_ptr<const ProblemData> data;
};

void check_dimension(const ProblemInstance& p, const Vector& x, const char* where);

// F(x) = f(x) + psi(x); +inf when x violates an indicator psi.
double evaluate_objective(const ProblemInstance& p, const Vector& x);

// Exact distance when known, else distance to the witness, else NaN.
double distance_to_solutions(const ProblemInstance& p, const Vector& x);

enum class RunStatus { converged, budget_exhausted };

const char* to_string(RunStatus s);

struct CertifiedResult {
  Vector point;
  double grad_norm = kNaN;
  double delta_at_exit = kNaN;
  double dist_bound = kNaN;  // NaN when no certificate applies
  RunStatus status = RunStatus::budget_exhausted;
  int iterations = 0;
};

}  // namespace proxpoint
