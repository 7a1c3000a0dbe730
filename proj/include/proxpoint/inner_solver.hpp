#pragma once

#include <memory>
#include <string>

#include "proxpoint/core.hpp"
#include "proxpoint/trace.hpp"

namespace proxpoint {

struct ProxEstimate {
  Vector point;
  // Guaranteed bound on |point - prox_{mu F}(anchor)|.
  double certified_delta = 0.0;
};

// Produces a delta-approximation of prox_{mu F}(anchor).
class InnerSolver {
 public:
  virtual ~InnerSolver() = default;
  virtual ProxEstimate solve(const ProblemInstance& p, const Vector& anchor, double mu, double delta,
                             RunMonitor& monitor) = 0;
  virtual std::string name() const = 0;
  // Forget warm-start state between independent runs.
  virtual void reset() {}
};

// Closed-form prox; one call counts as one evaluation.
class ExactProxSolver : public InnerSolver {
 public:
  ProxEstimate solve(const ProblemInstance& p, const Vector& anchor, double mu, double delta,
                     RunMonitor& monitor) override;
  std::string name() const override { return "exact_prox"; }
};

// Exact prox shifted by exactly delta, pointing away from the solution
// witness (or away from the anchor when the prox equals the witness).
class InjectedNoiseSolver : public InnerSolver {
 public:
  ProxEstimate solve(const ProblemInstance& p, const Vector& anchor, double mu, double delta,
                     RunMonitor& monitor) override;
  std::string name() const override { return "injected_noise"; }
};

std::unique_ptr<InnerSolver> make_inner_solver(const std::string& name);

}  // namespace proxpoint
