#pragma once

#include <optional>

#include "proxpoint/core.hpp"
#include "proxpoint/inner_solver.hpp"

namespace proxpoint {

// phi(gamma) = min over lambda in [0,1] of lambda^gamma + (1 - lambda)^2.
double phi(double gamma);

// H_tau(s) = s - tau/2 for s > tau, s^2 / (2 tau) otherwise.
double huber(double tau, double s);

// Lower bound on F_mu(x) - F* in terms of d = dist(x, X*).
double envelope_lower_bound(const GrowthModel& g, double mu, double dist);
// The phi-based bound valid for every gamma, used as a cross-check.
double generic_envelope_lower_bound(const GrowthModel& g, double mu, double dist);

// (x - z) / mu where z approximates prox_{mu F}(x) within delta.
struct EnvelopeGradient {
  Vector value;
  Vector anchor;
  Vector prox_estimate;
  double mu = 0.0;
  double delta = 0.0;
  double norm() const { return value.norm(); }
};

EnvelopeGradient make_envelope_gradient(const Vector& anchor, const Vector& prox_estimate, double mu,
                                        double delta);

// Asks the inner solver for a delta-approximate prox of x; the gradient
// carries the radius the solver certified.
EnvelopeGradient approx_envelope_gradient(const ProblemInstance& p, const Vector& x, double mu,
                                          InnerSolver& inner, double delta, RunMonitor& monitor);
EnvelopeGradient approx_envelope_gradient(const ProblemInstance& p, const Vector& x, double mu,
                                          InnerSolver& inner, double delta);

// Upper bound on dist(x, X*) from an inexact envelope gradient, when the
// growth data allows one.
std::optional<double> distance_certificate(const GrowthModel& g, double grad_norm, double delta,
                                           double mu);
// The gradient form also charges the rounding error of (x - z) / mu to delta.
std::optional<double> distance_certificate(const GrowthModel& g, const EnvelopeGradient& eg);

}  // namespace proxpoint
