#include "proxpoint/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proxpoint/errors.hpp"

namespace proxpoint {

double phi(double gamma) {
  if (!(gamma >= 1.0)) throw ArgumentError("phi: gamma must be >= 1");
  auto obj = [gamma](double l) { return std::pow(l, gamma) + (1.0 - l) * (1.0 - l); };
  // Stationarity: gamma * lambda^(gamma-1) = 2 (1 - lambda).  The difference
  // is increasing on [0, 1], negative at 0 and positive at 1.
  auto g = [gamma](double l) { return gamma * std::pow(l, gamma - 1.0) - 2.0 * (1.0 - l); };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  double lam = 0.5 * (lo + hi);
  return std::min({obj(lam), obj(0.0), obj(1.0)});
}

double huber(double tau, double s) {
  if (!(tau > 0.0)) throw ArgumentError("huber: tau must be > 0");
  if (!(s >= 0.0)) throw ArgumentError("huber: s must be >= 0");
  return s > tau ? s - tau / 2.0 : s * s / (2.0 * tau);
}

double generic_envelope_lower_bound(const GrowthModel& g, double mu, double dist) {
  if (!(mu > 0.0)) throw ArgumentError("envelope_lower_bound: mu must be > 0");
  if (!(dist >= 0.0)) throw ArgumentError("envelope_lower_bound: dist must be >= 0");
  return phi(g.gamma) * std::min(g.sigma_F * std::pow(dist, g.gamma), dist * dist / (2.0 * mu));
}

double envelope_lower_bound(const GrowthModel& g, double mu, double dist) {
  if (!(mu > 0.0)) throw ArgumentError("envelope_lower_bound: mu must be > 0");
  if (!(dist >= 0.0)) throw ArgumentError("envelope_lower_bound: dist must be >= 0");
  double s = g.sigma_F;
  if (g.gamma == 1.0) return huber(s * s * mu, s * dist);
  if (g.gamma == 2.0) return s / (1.0 + 2.0 * s * mu) * dist * dist;
  return generic_envelope_lower_bound(g, mu, dist);
}

EnvelopeGradient make_envelope_gradient(const Vector& anchor, const Vector& prox_estimate, double mu,
                                        double delta) {
  if (!(mu > 0.0)) throw ArgumentError("envelope gradient: mu must be > 0");
  if (!(delta >= 0.0)) throw ArgumentError("envelope gradient: delta must be >= 0");
  if (anchor.size() != prox_estimate.size()) throw ArgumentError("envelope gradient: size mismatch");
  EnvelopeGradient eg;
  eg.value = (anchor - prox_estimate) / mu;
  eg.anchor = anchor;
  eg.prox_estimate = prox_estimate;
  eg.mu = mu;
  eg.delta = delta;
  return eg;
}

EnvelopeGradient approx_envelope_gradient(const ProblemInstance& p, const Vector& x, double mu,
                                          InnerSolver& inner, double delta, RunMonitor& monitor) {
  check_dimension(p, x, "approx_envelope_gradient");
  ProxEstimate est = inner.solve(p, x, mu, delta, monitor);
  return make_envelope_gradient(x, est.point, mu, est.certified_delta);
}

EnvelopeGradient approx_envelope_gradient(const ProblemInstance& p, const Vector& x, double mu,
                                          InnerSolver& inner, double delta) {
  RunMonitor monitor(p);
  return approx_envelope_gradient(p, x, mu, inner, delta, monitor);
}

std::optional<double> distance_certificate(const GrowthModel& g, double grad_norm, double delta,
                                           double mu) {
  if (!(mu > 0.0)) throw ArgumentError("distance_certificate: mu must be > 0");
  if (!(delta >= 0.0) || !(grad_norm >= 0.0))
    throw ArgumentError("distance_certificate: negative input");
  double s = g.sigma_F;
  if (g.gamma == 1.0) {
    if (grad_norm + delta / mu < s) return mu * grad_norm + delta;
    return std::nullopt;
  }
  double ph = phi(g.gamma);
  double a = std::pow((mu * grad_norm + delta) / (mu * s * ph), 1.0 / (g.gamma - 1.0));
  double b = (2.0 * mu * grad_norm + delta) / ph;
  return std::max(a, b);
}

std::optional<double> distance_certificate(const GrowthModel& g, const EnvelopeGradient& eg) {
  // value was formed in floating point; its rounding acts like extra prox error
  double scale = eg.anchor.lpNorm<Eigen::Infinity>() + eg.prox_estimate.lpNorm<Eigen::Infinity>();
  double rounding = 4.0 * std::numeric_limits<double>::epsilon() * scale * std::sqrt(double(eg.value.size()));
  return distance_certificate(g, eg.norm(), eg.delta + rounding, eg.mu);
}

}  // namespace proxpoint
