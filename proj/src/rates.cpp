#include "proxpoint/rates.hpp"

#include <cmath>
#include <numeric>

#include "proxpoint/envelope.hpp"
#include "proxpoint/psgm.hpp"

namespace proxpoint {

void validate(const RecurrenceSpec& s) {
  if (!(s.alpha > 0.0)) throw ArgumentError("recurrence: alpha must be > 0");
  if (!(s.beta > 0.0 && s.beta < 1.0)) throw ArgumentError("recurrence: beta must lie in (0, 1)");
  if (!(s.rho_exp > 0.0)) throw ArgumentError("recurrence: rho must be > 0");
  if (!(s.r0 >= 0.0)) throw ArgumentError("recurrence: r0 must be >= 0");
  for (double d : s.noise)
    if (!(d >= 0.0)) throw ArgumentError("recurrence: noise must be >= 0");
}

double h_step(const RecurrenceSpec& s, double r) {
  return std::max(r - s.alpha * std::pow(r, s.rho_exp), s.beta * r);
}

double iterate_h(const RecurrenceSpec& s, int k) {
  validate(s);
  if (k < 0) throw ArgumentError("iterate_h: k must be >= 0");
  double r = s.r0;
  for (int i = 0; i < k; ++i) r = h_step(s, r);
  return r;
}

namespace {

// First k with h^(k)(r0) <= threshold, scanning up to k_max.
int first_below(const RecurrenceSpec& s, double threshold, int k_max) {
  double r = s.r0;
  for (int i = 0; i <= k_max; ++i) {
    if (r <= threshold) return i;
    r = h_step(s, r);
  }
  return k_max + 1;
}

}  // namespace

double bound_h(const RecurrenceSpec& s, int k) {
  validate(s);
  if (k < 0) throw ArgumentError("bound_h: k must be >= 0");
  const double a = s.alpha, b = s.beta, p = s.rho_exp, r0 = s.r0;
  double rk = iterate_h(s, k);
  if (p == 1.0) {
    // h is linear here: h(r) = max{1 - alpha, beta} r.
    return std::pow(std::max(1.0 - a, b), k) * r0;
  }
  if (p > 1.0) {
    double bh = std::max(b, 1.0 - 1.0 / p);
    double thr = std::pow((1.0 - bh) / a, 1.0 / (p - 1.0));
    if (rk > thr) return std::pow(bh, k) * r0;
    int k0 = first_below(s, thr, k);
    double m = std::min(std::pow(r0, p - 1.0), (1.0 - bh) / a);
    return std::pow(1.0 / (1.0 / m + (p - 1.0) * (k - k0) * a), 1.0 / (p - 1.0));
  }
  double tau = std::pow(a / (1.0 - b), 1.0 / (1.0 - p));
  if (rk > tau) {
    double factor = 1.0 - a / (2.0 * std::pow(r0, 1.0 - p));
    return std::pow(factor, k) * (r0 - k * (a / 2.0) * std::pow(tau, p));
  }
  int k0 = first_below(s, tau, k);
  return std::pow(b, k - k0 - 1) * tau;
}

double perturbed_h_step(const RecurrenceSpec& s, double r) {
  double v = std::max(r - 0.5 * s.alpha * std::pow(r, s.rho_exp), 0.5 * (1.0 + s.beta) * r);
  if (s.rho_exp >= 1.0) v = std::max(v, (1.0 - 1.0 / s.rho_exp) * r);
  return v;
}

double noise_floor(const RecurrenceSpec& s, double delta) {
  if (delta == 0.0) return 0.0;
  return std::max(std::pow(2.0 * delta / s.alpha, 1.0 / s.rho_exp), 2.0 * delta / (1.0 - s.beta));
}

double perturbed_bound(const RecurrenceSpec& s, int k) {
  validate(s);
  if (k < 0) throw ArgumentError("perturbed_bound: k must be >= 0");
  // m_j = max{H(m_{j-1}), dhat(noise[j-1])} equals the majorant once the
  // initial term is tracked separately; H is nondecreasing.
  double u = s.r0;
  double floor_term = 0.0;
  for (int j = 1; j <= k; ++j) {
    u = perturbed_h_step(s, u);
    double d = static_cast<std::size_t>(j - 1) < s.noise.size() ? s.noise[j - 1] : 0.0;
    floor_term = std::max(perturbed_h_step(s, floor_term), noise_floor(s, d));
  }
  return std::max(u, floor_term);
}

namespace {

void check_sequence_inputs(const std::vector<double>& betas, double Gamma) {
  double sum = 0.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0)) throw ArgumentError("sequence_bound: betas must be >= 0");
    if (i > 0 && betas[i] > betas[i - 1]) throw ArgumentError("sequence_bound: betas must be nonincreasing");
    sum += betas[i];
  }
  if (sum > Gamma) throw ArgumentError("sequence_bound: sum of betas exceeds Gamma");
}

double at_or(const std::vector<double>& v, int i, double fallback) {
  return static_cast<std::size_t>(i) < v.size() ? v[i] : fallback;
}

}  // namespace

double sequence_bound(double u0, const std::vector<double>& alphas, const std::vector<double>& betas,
                      double Gamma, int k) {
  if (alphas.empty()) throw ArgumentError("sequence_bound: need at least one alpha");
  for (double a : alphas)
    if (!(a >= 0.0 && a < 1.0)) throw ArgumentError("sequence_bound: alphas must lie in [0, 1)");
  check_sequence_inputs(betas, Gamma);
  if (k < 0) throw ArgumentError("sequence_bound: k must be >= 0");
  if (k == 0) return u0;
  const double last_alpha = alphas.back();
  auto alpha = [&](int j) { return at_or(alphas, j, last_alpha); };
  // u_k is bounded through the recursion for the step k-1 -> k.
  int m = k - 1;
  int c = (m + 1) / 2 + 1;  // ceil(m / 2) + 1
  double p_all = 1.0;
  for (int j = 0; j <= m; ++j) p_all *= alpha(j);
  double p_tail = 1.0;
  for (int j = c; j <= m; ++j) p_tail *= alpha(j);
  double mx = 0.0;
  for (int i = c; i <= m; ++i) mx = std::max(mx, at_or(betas, i, 0.0) / (1.0 - alpha(i)));
  return u0 * p_all + Gamma * p_tail + mx;
}

double sequence_bound_constant(double u0, double alpha, const std::vector<double>& betas, double Gamma,
                               int k) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ArgumentError("sequence_bound: alpha must lie in [0, 1)");
  check_sequence_inputs(betas, Gamma);
  if (k < 0) throw ArgumentError("sequence_bound: k must be >= 0");
  int idx = (k + 1) / 2 + 1;
  return std::pow(alpha, (k - 4) / 2.0) * (u0 + Gamma) + at_or(betas, idx, 0.0) / (1.0 - alpha);
}

namespace {

std::int64_t ceil_nonneg(double v) { return v <= 0.0 ? 0 : tolerant_ceil(v); }

}  // namespace

std::int64_t exact_complexity_count(const GrowthModel& g, double mu, double r0, double epsilon) {
  if (!(g.gamma >= 1.0)) throw ArgumentError("exact_complexity_count: gamma must be >= 1");
  if (!(g.sigma_F > 0.0)) throw ArgumentError("exact_complexity_count: sigma_F must be > 0");
  if (!(mu > 0.0)) throw ArgumentError("exact_complexity_count: mu must be > 0");
  if (!(epsilon > 0.0)) throw ArgumentError("exact_complexity_count: epsilon must be > 0");
  if (!(r0 >= 0.0)) throw ArgumentError("exact_complexity_count: r0 must be >= 0");
  if (r0 <= epsilon) return 0;
  const double s = g.sigma_F, gm = g.gamma;
  if (gm == 1.0) return ceil_nonneg((r0 - epsilon) / (mu * s));
  if (gm == 2.0) return ceil_nonneg(std::log(r0 / epsilon) / (mu * s));
  const double ph = phi(gm);
  if (gm < 2.0) {
    double c = std::pow(mu * ph * s, 1.0 / (2.0 - gm));
    double T = r0 / c;
    if (epsilon >= c) return ceil_nonneg(std::min(std::pow(T, 2.0 - gm) * std::log(r0 / epsilon), T));
    return ceil_nonneg(std::log(std::min(r0, std::pow(2.0 * mu * s, 1.0 / (2.0 - gm))) / epsilon));
  }
  const double p = gm - 1.0;
  const double a = mu * ph * s / 2.0;
  const double bh = std::max((1.0 + std::sqrt(1.0 - ph)) / 2.0, 1.0 - 1.0 / p);
  const double tau = std::pow((1.0 - bh) / a, 1.0 / (p - 1.0));
  double first = std::max(0.0, std::log(r0 / tau) / bh);
  double second = std::max(
      0.0, (std::pow(epsilon, -(p - 1.0)) - std::pow(std::min(r0, tau), -(p - 1.0))) / ((p - 1.0) * a));
  return ceil_nonneg(first + second);
}

double sharp_growth_bound(double dist0, double mu, double sigma_F, const std::vector<double>& deltas,
                          int k) {
  if (!(mu > 0.0) || !(sigma_F > 0.0)) throw ArgumentError("sharp_growth_bound: mu, sigma must be > 0");
  if (k < 0) throw ArgumentError("sharp_growth_bound: k must be >= 0");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] > deltas[i - 1]) throw ArgumentError("sharp_growth_bound: deltas must be nonincreasing");
  if (k == 0) return dist0;
  if (static_cast<std::size_t>(k) > deltas.size())
    throw ArgumentError("sharp_growth_bound: need k deltas");
  double r = std::max(dist0, mu * sigma_F);
  for (int i = 0; i < k; ++i) r -= mu * sigma_F - deltas[i];
  return std::max(r, deltas[k - 1]);
}

double quadratic_growth_bound(double dist0, double mu, double sigma_F, double Gamma,
                              const std::vector<double>& deltas, int k) {
  if (!(mu > 0.0) || !(sigma_F > 0.0))
    throw ArgumentError("quadratic_growth_bound: mu, sigma must be > 0");
  if (k < 0) throw ArgumentError("quadratic_growth_bound: k must be >= 0");
  double sum = std::accumulate(deltas.begin(), deltas.end(), 0.0);
  if (sum > Gamma) throw ArgumentError("quadratic_growth_bound: sum of deltas exceeds Gamma");
  double q = 1.0 + 2.0 * mu * sigma_F;
  int idx = (k + 1) / 2 + 1;
  double tail = at_or(deltas, idx, 0.0) * (1.0 + 1.0 / (std::sqrt(q) - 1.0));
  return std::pow(q, -(k - 4) / 4.0) * (dist0 + Gamma) + tail;
}

double HolderRecurrence::h(double r) const {
  double ph = phi(gamma);
  double v = std::max(r - 0.5 * mu * ph * sigma_F * std::pow(r, gamma - 1.0),
                      0.5 * (1.0 + std::sqrt(1.0 - ph)) * r);
  if (gamma >= 2.0) v = std::max(v, (1.0 - 1.0 / (gamma - 1.0)) * r);
  return v;
}

double HolderRecurrence::delta_hat(double delta) const {
  if (delta == 0.0) return 0.0;
  double ph = phi(gamma);
  return std::max(std::pow(2.0 * delta / (mu * ph * sigma_F), 1.0 / (gamma - 1.0)),
                  2.0 * delta / (1.0 - std::sqrt(1.0 - ph)));
}

double holder_growth_bound(const HolderRecurrence& hr, double dist0, const std::vector<double>& deltas,
                           int k) {
  if (!(hr.gamma > 1.0)) throw ArgumentError("holder_growth_bound: gamma must be > 1");
  if (!(hr.mu > 0.0) || !(hr.sigma_F > 0.0)) throw ArgumentError("holder_growth_bound: mu, sigma must be > 0");
  if (k < 0) throw ArgumentError("holder_growth_bound: k must be >= 0");
  double u = dist0;
  double dbar = hr.delta_hat(at_or(deltas, 0, 0.0));
  for (int j = 1; j <= k; ++j) {
    u = hr.h(u);
    dbar = std::max(hr.h(dbar), hr.delta_hat(at_or(deltas, j - 1, 0.0)));
  }
  return std::max(u, dbar);
}

}  // namespace proxpoint
