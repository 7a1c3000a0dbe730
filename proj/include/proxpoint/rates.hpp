#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "proxpoint/core.hpp"
#include "proxpoint/errors.hpp"

namespace proxpoint {

// h(r) = max{r - alpha r^rho, beta r}, iterated from r0.  noise[i] is the
// additive perturbation on the step from r_i to r_{i+1}.
struct RecurrenceSpec {
  double alpha = 0.5;
  double beta = 0.5;
  double rho_exp = 1.0;
  double r0 = 1.0;
  std::vector<double> noise;
};

void validate(const RecurrenceSpec& s);

double h_step(const RecurrenceSpec& s, double r);
// h^(k)(r0)
double iterate_h(const RecurrenceSpec& s, int k);
// Closed-form rate bound on h^(k)(r0).
double bound_h(const RecurrenceSpec& s, int k);

// Majorant for r_{k+1} <= h(r_k) + noise[k]:
// max{ H^(k)(r0), max_i H^(k-1-i)(dhat(noise[i])) } with
// H(r) = max{r - alpha r^rho / 2, (1 + beta) r / 2} (and (1 - 1/rho) r when rho >= 1),
// dhat(d) = max{(2d/alpha)^(1/rho), 2d/(1 - beta)}.
double perturbed_bound(const RecurrenceSpec& s, int k);
double perturbed_h_step(const RecurrenceSpec& s, double r);
double noise_floor(const RecurrenceSpec& s, double delta);

// Bound on u_k for u_{i+1} <= alphas[i] u_i + betas[i], betas nonincreasing
// with sum at most Gamma.  Entries beyond the supplied lists are taken as
// the last alpha and zero beta.
double sequence_bound(double u0, const std::vector<double>& alphas, const std::vector<double>& betas,
                      double Gamma, int k);
// Same recursion with a constant alpha.
double sequence_bound_constant(double u0, double alpha, const std::vector<double>& betas, double Gamma,
                               int k);

// For a_1 >= ... >= a_n returns
// (max{0, a_n, a_n + a_{n-1}, ..., sum}, max{0, sum}).
template <typename T>
std::pair<T, T> max_identity(std::span<const T> a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] > a[i - 1]) throw ArgumentError("max_identity: input must be sorted non-increasing");
  T run = T(0);
  T lhs = T(0);
  for (std::size_t i = a.size(); i-- > 0;) {
    run = run + a[i];
    lhs = std::max(lhs, run);
  }
  return {lhs, std::max(T(0), run)};
}

// Iterations of exact PPA needed for dist <= epsilon under the growth model.
std::int64_t exact_complexity_count(const GrowthModel& g, double mu, double r0, double epsilon);

// Distance bounds for the inexact proximal point iterates x^k.
// deltas[i] is the inner accuracy used to produce x^{i+1}.
double sharp_growth_bound(double dist0, double mu, double sigma_F, const std::vector<double>& deltas,
                          int k);
double quadratic_growth_bound(double dist0, double mu, double sigma_F, double Gamma,
                              const std::vector<double>& deltas, int k);

// The recursion function for general Holder growth and its noise floor.
struct HolderRecurrence {
  double gamma;
  double mu;
  double sigma_F;
  double h(double r) const;
  double delta_hat(double delta) const;
};
double holder_growth_bound(const HolderRecurrence& hr, double dist0, const std::vector<double>& deltas,
                           int k);

}  // namespace proxpoint
