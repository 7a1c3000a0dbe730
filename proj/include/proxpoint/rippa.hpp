#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "proxpoint/ippa.hpp"
#include "proxpoint/psgm.hpp"

namespace proxpoint {

struct EpochState {
  int t = 0;
  double mu = 0.0;
  double delta_grad = 0.0;  // gradient-level tolerance
  double delta = 0.0;       // absolute prox tolerance, mu * delta_grad
  double alpha = kNaN;      // inner stepsize (RIPP-PsGM only)
  double N_real = kNaN;     // unrounded inner budget (RIPP-PsGM only)
  std::int64_t N = 0;
};

// mu_t = 2^t mu0, delta_grad_t = 2^(-rho t) delta0, delta_t = mu_t delta_grad_t.
EpochState epoch_schedule(double mu0, double delta0, double rho, int t);

struct RippPsgmSchedule {
  double mu0;
  double delta0;
  double rho;
  double q;
  double alpha0;
  double N0;
  // Stepsizes halve by 2^q and budgets grow by 2^(q+1) per epoch.
  EpochState at(int t) const;
};

// alpha0 = min(mu0/2, (mu0 delta0)^(2(1-nu)) / (4 mu0 L^2)) and
// N0 = max(1, 8 ln(L/delta0) + 1, rho - 1).
RippPsgmSchedule make_ripp_psgm_schedule(double mu0, double delta0, double rho, double q, double L_f,
                                         double nu = 0.0);

struct EpochReport {
  EpochState state;
  int iterations = 0;  // IPPA updates (RIPPA) or PsGM blocks (RIPP-PsGM)
  double exit_grad_norm = kNaN;
  Vector x_exit;
  std::int64_t evals_at_exit = 0;
  bool converged = false;
};

struct RippaOptions {
  double mu0 = 1.0;
  double delta0 = 1.0;
  double rho = 2.0;
  double epsilon = 1e-6;
  int max_epochs = 20;
  int ippa_budget = 100000;
  std::optional<GrowthModel> growth;
};

struct RippaResult {
  CertifiedResult result;
  std::vector<EpochReport> epochs;
};

// Epoch t runs the inexact proximal point loop from x^t with mu_t, constant
// tolerance delta_t and gradient target 5 delta_grad_t.  Stops once the
// exit certificate reaches epsilon or after max_epochs.
RippaResult rippa_run(const ProblemInstance& p, const Vector& x0, const RippaOptions& opts,
                      InnerSolver& inner, RunMonitor& monitor);

struct RippPsgmOptions {
  double delta0 = kNaN;  // NaN: 2 L_f
  double mu0 = 1.0;
  double rho = 1.5;
  double q = kNaN;       // NaN: 2 rho - 1
  double L_f = kNaN;     // NaN: problem subgrad_bound
  double nu = 0.0;
  int T = 5;
  std::int64_t max_inner = 100'000'000;
  int max_blocks = 10000;
};

struct RippPsgmResult {
  Vector x;
  double delta_T = kNaN;  // gradient-level tolerance after T epochs
  double mu_T = kNaN;
  RippPsgmSchedule schedule{};
  bool stepsize_guard_bound = false;  // alpha0 was cut below mu0 / 2
  std::vector<EpochReport> epochs;
};

// Each epoch repeats x <- PsGM(x, x, alpha_t, mu_t, N_t) until the two most
// recent block outputs are within mu_t delta_t (checked from the second
// block on) or max_blocks is hit; the newest output starts the next epoch.
RippPsgmResult ripp_psgm_run(const ProblemInstance& p, const Vector& x0, const RippPsgmOptions& opts,
                             RunMonitor& monitor);

struct PostprocessResult {
  Vector point;
  std::vector<double> stepsizes;
};

// K PsGM calls with N steps each, halving the stepsize after every call.
PostprocessResult postprocess(const ProblemInstance& p, const Vector& x0, double beta0, double mu,
                              std::int64_t N, int K, RunMonitor& monitor);
PostprocessResult postprocess(const ProblemInstance& p, const Vector& x0, double beta0, double mu,
                              std::int64_t N, int K);

// Epochs predicted for dist <= epsilon with explicit constants equal to 1.
std::int64_t predict_epoch_count(const GrowthModel& g, double mu0, double delta0, double rho,
                                 double epsilon, double dist0);

}  // namespace proxpoint
