#include <cmath>
#include <vector>

#include "doctest.h"
#include "proxpoint/errors.hpp"
#include "proxpoint/ippa.hpp"
#include "proxpoint/problems.hpp"
#include "proxpoint/rates.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace proxpoint;
using testsupport::Gen;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

// Runs IPPA and returns x^0, x^1, ... as seen by the observer.
std::vector<double> iterates(const ProblemInstance& p, double x0, IppaOptions o, InnerSolver& inner,
                             CertifiedResult* out = nullptr) {
  std::vector<double> xs;
  o.observer = [&](const IppaIterate& it) { xs.push_back(it.x(0)); };
  auto r = ippa_run(p, scalar(x0), o, inner);
  if (out) *out = r;
  return xs;
}

}  // namespace

TEST_CASE("exact PPA on |x| walks 5,4,3,2,1,0") {
  auto p = make_univariate_holder(1.0, 1.0);
  ExactProxSolver exact;
  IppaOptions o;
  o.mu = 1.0;
  o.epsilon = 1e-9;
  CertifiedResult r;
  auto xs = iterates(p, 5.0, o, exact, &r);
  REQUIRE(xs.size() == 6);
  for (int k = 0; k <= 5; ++k) CHECK(xs[k] == doctest::Approx(5.0 - k));
  CHECK(r.status == RunStatus::converged);
  CHECK(r.iterations == 5);
  CHECK(r.grad_norm == 0.0);
}

TEST_CASE("exact PPA on x^2 contracts by a factor of three") {
  auto p = make_univariate_holder(2.0, 2.0);  // F = x^2
  ExactProxSolver exact;
  IppaOptions o;
  o.mu = 1.0;
  o.epsilon = 1e-300;
  o.budget = 3;
  auto xs = iterates(p, 1.0, o, exact);
  REQUIRE(xs.size() == 4);
  CHECK(xs[3] == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("optimal start stops at once with gradient delta0 / mu") {
  auto p = make_univariate_holder(1.0, 1.0);
  InjectedNoiseSolver noisy;
  IppaOptions o;
  o.mu = 2.0;
  o.epsilon = 1e-3;
  o.deltas = constant_delta(0.5 * o.mu * o.epsilon);
  auto r = ippa_run(p, scalar(0.0), o, noisy);
  CHECK(r.status == RunStatus::converged);
  CHECK(r.iterations == 0);
  CHECK(r.grad_norm == doctest::Approx(0.5 * o.epsilon));
}

TEST_CASE("stopping rule needs the tolerance scaled by mu") {
  // gradient is small but delta exceeds mu * epsilon, so the run keeps going
  auto p = make_univariate_holder(1.0, 1.0);
  InjectedNoiseSolver noisy;
  IppaOptions o;
  o.mu = 0.5;
  o.epsilon = 0.1;
  o.deltas = constant_delta(0.06);  // gradient 0.12 > epsilon at the optimum, and delta > mu eps
  o.budget = 5;
  auto r = ippa_run(p, scalar(0.0), o, noisy);
  CHECK(r.status == RunStatus::budget_exhausted);
}

TEST_CASE("budget exhaustion returns the iterate with the smallest gradient") {
  auto p = make_univariate_holder(1.0, 1.0);
  ExactProxSolver exact;
  IppaOptions o;
  o.mu = 1.0;
  o.epsilon = 1e-9;
  o.budget = 2;
  auto r = ippa_run(p, scalar(10.0), o, exact);
  CHECK(r.status == RunStatus::budget_exhausted);
  CHECK(r.iterations == 2);
  CHECK(r.grad_norm == doctest::Approx(1.0));
}

TEST_CASE("argument errors") {
  auto p = make_univariate_holder(1.0, 1.0);
  ExactProxSolver exact;
  IppaOptions o;
  o.mu = 0.0;
  CHECK_THROWS_AS(ippa_run(p, scalar(1.0), o, exact), ArgumentError);
  o.mu = 1.0;
  o.epsilon = 0.0;
  CHECK_THROWS_AS(ippa_run(p, scalar(1.0), o, exact), ArgumentError);
  o.epsilon = 1.0;
  CHECK_THROWS_AS(ippa_run(p, Vector::Zero(2), o, exact), ArgumentError);
  CHECK_THROWS_AS(geometric_delta(1.0, 1.5), ArgumentError);
  CHECK_THROWS_AS(delta_sequence({}), ArgumentError);
}

TEST_CASE("delta schedules") {
  auto c = constant_delta(0.3);
  CHECK(c(0) == 0.3);
  CHECK(c(100) == 0.3);
  auto g = geometric_delta(1.0, 0.5);
  CHECK(g(3) == 0.125);
  auto s = delta_sequence({0.5, 0.25});
  CHECK(s(0) == 0.5);
  CHECK(s(1) == 0.25);
  CHECK(s(7) == 0.25);
}

TEST_CASE("noise robustness on |x|") {
  auto p = make_univariate_holder(1.0, 1.0);
  GrowthModel g(1.0, 1.0);
  int k = ippa_noise_robustness(p, scalar(5.0), 1.0, 0.5, g);
  CHECK(k <= 10);
  CHECK(noise_robustness_bound(5.0, 1.0, 1.0, 0.5) == 10);
  CHECK(ippa_noise_robustness(p, scalar(5.0), 1.0, 0.0, g) == 5);
  CHECK(ippa_noise_robustness(p, scalar(0.3), 1.0, 0.5, g) == 0);
  CHECK_THROWS_AS(ippa_noise_robustness(p, scalar(5.0), 1.0, 1.0, g), ArgumentError);
  CHECK_THROWS_AS(ippa_noise_robustness(p, scalar(5.0), 1.0, 0.5, GrowthModel(2.0, 1.0)), ArgumentError);
}

TEST_CASE("finite termination of exact PPA on sigma |x|") {
  Gen g(41);
  ExactProxSolver exact;
  for (int trial = 0; trial < 20; ++trial) {
    double r0 = g.uniform(1.0, 100.0), mu = g.uniform(0.1, 10.0), s = g.uniform(0.1, 10.0);
    auto p = make_univariate_holder(1.0, s);
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-12;
    o.budget = 100000;
    auto r = ippa_run(p, scalar(g.coin() ? r0 : -r0), o, exact);
    CHECK(r.status == RunStatus::converged);
    CHECK(r.iterations == static_cast<int>(std::ceil(r0 / (mu * s))));
  }
}

TEST_CASE("sharp-growth distance bound with injected noise") {
  Gen g(42);
  InjectedNoiseSolver noisy;
  for (int trial = 0; trial < 200; ++trial) {
    double s = g.log_uniform(0.2, 5.0), mu = g.log_uniform(0.1, 5.0);
    auto p = make_univariate_holder(1.0, s);
    // nonincreasing noise below mu sigma
    std::vector<double> deltas;
    double d = g.uniform(0.0, 0.95) * mu * s;
    for (int i = 0; i < 60; ++i) {
      deltas.push_back(d);
      d *= g.uniform(0.7, 1.0);
    }
    bool far = trial % 2 == 0;
    double dist0 = far ? g.uniform(1.0, 20.0) * mu * s : g.uniform(0.0, 1.0) * mu * s;
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-300;
    o.budget = 59;
    o.deltas = delta_sequence(deltas);
    auto xs = iterates(p, dist0, o, noisy);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      double bound = sharp_growth_bound(dist0, mu, s, deltas, static_cast<int>(k));
      CHECK(std::abs(xs[k]) <= bound + 1e-10);
      if (far) {
        // the printed form, valid when dist0 >= mu sigma
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += mu * s - deltas[i];
        CHECK(std::abs(xs[k]) <= std::max(dist0 - sum, deltas[k - 1]) + 1e-10);
      }
    }
  }
}

TEST_CASE("quadratic-growth linear rate for exact PPA on x^2") {
  ExactProxSolver exact;
  auto p = make_univariate_holder(2.0, 2.0);  // F = x^2, sigma_F = 1
  for (double mu : {0.1, 1.0, 10.0}) {
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-300;
    o.budget = 50;
    auto xs = iterates(p, 3.0, o, exact);
    for (std::size_t k = 0; k < xs.size(); ++k)
      CHECK(std::abs(xs[k]) <= std::pow(1.0 + 2.0 * mu, -(static_cast<double>(k) - 4.0) / 4.0) * 3.0 + 1e-12);
  }
}

TEST_CASE("quadratic-growth bound with summable noise") {
  Gen g(43);
  InjectedNoiseSolver noisy;
  auto p = make_univariate_holder(2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    double mu = g.log_uniform(0.1, 10.0);
    std::vector<double> deltas;
    double d = g.log_uniform(1e-4, 1.0), q = g.uniform(0.3, 0.9), sum = 0.0;
    for (int i = 0; i < 51; ++i) {
      deltas.push_back(d);
      sum += d;
      d *= q;
    }
    double Gamma = sum * 1.01;
    double x0 = g.uniform(-5.0, 5.0);
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-300;
    o.budget = 50;
    o.deltas = delta_sequence(deltas);
    auto xs = iterates(p, x0, o, noisy);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      double b = quadratic_growth_bound(std::abs(x0), mu, 1.0, Gamma, deltas, static_cast<int>(k));
      CHECK(std::abs(xs[k]) <= b + 1e-12);
    }
  }
}

TEST_CASE("one-step distance recurrence with the Moreau envelope") {
  Gen g(44);
  InjectedNoiseSolver noisy;
  for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
    auto p = make_univariate_holder(gamma, 1.0);
    auto F = [&](double z) { return std::pow(std::abs(z), gamma) / gamma; };
    for (int trial = 0; trial < 50; ++trial) {
      double mu = g.log_uniform(0.1, 5.0), delta = g.log_uniform(1e-4, 0.5);
      double x0 = g.uniform(-5.0, 5.0);
      IppaOptions o;
      o.mu = mu;
      o.epsilon = 1e-300;
      o.budget = 15;
      o.deltas = constant_delta(delta);
      auto xs = iterates(p, x0, o, noisy);
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double d = std::abs(xs[k]);
        if (d == 0.0) continue;
        double Fmu = testsupport::moreau_envelope_1d(F, xs[k], mu);
        CHECK(std::abs(xs[k + 1]) <= d - mu * Fmu / d + delta + 1e-8);
      }
    }
  }
}

TEST_CASE("constant noise reaches a 4 delta / mu gradient plateau in time") {
  Gen g(45);
  InjectedNoiseSolver noisy;
  for (double gamma : {1.0, 2.0, 4.0}) {
    auto p = make_univariate_holder(gamma, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      double mu = g.log_uniform(0.1, 5.0), delta = g.log_uniform(1e-3, 0.5);
      double x0 = g.uniform(0.5, 10.0);
      int K = static_cast<int>(std::ceil(x0 / delta));
      double best = kInf, dist_at_best = kNaN;
      IppaOptions o;
      o.mu = mu;
      o.epsilon = 1e-300;
      o.budget = K;
      o.deltas = constant_delta(delta);
      o.observer = [&](const IppaIterate& it) {
        if (it.grad.norm() < best) {
          best = it.grad.norm();
          dist_at_best = std::abs(it.x(0));
        }
      };
      ippa_run(p, scalar(x0), o, noisy);
      CHECK(best <= 4.0 * delta / mu);
      (void)dist_at_best;
    }
  }
}

TEST_CASE("certificate attached to the result bounds the true distance") {
  ExactProxSolver exact;
  auto p = make_univariate_holder(1.0, 1.0);
  IppaOptions o;
  o.mu = 0.7;
  o.epsilon = 1e-9;
  o.growth = GrowthModel(1.0, 1.0);
  auto r = ippa_run(p, scalar(4.2), o, exact);
  REQUIRE(!std::isnan(r.dist_bound));
  CHECK(std::abs(r.point(0)) <= r.dist_bound);
}

TEST_CASE("ppa iterations to a distance on x^2") {
  auto p = make_univariate_holder(2.0, 2.0);
  // x_k = 3^-k from 1 with mu = 1
  CHECK(ppa_iterations_to_distance(p, scalar(1.0), 1.0, 1.0 / 27.0 * (1 + 1e-12)) == 3);
  CHECK(ppa_iterations_to_distance(p, scalar(0.01), 1.0, 0.1) == 0);
}
