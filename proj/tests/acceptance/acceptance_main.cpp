// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "proxpoint/bench/experiment.hpp"
#include "proxpoint/envelope.hpp"
#include "proxpoint/ippa.hpp"
#include "proxpoint/problems.hpp"
#include "proxpoint/psgm.hpp"
#include "proxpoint/rates.hpp"
#include "proxpoint/rippa.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"
#include "support/quadratic.hpp"

using namespace proxpoint;
using testsupport::Gen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Vector scalar(double v) { return Vector::Constant(1, v); }

bool within_rel(double v, double bound) { return v <= bound + 1e-12 * std::max(1.0, std::abs(bound)); }

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * (i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ra = ranks(a), rb = ranks(b);
  double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
  double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome finite_termination() {
  Gen g(1001);
  ExactProxSolver exact;
  int bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    double r0 = g.uniform(1.0, 100.0), mu = g.uniform(0.1, 10.0), s = g.uniform(0.1, 10.0);
    auto p = make_univariate_holder(1.0, s);
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-12;
    o.budget = 100000;
    auto r = ippa_run(p, scalar(r0), o, exact);
    int expect = static_cast<int>(std::ceil(r0 / (mu * s)));
    if (r.status != RunStatus::converged || r.iterations != expect) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/20 counts off"};
}

Outcome noise_robustness() {
  int bad = 0;
  for (int seed = 0; seed < 20; ++seed) {
    Gen g(2000 + seed);
    double mu = g.log_uniform(0.1, 10.0), sigma = 1.0;
    double x0 = g.uniform(-100.0, 100.0);
    double delta = 0.5 * mu * sigma;
    auto p = make_univariate_holder(1.0, sigma);
    int limit = static_cast<int>(std::ceil(std::abs(x0) / (mu * sigma - delta)));
    int k = ippa_noise_robustness(p, scalar(x0), mu, delta, GrowthModel(1.0, sigma), limit + 10);
    if (k < 0 || k > limit) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/20 violations"};
}

Outcome quadratic_linear_rate() {
  ExactProxSolver exact;
  auto p = make_univariate_holder(2.0, 2.0);  // x^2
  int bad = 0;
  std::size_t checked = 0;
  for (double mu : {0.1, 1.0, 10.0}) {
    std::vector<double> xs;
    IppaOptions o;
    o.mu = mu;
    o.epsilon = 1e-300;
    o.budget = 60;
    o.observer = [&](const IppaIterate& it) { xs.push_back(std::abs(it.x(0))); };
    ippa_run(p, scalar(3.0), o, exact);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      ++checked;
      if (xs[k] > std::pow(1.0 + 2.0 * mu, -(static_cast<double>(k) - 4.0) / 4.0) * 3.0 + 1e-12) ++bad;
    }
  }
  return {bad == 0 && checked == 3 * 61, std::to_string(bad) + " of " + std::to_string(checked) + " iterates above"};
}

Outcome gamma4_exponent() {
  auto p = make_univariate_holder(4.0, 1.0);  // |x|^4 / 4
  std::vector<double> lx, ly;
  std::ostringstream os;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    auto k = ppa_iterations_to_distance(p, scalar(1.0), 1.0, eps);
    lx.push_back(std::log(1.0 / eps));
    ly.push_back(std::log(static_cast<double>(k)));
    os << k << " ";
  }
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / 3, my = std::accumulate(ly.begin(), ly.end(), 0.0) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  double slope = sxy / sxx;
  os << "iterations, slope " << slope;
  return {std::abs(slope - 2.0) <= 0.3, os.str()};
}

Outcome envelope_growth() {
  int bad = 0;
  double worst = kInf;
  for (double gm : {1.0, 1.5, 2.0, 3.0}) {
    auto F = [gm](double z) { return std::pow(std::abs(z), gm); };
    GrowthModel g(gm, 1.0);
    for (double mu : {0.1, 1.0, 10.0})
      for (int i = 0; i <= 200; ++i) {
        double x = -5.0 + 10.0 * i / 200.0;
        double gap = testsupport::moreau_envelope_1d(F, x, mu) - envelope_lower_bound(g, mu, std::abs(x));
        worst = std::min(worst, gap);
        if (gap < -1e-8) ++bad;
      }
  }
  std::ostringstream os;
  os << bad << " of 2412 points below, min gap " << worst;
  return {bad == 0, os.str()};
}

Outcome recurrence_dominance() {
  Gen g(3001);
  long bad = 0;
  auto draw = [&]() {
    RecurrenceSpec s;
    s.alpha = g.log_uniform(1e-2, 1.0);
    s.beta = g.uniform(0.01, 0.99);
    s.rho_exp = g.coin() ? g.uniform(0.2, 1.0) : g.uniform(1.0, 3.0);
    s.r0 = g.log_uniform(1e-2, 10.0);
    return s;
  };
  // Theorem-6 style rate bounds
  for (int trial = 0; trial < 1000; ++trial) {
    auto s = draw();
    for (int k = 0; k <= 100; ++k)
      if (!within_rel(iterate_h(s, k), bound_h(s, k))) ++bad;
  }
  // perturbed recursion
  for (int trial = 0; trial < 1000; ++trial) {
    auto s = draw();
    double d = g.log_uniform(1e-6, 0.5);
    for (int i = 0; i < 60; ++i) {
      s.noise.push_back(d * g.uniform(0.0, 1.0));
      d *= g.uniform(0.5, 1.0);
    }
    double r = s.r0;
    for (int k = 0; k <= 60; ++k) {
      if (!within_rel(r, perturbed_bound(s, k))) ++bad;
      if (k < 60) r = std::max(0.0, h_step(s, r) + s.noise[k]);
    }
  }
  // forced linear sequences
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a, b;
    double beta = g.log_uniform(1e-4, 1.0), sum = 0.0;
    for (int i = 0; i < 50; ++i) {
      a.push_back(g.uniform(0.0, 0.95));
      b.push_back(beta);
      sum += beta;
      beta *= g.uniform(0.3, 1.0);
    }
    double u0 = g.uniform(0.0, 10.0), u = u0, ac = a[0];
    std::vector<double> ua;
    for (int k = 0; k <= 50; ++k) {
      if (!within_rel(u, sequence_bound(u0, a, b, sum, k))) ++bad;
      if (k < 50) u = a[k] * u + b[k];
    }
    u = u0;
    for (int k = 0; k <= 50; ++k) {
      if (!within_rel(u, sequence_bound_constant(u0, ac, b, sum, k))) ++bad;
      if (k < 50) u = ac * u + b[k];
    }
  }
  // max identity, exact
  long mismatch = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto v = g.sorted_desc(g.integer(0, 40), 5.0);
    auto [lhs, rhs] = max_identity<double>(v);
    double brute = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = v.size(); j-- > i;) s += v[j];
      brute = std::max(brute, s);
    }
    if (lhs != rhs || lhs != brute) ++mismatch;
    std::vector<long long> iv;
    for (double x : v) iv.push_back(std::llround(std::floor(100.0 * x)));
    auto [il, ir] = max_identity<long long>(iv);
    if (il != ir) ++mismatch;
  }
  return {bad == 0 && mismatch == 0,
          std::to_string(bad) + " bound violations, " + std::to_string(mismatch) + " identity mismatches"};
}

Outcome psgm_budgets() {
  Gen g(4001);
  int bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = g.integer(1, 8);
    auto q = testsupport::random_quadratic(g, n);
    auto p = testsupport::quadratic_problem(q);
    double mu = g.log_uniform(0.01, 3.0), delta = g.log_uniform(1e-8, 1e-1);
    double alpha = inner_stepsize_bound(mu, delta, 1.0, q.L);
    Vector x = g.vector(n, 3.0), z0 = g.vector(n, 3.0);
    Vector zs = q.prox(x, mu);
    auto b = budget_for_delta(mu, alpha, (z0 - zs).norm(), delta);
    Vector z = psgm_run(p, z0, x, alpha, mu, b.N);
    if (!((z - zs).norm() <= delta)) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/500 outside delta"};
}

Outcome epoch_boundary() {
  Gen g(5001);
  int bad = 0, boundaries = 0;
  auto p = make_univariate_holder(1.0, 1.0);
  for (int cfg = 0; cfg < 10; ++cfg) {
    ExactProxSolver exact;
    RunMonitor m(p);
    RippaOptions o;
    o.mu0 = g.log_uniform(0.05, 2.0);
    o.delta0 = g.log_uniform(0.05, 2.0);
    o.rho = g.uniform(1.1, 3.0);
    o.epsilon = 1e-10;
    o.max_epochs = 12;
    auto r = rippa_run(p, scalar(g.uniform(-50.0, 50.0)), o, exact, m);
    for (const auto& e : r.epochs) {
      ++boundaries;
      double gn = std::abs(e.x_exit(0) - p.exact_prox(e.x_exit, e.state.mu)(0)) / e.state.mu;
      if (gn > 6.0 * e.state.delta_grad) ++bad;
    }
  }
  return {bad == 0 && boundaries > 0,
          std::to_string(bad) + " of " + std::to_string(boundaries) + " boundaries above 6 delta_grad"};
}

bench::ExperimentConfig l1ls_config() {
  bench::ExperimentConfig cfg;
  cfg.name = "l1ls";
  cfg.recipe.family = "l1_ls";
  cfg.recipe.m = 50;
  cfg.recipe.n = 20;
  cfg.recipe.planted = true;
  cfg.recipe.seed = 7;
  bench::SolverSpec s;
  s.label = "ripp";
  s.kind = bench::SolverKind::ripp_psgm;
  s.mu0 = 0.1;
  s.epochs = 9;
  cfg.solvers.push_back(s);
  return cfg;
}

Outcome rho_sweep() {
  auto cfg = l1ls_config();
  bench::RunOptions o;
  o.record_traces = false;
  o.write_files = false;
  auto values = bench::parse_value_list("1.005:1.1:0.005");
  auto rs = bench::run_sweep(cfg, {"solver.ripp.rho"}, values, o);
  std::vector<double> rho, iters;
  bool all_ok = true;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    rho.push_back(std::stod(values[i]));
    iters.push_back(static_cast<double>(rs[i].cells[0].total_inner_iters));
    all_ok = all_ok && rs[i].cells[0].ok;
  }
  double sp = spearman(rho, iters);
  std::ostringstream os;
  os << values.size() << " values, inner iterations " << iters.front() << " .. " << iters.back() << ", Spearman "
     << sp;
  return {all_ok && values.size() == 20 && sp > 0.8, os.str()};
}

Outcome svm_comparison() {
  std::ostringstream os;
  bool pass = true;
  for (int seed = 1; seed <= 5; ++seed) {
    bench::ExperimentConfig cfg;
    cfg.name = "svm";
    cfg.recipe.family = "sparse_l1_svm";
    cfg.recipe.m = 100;
    cfg.recipe.n = 512;
    cfg.recipe.tau = 0.4;
    cfg.recipe.planted = true;
    cfg.recipe.seed = static_cast<std::uint64_t>(seed);
    cfg.target_error = 0.5;
    cfg.trace_every = 1;
    bench::SolverSpec r;
    r.label = "ripp";
    r.kind = bench::SolverKind::ripp_psgm;
    r.mu0 = 0.1;
    r.rho = 1.005;
    r.epochs = 6;
    bench::SolverSpec b;
    b.label = "subgrad";
    b.kind = bench::SolverKind::baseline_subgradient;
    b.step0 = 0.05;
    b.decay = 0.01;
    b.budget = 20000;
    cfg.solvers = {r, b};
    bench::RunOptions o;
    o.write_files = false;
    auto res = bench::run_experiment(cfg, o);
    const auto& cr = res.cells[0];
    const auto& cb = res.cells[1];
    bool ok = cr.ok && cr.evals_to_target.has_value() &&
              (!cb.evals_to_target || *cr.evals_to_target <= *cb.evals_to_target);
    pass = pass && ok;
    os << "seed " << seed << ": " << (cr.evals_to_target ? std::to_string(*cr.evals_to_target) : "never") << " vs "
       << (cb.evals_to_target ? std::to_string(*cb.evals_to_target) : "never") << "; ";
  }
  return {pass, os.str()};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double time_limit_s;
};

}  // namespace

int main() {
  const double none = kInf;
  std::vector<Criterion> all = {
      {"finite termination of exact PPA under sharp growth", finite_termination, 1.0},
      {"noise robustness of IPPA", noise_robustness, none},
      {"linear rate of exact PPA under quadratic growth", quadratic_linear_rate, none},
      {"iteration exponent for gamma = 4", gamma4_exponent, 10.0},
      {"Moreau envelope growth lower bound", envelope_growth, none},
      {"recurrence oracle dominance", recurrence_dominance, none},
      {"PsGM certified budgets on quadratics", psgm_budgets, none},
      {"RIPPA epoch-boundary certificate", epoch_boundary, none},
      {"l1-LS rho sweep trend", rho_sweep, 60.0},
      {"sparse l1-SVM solver comparison", svm_comparison, none},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.time_limit_s) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, all.size());
  return failed == 0 ? 0 : 1;
}
