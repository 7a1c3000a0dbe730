#include "proxpoint/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "proxpoint/errors.hpp"
#include "proxpoint/ippa.hpp"
#include "proxpoint/problems.hpp"
#include "proxpoint/proxlib.hpp"
#include "proxpoint/rippa.hpp"

namespace proxpoint::bench {

namespace fs = std::filesystem;

Vector baseline_subgradient(const ProblemInstance& p, const Vector& x0, double step0, double decay,
                            int budget, RunMonitor& monitor) {
  if (!(step0 > 0.0)) throw ArgumentError("baseline_subgradient: step0 must be > 0");
  if (!(decay >= 0.0)) throw ArgumentError("baseline_subgradient: decay must be >= 0");
  if (budget < 0) throw ArgumentError("baseline_subgradient: budget must be >= 0");
  check_dimension(p, x0, "baseline_subgradient");
  Vector x = x0;
  if (monitor.evaluations() == 0) monitor.record_initial(x);
  for (int k = 0; k < budget; ++k) {
    double step = step0 / (1.0 + decay * k);
    Vector g = p.f_subgrad(x);
    x = prox(p.psi, x - step * g, step);
    if (!x.allFinite()) throw NumericalError("baseline_subgradient: non-finite iterate at step " + std::to_string(k));
    monitor.on_evaluation(x, k + 1);
  }
  return x;
}

namespace {

Vector solve_cell(const ProblemInstance& p, const Vector& x0, const SolverSpec& s, RunMonitor& mon) {
  switch (s.kind) {
    case SolverKind::ripp_psgm: {
      RippPsgmOptions o;
      o.delta0 = s.delta0;
      o.mu0 = s.mu0;
      o.rho = s.rho;
      o.q = s.q;
      o.T = s.epochs;
      o.max_inner = s.max_inner;
      o.max_blocks = s.max_blocks;
      auto r = ripp_psgm_run(p, x0, o, mon);
      if (!s.postprocess) return r.x;
      double L = p.subgrad_bound;
      if (!std::isfinite(L)) throw ArgumentError("postprocess needs a finite subgradient bound");
      double beta0 = r.delta_T * r.delta_T / (L * L);
      std::int64_t N = std::max<std::int64_t>(1, tolerant_ceil(2.0 * (L / r.delta_T) * (L / r.delta_T)));
      if (N > s.max_inner) throw BudgetError("postprocess: inner budget exceeds max_inner", r.x, N, s.max_inner);
      int K = static_cast<int>(std::max<std::int64_t>(1, tolerant_ceil(std::log(r.delta_T / s.epsilon))));
      return postprocess(p, r.x, beta0, r.mu_T, N, K, mon).point;
    }
    case SolverKind::rippa_exact: {
      if (!p.exact_prox) throw ArgumentError("rippa_exact: problem has no closed-form prox");
      RippaOptions o;
      o.mu0 = s.mu0;
      o.delta0 = std::isnan(s.delta0) ? 1.0 : s.delta0;
      o.rho = s.rho;
      o.epsilon = s.epsilon;
      o.max_epochs = s.epochs;
      o.ippa_budget = s.budget;
      o.growth = p.growth;
      ExactProxSolver inner;
      return rippa_run(p, x0, o, inner, mon).result.point;
    }
    case SolverKind::ippa: {
      PsgmInnerSolver::Options io;
      io.max_inner = s.max_inner;
      PsgmInnerSolver inner(io);
      IppaOptions o;
      o.mu = s.mu;
      o.deltas = geometric_delta(std::isnan(s.delta0) ? 0.1 * s.mu : s.delta0, s.delta_ratio);
      o.epsilon = s.epsilon;
      o.budget = s.budget;
      o.growth = p.growth;
      return ippa_run(p, x0, o, inner, mon).point;
    }
    case SolverKind::ppa_exact: {
      if (!p.exact_prox) throw ArgumentError("ppa_exact: problem has no closed-form prox");
      ExactProxSolver inner;
      IppaOptions o;
      o.mu = s.mu;
      o.epsilon = s.epsilon;
      o.budget = s.budget;
      o.growth = p.growth;
      return ippa_run(p, x0, o, inner, mon).point;
    }
    case SolverKind::baseline_subgradient:
      return baseline_subgradient(p, x0, s.step0, s.decay, s.budget, mon);
  }
  throw ContractError("solve_cell: unhandled solver kind");
}

}  // namespace

CellResult run_cell(const ProblemInstance& p, const Vector& x0, const SolverSpec& s, bool record_trace,
                    int trace_every) {
  CellResult c;
  c.solver = s.label;
  c.kind = s.kind;
  RunMonitor mon(p, record_trace ? &c.trace : nullptr, trace_every);
  Vector x = x0;
  try {
    if (s.kind != SolverKind::baseline_subgradient) mon.record_initial(x0);
    x = solve_cell(p, x0, s, mon);
  } catch (const BudgetError& e) {
    c.ok = false;
    c.error = std::string("budget: ") + e.what();
    if (e.best().size() == p.dim) x = e.best();
  } catch (const std::exception& e) {
    c.ok = false;
    c.error = e.what();
    if (mon.best_point().size() == p.dim) x = mon.best_point();
  }
  try {
    mon.finish(x);
  } catch (const std::exception& e) {
    c.ok = false;
    if (c.error.empty()) c.error = e.what();
  }
  c.final_point = x;
  c.total_evals = mon.evaluations();
  c.total_inner_iters = mon.evaluations();
  c.final_objective = evaluate_objective(p, x);
  c.final_obj_error = p.F_star ? c.final_objective - *p.F_star : kNaN;
  c.best_objective = std::min(mon.best_objective(), c.final_objective);
  c.wall_time_s = mon.elapsed();
  return c;
}

int resolve_threads(int configured) {
  if (const char* env = std::getenv("BENCH_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw ArgumentError(std::string("BENCH_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1, configured);
}

std::string sanitize_label(const std::string& s) {
  std::string out;
  for (char ch : s) {
    bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '=';
    char c = keep ? ch : '_';
    if (c == '_' && !out.empty() && out.back() == '_') continue;
    out.push_back(c);
  }
  return out.empty() ? "run" : out;
}

namespace {

// Long run used to estimate F* when no planted optimum exists.
SolverSpec reference_spec(const ExperimentConfig& cfg) {
  SolverSpec ref;
  ref.label = "reference";
  ref.kind = SolverKind::ripp_psgm;
  for (const auto& s : cfg.solvers) {
    if (s.kind == SolverKind::ripp_psgm) {
      ref = s;
      ref.label = "reference";
      ref.postprocess = false;
      break;
    }
  }
  // three extra epochs: roughly 2^(3 (q+1)) more evaluations and 2^(-3 rho) tolerance
  ref.epochs += 3;
  ref.max_inner = std::max<std::int64_t>(ref.max_inner, 100'000'000);
  return ref;
}

void assign_reference(ExperimentResult& out, std::vector<CellResult>& cells, const CellResult* ref,
                      double target) {
  if (!out.F_star) {
    if (!ref) return;
    double F = ref->best_objective;
    for (const auto& c : cells) {
      F = std::min(F, c.best_objective);
      for (const auto& r : c.trace.rows()) F = std::min(F, r.objective);
    }
    if (!std::isfinite(F)) return;
    out.F_star = F;
    out.F_star_source = "reference_run";
    for (auto& c : cells) {
      RunTrace fixed;
      for (auto r : c.trace.rows()) {
        r.obj_error = r.objective - F;
        fixed.record(r);
      }
      c.trace = std::move(fixed);
      c.final_obj_error = c.final_objective - F;
    }
  }
  for (auto& c : cells) {
    for (const auto& r : c.trace.rows()) {
      if (r.obj_error <= target) {
        c.evals_to_target = r.cum_subgrad_evals;
        break;
      }
    }
    if (c.trace.empty() && c.final_obj_error <= target) c.evals_to_target = c.total_evals;
  }
}

void write_cells(const ExperimentConfig& cfg, const ExperimentResult& res) {
  fs::create_directories(cfg.output_path);
  for (const auto& c : res.cells) {
    std::string stem = res.recipe + "__" + c.solver;
    {
      std::ofstream f(fs::path(cfg.output_path) / (stem + ".csv"));
      c.trace.write_csv(f);
    }
    std::ofstream m(fs::path(cfg.output_path) / (stem + ".meta"));
    m << "recipe=" << res.recipe << '\n'
      << "solver=" << c.solver << '\n'
      << "kind=" << to_string(c.kind) << '\n'
      << "status=" << (c.ok ? "ok" : "failed") << '\n';
    if (!c.ok) m << "error=" << c.error << '\n';
    m << "family=" << cfg.recipe.family << '\n'
      << "seed=" << cfg.recipe.seed << '\n'
      << "F_star=" << (res.F_star ? format_double(*res.F_star) : "") << '\n'
      << "F_star_source=" << res.F_star_source << '\n'
      << "target_error=" << format_double(cfg.target_error) << '\n'
      << "evals_to_target=" << (c.evals_to_target ? std::to_string(*c.evals_to_target) : "") << '\n'
      << "total_evals=" << c.total_evals << '\n'
      << "final_objective=" << format_double(c.final_objective) << '\n';
  }
}

void write_summary_file(const std::string& dir, const std::vector<ExperimentResult>& results) {
  fs::create_directories(dir);
  std::ofstream f(fs::path(dir) / "summary.csv");
  write_summary(f, summary_rows(results));
  std::ofstream ff(fs::path(dir) / "failures.csv");
  ff << "recipe,solver,error\n";
  for (const auto& r : results)
    for (const auto& c : r.cells)
      if (!c.ok) {
        std::string e = c.error;
        std::replace(e.begin(), e.end(), ',', ';');
        std::replace(e.begin(), e.end(), '\n', ' ');
        ff << r.recipe << ',' << c.solver << ',' << e << '\n';
      }
}

ExperimentResult run_one(const ExperimentConfig& cfg, const RunOptions& opts) {
  ProblemInstance p = make_problem(cfg.recipe);
  Vector x0 = Vector::Constant(p.dim, cfg.x0);
  ExperimentResult out;
  out.recipe = sanitize_label(cfg.name);
  out.F_star = p.F_star;
  out.F_star_source = p.F_star ? "planted" : "none";

  std::vector<SolverSpec> jobs = cfg.solvers;
  bool need_ref = !p.F_star;
  if (need_ref) jobs.push_back(reference_spec(cfg));

  std::vector<CellResult> cells(jobs.size());
  int threads = opts.threads > 0 ? opts.threads : resolve_threads(cfg.parallel);
  threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      cells[i] = run_cell(p, x0, jobs[i], opts.record_traces, cfg.trace_every);
      cells[i].recipe = out.recipe;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::optional<CellResult> ref;
  if (need_ref) {
    ref = std::move(cells.back());
    cells.pop_back();
  }
  assign_reference(out, cells, ref ? &*ref : nullptr, cfg.target_error);
  out.cells = std::move(cells);
  if (opts.write_files) {
    write_cells(cfg, out);
    std::ofstream pf(fs::path(cfg.output_path) / (out.recipe + ".problem"));
    write_problem(pf, p);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (cfg.solvers.empty()) throw ArgumentError("run_experiment: no solvers configured");
  if (!(cfg.target_error > 0.0)) throw ArgumentError("run_experiment: target_error must be > 0");
  ExperimentResult r = run_one(cfg, opts);
  if (opts.write_files) write_summary_file(cfg.output_path, {r});
  return r;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg, const std::vector<std::string>& params,
                                        const std::vector<std::string>& values, const RunOptions& opts) {
  if (params.empty()) throw ArgumentError("run_sweep: no parameter given");
  if (values.empty()) throw ArgumentError("run_sweep: no values given");
  std::vector<ExperimentResult> all;
  for (const auto& v : values) {
    ExperimentConfig c = cfg;
    std::string label = cfg.name;
    for (const auto& prm : params) {
      apply_override(c, prm, v);
      auto dot = prm.rfind('.');
      label += "-" + prm.substr(dot + 1) + "=" + v;
    }
    c.name = label;
    all.push_back(run_one(c, opts));
  }
  if (opts.write_files) write_summary_file(cfg.output_path, all);
  return all;
}

}  // namespace proxpoint::bench
