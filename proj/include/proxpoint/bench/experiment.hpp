#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxpoint/bench/config.hpp"
#include "proxpoint/trace.hpp"

namespace proxpoint::bench {

// Projected (or proximal, for non-indicator psi) subgradient method with
// step_k = step0 / (1 + decay k).  Records the initial row, then one
// evaluation per step.
Vector baseline_subgradient(const ProblemInstance& p, const Vector& x0, double step0, double decay,
                            int budget, RunMonitor& monitor);

struct CellResult {
  std::string recipe;
  std::string solver;
  SolverKind kind = SolverKind::ripp_psgm;
  bool ok = true;
  std::string error;
  std::int64_t total_inner_iters = 0;
  std::int64_t total_evals = 0;
  double final_objective = kNaN;
  double final_obj_error = kNaN;
  double best_objective = kNaN;
  double wall_time_s = 0.0;
  std::optional<std::int64_t> evals_to_target;
  Vector final_point;
  RunTrace trace;
};

struct ExperimentResult {
  std::string recipe;
  std::optional<double> F_star;
  std::string F_star_source;  // planted, reference_run or none
  std::vector<CellResult> cells;
};

struct RunOptions {
  bool record_traces = true;  // off: only totals and the final point are kept
  bool write_files = true;    // traces, .meta sidecars, summary.csv under output_path
  int threads = 0;            // 0: BENCH_THREADS if set, else cfg.parallel
};

// Runs one solver from x0 on p.  Failures are caught and reported in the result.
CellResult run_cell(const ProblemInstance& p, const Vector& x0, const SolverSpec& s, bool record_trace,
                    int trace_every);

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

// One experiment per value, all params set to that value; recipe labels are
// "<name>-<param>=<value>".  Files land in cfg.output_path with one summary.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg, const std::vector<std::string>& params,
                                        const std::vector<std::string>& values, const RunOptions& opts = {});

struct SummaryRow {
  std::string recipe;
  std::string solver;
  std::int64_t total_inner_iters = 0;
  std::int64_t total_evals = 0;
  double final_obj_error = kNaN;
  double wall_time_s = 0.0;
};

inline constexpr const char* kSummaryHeader =
    "recipe,solver,total_inner_iters,total_evals,final_obj_error,wall_time_s";

std::vector<SummaryRow> summary_rows(const std::vector<ExperimentResult>& results);
void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows, bool include_wall_time = true);
std::vector<SummaryRow> read_summary(std::istream& is);

// Rebuilds summary rows from the "<recipe>__<solver>.csv" traces in dir,
// sorted by file name.
std::vector<SummaryRow> summarize_directory(const std::string& dir);

std::string sanitize_label(const std::string& s);

int resolve_threads(int configured);

}  // namespace proxpoint::bench
