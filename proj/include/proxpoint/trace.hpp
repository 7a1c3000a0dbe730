#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proxpoint/core.hpp"

namespace proxpoint {

struct TraceRow {
  int epoch = 0;
  int outer_iter = 0;
  int inner_iter = 0;
  std::int64_t cum_subgrad_evals = 0;
  double objective = kNaN;
  double obj_error = kNaN;
  double dist_estimate = kNaN;
  double best_obj_error_so_far = kNaN;
  double wall_time_s = 0.0;
};

inline constexpr const char* kTraceHeader =
    "epoch,outer_iter,inner_iter,cum_subgrad_evals,objective,obj_error,dist_estimate,"
    "best_obj_error_so_far,wall_time_s";

class RunTrace {
 public:
  // Appends a row.  cum_subgrad_evals must strictly increase; the running
  // best_obj_error_so_far is filled in here and any value passed is ignored.
  void record(TraceRow row);

  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const TraceRow& back() const { return rows_.back(); }
  void pop_back() { rows_.pop_back(); }

  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  // NaN fields are written empty.  With include_wall_time false the last
  // column is left empty so two runs can be compared byte for byte.
  void write_csv(std::ostream& os, bool include_wall_time = true) const;
  static RunTrace read_csv(std::istream& is);

 private:
  std::vector<TraceRow> rows_;
  std::map<std::string, std::string> metadata_;
};

std::string format_double(double v);

// Counts subgradient evaluations for one run and writes trace rows.
class RunMonitor {
 public:
  explicit RunMonitor(const ProblemInstance& p, RunTrace* trace = nullptr, int stride = 1);

  void set_epoch(int t) { epoch_ = t; }
  void set_outer(int k) { outer_ = k; }
  int epoch() const { return epoch_; }
  int outer() const { return outer_; }

  // Row at zero evaluations.
  void record_initial(const Vector& x0);
  // One subgradient evaluation has been spent and produced x.
  void on_evaluation(const Vector& x, int inner_iter);
  // Final row describes x; a row already written at the current count is replaced.
  void finish(const Vector& x);

  std::int64_t evaluations() const { return evals_; }
  double best_obj_error() const { return best_error_; }
  double best_objective() const { return best_objective_; }
  const Vector& best_point() const { return best_point_; }
  // First recorded evaluation count at which obj_error <= target, if any.
  void set_target(double target) { target_ = target; }
  std::optional<std::int64_t> evals_to_target() const { return evals_to_target_; }
  double elapsed() const;

  // Used as dist_estimate when the problem has no known solution.
  void set_distance_hint(double d) { dist_hint_ = d; }

  // Evaluations not tied to a trace (e.g. exact prox calls) still count.
  void add_evaluations(std::int64_t n, const Vector& x, int inner_iter);

 private:
  void write_row(const Vector& x, int inner_iter);

  const ProblemInstance& p_;
  RunTrace* trace_;
  int stride_;
  int epoch_ = 0;
  int outer_ = 0;
  std::int64_t evals_ = 0;
  std::int64_t last_recorded_ = -1;
  double best_error_ = kNaN;
  double best_objective_ = kInf;
  Vector best_point_;
  double dist_hint_ = kNaN;
  std::optional<double> target_;
  std::optional<std::int64_t> evals_to_target_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace proxpoint
