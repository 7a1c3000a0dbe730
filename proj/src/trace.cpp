#include "proxpoint/trace.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "proxpoint/errors.hpp"

namespace proxpoint {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void RunTrace::record(TraceRow row) {
  if (!rows_.empty() && row.cum_subgrad_evals <= rows_.back().cum_subgrad_evals) {
    std::ostringstream os;
    os << "RunTrace: cum_subgrad_evals must strictly increase (" << rows_.back().cum_subgrad_evals
       << " then " << row.cum_subgrad_evals << ")";
    throw ContractError(os.str());
  }
  double prev = rows_.empty() ? kNaN : rows_.back().best_obj_error_so_far;
  double cur = row.obj_error;
  if (std::isnan(prev))
    row.best_obj_error_so_far = cur;
  else if (std::isnan(cur))
    row.best_obj_error_so_far = prev;
  else
    row.best_obj_error_so_far = std::min(prev, cur);
  rows_.push_back(row);
}

void RunTrace::write_csv(std::ostream& os, bool include_wall_time) const {
  os << kTraceHeader << '\n';
  for (const auto& r : rows_) {
    os << r.epoch << ',' << r.outer_iter << ',' << r.inner_iter << ',' << r.cum_subgrad_evals << ','
       << format_double(r.objective) << ',' << format_double(r.obj_error) << ','
       << format_double(r.dist_estimate) << ',' << format_double(r.best_obj_error_so_far) << ',';
    if (include_wall_time) os << format_double(r.wall_time_s);
    os << '\n';
  }
}

namespace {

double parse_field(const std::string& s) {
  if (s.empty()) return kNaN;
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw ArgumentError("trace csv: bad number '" + s + "'");
  return v;
}

}  // namespace

RunTrace RunTrace::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("trace csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw ArgumentError("trace csv: unexpected header '" + line + "'");
  RunTrace t;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    f.push_back(cur);
    if (f.size() != 9) throw ArgumentError("trace csv: line " + std::to_string(lineno) + " has " +
                                           std::to_string(f.size()) + " fields");
    try {
      TraceRow r;
      r.epoch = std::stoi(f[0]);
      r.outer_iter = std::stoi(f[1]);
      r.inner_iter = std::stoi(f[2]);
      r.cum_subgrad_evals = std::stoll(f[3]);
      r.objective = parse_field(f[4]);
      r.obj_error = parse_field(f[5]);
      r.dist_estimate = parse_field(f[6]);
      double best = parse_field(f[7]);
      r.wall_time_s = parse_field(f[8]);
      t.record(r);
      // keep the stored value; it was computed the same way when written
      t.rows_.back().best_obj_error_so_far = best;
    } catch (const std::logic_error& e) {
      throw ArgumentError("trace csv: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

RunMonitor::RunMonitor(const ProblemInstance& p, RunTrace* trace, int stride)
    : p_(p), trace_(trace), stride_(stride), start_(std::chrono::steady_clock::now()) {
  if (stride_ < 1) throw ArgumentError("RunMonitor: stride must be >= 1");
}

double RunMonitor::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void RunMonitor::write_row(const Vector& x, int inner_iter) {
  TraceRow r;
  r.epoch = epoch_;
  r.outer_iter = outer_;
  r.inner_iter = inner_iter;
  r.cum_subgrad_evals = evals_;
  r.objective = evaluate_objective(p_, x);
  r.obj_error = p_.F_star ? r.objective - *p_.F_star : kNaN;
  r.dist_estimate = distance_to_solutions(p_, x);
  if (std::isnan(r.dist_estimate)) r.dist_estimate = dist_hint_;
  r.wall_time_s = elapsed();
  if (r.objective < best_objective_) {
    best_objective_ = r.objective;
    best_point_ = x;
  }
  if (!std::isnan(r.obj_error)) {
    if (std::isnan(best_error_) || r.obj_error < best_error_) best_error_ = r.obj_error;
    if (target_ && !evals_to_target_ && r.obj_error <= *target_) evals_to_target_ = evals_;
  }
  last_recorded_ = evals_;
  if (trace_) trace_->record(r);
}

void RunMonitor::record_initial(const Vector& x0) {
  if (evals_ != 0) throw ContractError("RunMonitor: initial row after evaluations");
  write_row(x0, 0);
}

void RunMonitor::on_evaluation(const Vector& x, int inner_iter) {
  ++evals_;
  if (trace_ && evals_ % stride_ == 0) write_row(x, inner_iter);
}

void RunMonitor::add_evaluations(std::int64_t n, const Vector& x, int inner_iter) {
  if (n <= 0) return;
  evals_ += n;
  if (trace_) write_row(x, inner_iter);
}

void RunMonitor::finish(const Vector& x) {
  int inner = 0;
  if (trace_ && !trace_->empty() && trace_->back().cum_subgrad_evals == evals_) {
    inner = trace_->back().inner_iter;
    trace_->pop_back();
  }
  write_row(x, inner);
}

}  // namespace proxpoint
