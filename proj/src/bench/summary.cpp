#include "proxpoint/bench/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "proxpoint/errors.hpp"

namespace proxpoint::bench {

namespace fs = std::filesystem;

std::vector<SummaryRow> summary_rows(const std::vector<ExperimentResult>& results) {
  std::vector<SummaryRow> rows;
  for (const auto& r : results) {
    for (const auto& c : r.cells) {
      SummaryRow s;
      s.recipe = r.recipe;
      s.solver = c.solver;
      s.total_inner_iters = c.total_inner_iters;
      s.total_evals = c.total_evals;
      // a failed cell keeps its counts but reports no error value
      s.final_obj_error = c.ok ? c.final_obj_error : kNaN;
      s.wall_time_s = c.wall_time_s;
      rows.push_back(s);
    }
  }
  return rows;
}

void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows, bool include_wall_time) {
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    os << r.recipe << ',' << r.solver << ',' << r.total_inner_iters << ',' << r.total_evals << ','
       << format_double(r.final_obj_error) << ',';
    if (include_wall_time) os << format_double(r.wall_time_s);
    os << '\n';
  }
}

std::vector<SummaryRow> read_summary(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ArgumentError("summary: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSummaryHeader) throw ArgumentError("summary: unexpected header '" + line + "'");
  std::vector<SummaryRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.push_back("");
    if (f.size() != 6) throw ArgumentError("summary: line " + std::to_string(lineno) + " has " +
                                           std::to_string(f.size()) + " fields");
    SummaryRow r;
    r.recipe = f[0];
    r.solver = f[1];
    r.total_inner_iters = std::stoll(f[2]);
    r.total_evals = std::stoll(f[3]);
    r.final_obj_error = f[4].empty() ? kNaN : std::stod(f[4]);
    r.wall_time_s = f[5].empty() ? kNaN : std::stod(f[5]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SummaryRow> summarize_directory(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ArgumentError("summarize: not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
    if (e.path().stem().string().find("__") == std::string::npos) continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SummaryRow> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    RunTrace t = RunTrace::read_csv(in);
    std::string stem = f.stem().string();
    auto sep = stem.find("__");
    SummaryRow r;
    r.recipe = stem.substr(0, sep);
    r.solver = stem.substr(sep + 2);
    if (!t.empty()) {
      r.total_evals = t.back().cum_subgrad_evals;
      r.total_inner_iters = r.total_evals;
      r.final_obj_error = t.back().obj_error;
      r.wall_time_s = t.back().wall_time_s;
    }
    fs::path meta = f;
    meta.replace_extension(".meta");
    std::ifstream m(meta);
    for (std::string line; std::getline(m, line);)
      if (line == "status=failed") r.final_obj_error = kNaN;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace proxpoint::bench
