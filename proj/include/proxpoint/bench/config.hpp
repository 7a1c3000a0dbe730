#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "proxpoint/problems.hpp"

namespace proxpoint::bench {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field, const std::string& msg);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class SolverKind { ripp_psgm, rippa_exact, ippa, ppa_exact, baseline_subgradient };

const char* to_string(SolverKind k);

struct SolverSpec {
  std::string label;
  SolverKind kind = SolverKind::ripp_psgm;
  // ripp_psgm / rippa_exact
  double mu0 = 0.1;
  double delta0 = kNaN;  // NaN: 2 L_f
  double rho = 1.005;
  double q = kNaN;       // NaN: 2 rho - 1
  int epochs = 9;
  int max_blocks = 10000;
  bool postprocess = false;
  // ippa / ppa_exact / rippa_exact
  double mu = 1.0;
  double delta_ratio = 0.5;
  double epsilon = 1e-6;
  int budget = 1000;  // outer iterations (ippa, ppa_exact, rippa_exact per epoch) or evaluations (baseline)
  std::int64_t max_inner = 10'000'000;
  // baseline_subgradient
  double step0 = 0.01;
  double decay = 0.01;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ProblemRecipe recipe;
  std::vector<SolverSpec> solvers;
  double target_error = 0.5;
  std::string output_path = "bench_out";
  int parallel = 1;
  int trace_every = 1;
  double x0 = 0.0;  // every coordinate of the starting point
};

ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Sets "<section>.<key>" (e.g. problem.m or solver.ripp.rho) as if it appeared in the file.
void apply_override(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value);

// "a,b,c" or "start:stop:step" (inclusive).
std::vector<std::string> parse_value_list(const std::string& text);

}  // namespace proxpoint::bench
