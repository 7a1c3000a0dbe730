#include "proxpoint/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "proxpoint/trace.hpp"

namespace proxpoint::bench {

ConfigError::ConfigError(const std::string& source, int line, const std::string& field,
                         const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                         (field.empty() ? msg : "field '" + field + "': " + msg)),
      line_(line),
      field_(field) {}

const char* to_string(SolverKind k) {
  switch (k) {
    case SolverKind::ripp_psgm: return "ripp_psgm";
    case SolverKind::rippa_exact: return "rippa_exact";
    case SolverKind::ippa: return "ippa";
    case SolverKind::ppa_exact: return "ppa_exact";
    case SolverKind::baseline_subgradient: return "baseline_subgradient";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Ctx {
  const std::string& source;
  int line;
  const std::string& key;
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(source, line, key, msg); }
};

double as_real(const Ctx& c, const std::string& v) {
  if (v == "inf") return kInf;
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  c.fail("expected a real number, got '" + v + "'");
}

std::int64_t as_int(const Ctx& c, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long d = std::stoll(v, &pos);
    if (pos == v.size()) return d;
    // allow 1e6 style integers
    double r = std::stod(v, &pos);
    if (pos == v.size() && r == std::floor(r) && std::abs(r) < 9e18) return static_cast<std::int64_t>(r);
  } catch (const std::exception&) {
  }
  c.fail("expected an integer, got '" + v + "'");
}

bool as_bool(const Ctx& c, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  c.fail("expected true or false, got '" + v + "'");
}

double positive(const Ctx& c, double v) {
  if (!(v > 0.0)) c.fail("must be > 0");
  return v;
}

void set_experiment(ExperimentConfig& cfg, const Ctx& c, const std::string& k, const std::string& v) {
  if (k == "name") cfg.name = v;
  else if (k == "target_error") cfg.target_error = positive(c, as_real(c, v));
  else if (k == "output") cfg.output_path = v;
  else if (k == "parallel") {
    cfg.parallel = static_cast<int>(as_int(c, v));
    if (cfg.parallel < 1) c.fail("must be >= 1");
  } else if (k == "trace_every") {
    cfg.trace_every = static_cast<int>(as_int(c, v));
    if (cfg.trace_every < 1) c.fail("must be >= 1");
  } else if (k == "x0") cfg.x0 = as_real(c, v);
  else c.fail("unknown key in [experiment]");
}

void set_problem(ProblemRecipe& r, const Ctx& c, const std::string& k, const std::string& v) {
  if (k == "family") {
    static const char* known[] = {"l1_ls", "graph_svm", "sparse_l1_svm", "matrix_completion",
                                  "univariate_holder"};
    bool ok = false;
    for (auto* f : known) ok = ok || v == f;
    if (!ok) c.fail("unknown family '" + v + "'");
    r.family = v;
  } else if (k == "m" || k == "rows") {
    r.m = static_cast<int>(as_int(c, v));
    if (r.m < 1) c.fail("must be >= 1");
  } else if (k == "n" || k == "cols") {
    r.n = static_cast<int>(as_int(c, v));
    if (r.n < 1) c.fail("must be >= 1");
  } else if (k == "n_obs") {
    r.n_obs = static_cast<int>(as_int(c, v));
    if (r.n_obs < 1) c.fail("must be >= 1");
  } else if (k == "tau") r.tau = as_real(c, v);
  else if (k == "gamma") {
    r.gamma = as_real(c, v);
    if (!(r.gamma >= 1.0)) c.fail("must be >= 1");
  } else if (k == "sigma") r.sigma = positive(c, as_real(c, v));
  else if (k == "graph") {
    if (v == "identity") r.graph = GraphKind::identity;
    else if (v == "random_graph") r.graph = GraphKind::random_graph;
    else c.fail("expected identity or random_graph");
  } else if (k == "planted") r.planted = as_bool(c, v);
  else if (k == "nuclear_in_f") r.nuclear_in_f = as_bool(c, v);
  else if (k == "seed") r.seed = static_cast<std::uint64_t>(as_int(c, v));
  else c.fail("unknown key in [problem]");
}

void set_solver(SolverSpec& s, const Ctx& c, const std::string& k, const std::string& v) {
  if (k == "kind") {
    if (v == "ripp_psgm") s.kind = SolverKind::ripp_psgm;
    else if (v == "rippa_exact") s.kind = SolverKind::rippa_exact;
    else if (v == "ippa") s.kind = SolverKind::ippa;
    else if (v == "ppa_exact") s.kind = SolverKind::ppa_exact;
    else if (v == "baseline_subgradient") s.kind = SolverKind::baseline_subgradient;
    else c.fail("unknown solver kind '" + v + "'");
  } else if (k == "mu0") s.mu0 = positive(c, as_real(c, v));
  else if (k == "delta0") s.delta0 = positive(c, as_real(c, v));
  else if (k == "rho") {
    s.rho = as_real(c, v);
    if (!(s.rho > 1.0)) c.fail("must be > 1");
  } else if (k == "q") {
    s.q = as_real(c, v);
    if (!(s.q >= 0.0)) c.fail("must be >= 0");
  } else if (k == "epochs") {
    s.epochs = static_cast<int>(as_int(c, v));
    if (s.epochs < 1) c.fail("must be >= 1");
  } else if (k == "max_blocks") {
    s.max_blocks = static_cast<int>(as_int(c, v));
    if (s.max_blocks < 2) c.fail("must be >= 2");
  } else if (k == "postprocess") s.postprocess = as_bool(c, v);
  else if (k == "mu") s.mu = positive(c, as_real(c, v));
  else if (k == "delta_ratio") {
    s.delta_ratio = as_real(c, v);
    if (!(s.delta_ratio > 0.0 && s.delta_ratio <= 1.0)) c.fail("must lie in (0, 1]");
  } else if (k == "epsilon") s.epsilon = positive(c, as_real(c, v));
  else if (k == "budget") {
    s.budget = static_cast<int>(as_int(c, v));
    if (s.budget < 0) c.fail("must be >= 0");
  } else if (k == "max_inner") {
    s.max_inner = as_int(c, v);
    if (s.max_inner < 1) c.fail("must be >= 1");
  } else if (k == "step0") s.step0 = positive(c, as_real(c, v));
  else if (k == "decay") {
    s.decay = as_real(c, v);
    if (!(s.decay >= 0.0)) c.fail("must be >= 0");
  } else c.fail("unknown key in solver section");
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) return false;
  return true;
}

SolverSpec* find_solver(ExperimentConfig& cfg, const std::string& label) {
  for (auto& s : cfg.solvers)
    if (s.label == label) return &s;
  return nullptr;
}

void assign(ExperimentConfig& cfg, const std::string& section, const std::string& solver_label,
            const Ctx& c, const std::string& k, const std::string& v) {
  if (section == "experiment") set_experiment(cfg, c, k, v);
  else if (section == "problem") set_problem(cfg.recipe, c, k, v);
  else {
    SolverSpec* s = find_solver(cfg, solver_label);
    if (!s) c.fail("no solver named '" + solver_label + "'");
    set_solver(*s, c, k, v);
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  ExperimentConfig cfg;
  std::string section;
  std::string solver_label;
  std::string line;
  int lineno = 0;
  const std::string none;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, lineno, "", "unterminated section header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "experiment" || name == "problem") {
        section = name;
      } else if (name.rfind("solver.", 0) == 0) {
        std::string label = name.substr(7);
        if (!valid_label(label)) throw ConfigError(source, lineno, "", "bad solver label '" + label + "'");
        if (find_solver(cfg, label)) throw ConfigError(source, lineno, "", "duplicate solver '" + label + "'");
        section = "solver";
        solver_label = label;
        SolverSpec s;
        s.label = label;
        cfg.solvers.push_back(s);
      } else {
        throw ConfigError(source, lineno, "", "unknown section [" + name + "]");
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, lineno, "", "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(source, lineno, key, "key outside any section");
    if (val.empty()) throw ConfigError(source, lineno, key, "empty value");
    Ctx c{source, lineno, key};
    assign(cfg, section, solver_label, c, key, val);
  }
  if (cfg.solvers.empty()) throw ConfigError(source, lineno, "", "no [solver.<label>] section");
  if (cfg.recipe.family == "matrix_completion" && cfg.recipe.n_obs > cfg.recipe.m * cfg.recipe.n)
    throw ConfigError(source, lineno, "n_obs", "exceeds rows * cols");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path, 0, "", "cannot open file");
  return parse_config(f, path);
}

void apply_override(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value) {
  const std::string src = "--param";
  auto dot = dotted_key.find('.');
  if (dot == std::string::npos) throw ConfigError(src, 0, dotted_key, "expected <section>.<key>");
  std::string section = dotted_key.substr(0, dot);
  std::string rest = dotted_key.substr(dot + 1);
  std::string label;
  if (section == "solver") {
    auto d2 = rest.find('.');
    if (d2 == std::string::npos) throw ConfigError(src, 0, dotted_key, "expected solver.<label>.<key>");
    label = rest.substr(0, d2);
    rest = rest.substr(d2 + 1);
  } else if (section != "experiment" && section != "problem") {
    throw ConfigError(src, 0, dotted_key, "unknown section '" + section + "'");
  }
  Ctx c{src, 0, dotted_key};
  assign(cfg, section, label, c, rest, value);
}

std::vector<std::string> parse_value_list(const std::string& text) {
  std::vector<std::string> out;
  const std::string src = "--values";
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError(src, 0, text, "range must be start:stop:step");
    const std::string k = "range";
    Ctx c{src, 0, k};
    double a = as_real(c, parts[0]), b = as_real(c, parts[1]), st = as_real(c, parts[2]);
    if (!(st > 0.0) || b < a) throw ConfigError(src, 0, text, "need step > 0 and stop >= start");
    bool integral = parts[0].find_first_of(".eE") == std::string::npos &&
                    parts[2].find_first_of(".eE") == std::string::npos;
    long count = static_cast<long>(std::floor((b - a) / st + 1e-9));
    for (long i = 0; i <= count; ++i) {
      double v = a + static_cast<double>(i) * st;
      if (integral) {
        out.push_back(std::to_string(static_cast<long long>(std::llround(v))));
      } else {
        // round to the step's decimal resolution so labels stay short
        std::ostringstream os;
        os.precision(12);
        os << std::round(v * 1e12) / 1e12;
        out.push_back(os.str());
      }
    }
  } else {
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ',')) {
      p = trim(p);
      if (p.empty()) throw ConfigError(src, 0, text, "empty entry in value list");
      out.push_back(p);
    }
  }
  if (out.empty()) throw ConfigError(src, 0, text, "no values");
  return out;
}

}  // namespace proxpoint::bench
