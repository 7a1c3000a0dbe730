#include "proxpoint/problems.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <map>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "proxpoint/errors.hpp"
#include "proxpoint/trace.hpp"

namespace proxpoint {

namespace {

using Rng = std::mt19937_64;

Matrix gaussian_matrix(int r, int c, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix A(r, c);
  // fill row by row so the stream order does not depend on storage order
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = nd(rng);
  return A;
}

Vector sign_vec(const Vector& v) {
  Vector s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) s(i) = v(i) > 0.0 ? 1.0 : (v(i) < 0.0 ? -1.0 : 0.0);
  return s;
}

void check_dims(int m, int n, const char* where) {
  if (m < 1 || n < 1) throw ArgumentError(std::string(where) + ": dimensions must be >= 1");
}

std::string tau_string(double tau) { return format_double(tau); }

// Sparse point with l1 norm `scale`, support chosen uniformly.
Vector sparse_point(int n, int support, double scale, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  Vector x = Vector::Zero(n);
  for (int k = 0; k < support; ++k) {
    double v = nd(rng);
    if (v == 0.0) v = 1.0;
    x(idx[k]) = v;
  }
  return x * (scale / x.lpNorm<1>());
}

double hinge_subgrad_bound(const Matrix& A) {
  double avg_row = A.rowwise().norm().sum() / static_cast<double>(A.rows());
  double via_norm = spectral_norm(A) / std::sqrt(static_cast<double>(A.rows()));
  return std::min(avg_row, via_norm);
}

}  // namespace

double spectral_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

// ---------------------------------------------------------------- l1_ls

ProblemInstance make_l1_ls_from(const Matrix& A, const Vector& b, double tau, const Vector* planted,
                                std::uint64_t seed) {
  if (A.rows() != b.size()) throw ArgumentError("make_l1_ls: A and b disagree in rows");
  if (!(tau > 0.0)) throw ArgumentError("make_l1_ls: tau must be > 0");
  auto data = std::make_shared<ProblemData>();
  data->family = "l1_ls";
  data->rows = static_cast<int>(A.rows());
  data->cols = static_cast<int>(A.cols());
  data->tau = tau;
  data->seed = seed;
  data->blocks.push_back({"A", A});
  data->blocks.push_back({"b", b});
  if (planted) data->blocks.push_back({"x_planted", *planted});

  auto Ap = std::make_shared<const Matrix>(A);
  auto bp = std::make_shared<const Vector>(b);
  ProblemInstance p;
  p.name = "l1_ls";
  p.dim = static_cast<int>(A.cols());
  p.f_value = [Ap, bp](const Vector& x) { return (*Ap * x - *bp).lpNorm<1>(); };
  p.f_subgrad = [Ap, bp](const Vector& x) -> Vector {
    return Ap->transpose() * sign_vec(*Ap * x - *bp);
  };
  p.psi = std::isinf(tau) ? ProxSpec::zero() : ProxSpec::l1_ball(tau);
  p.subgrad_bound = spectral_norm(A) * std::sqrt(static_cast<double>(A.rows()));
  if (planted) {
    p.F_star = 0.0;
    p.X_star_witness = *planted;
  }
  p.data = data;
  return p;
}

ProblemInstance make_l1_ls(int m, int n, double tau, bool planted, std::uint64_t seed) {
  check_dims(m, n, "make_l1_ls");
  Rng rng(seed);
  Matrix A = gaussian_matrix(m, n, rng);
  if (!planted) {
    Vector b = gaussian_matrix(m, 1, rng).col(0);
    return make_l1_ls_from(A, b, tau, nullptr, seed);
  }
  Vector xs;
  if (std::isinf(tau)) {
    xs = gaussian_matrix(n, 1, rng).col(0);
  } else {
    std::uniform_real_distribution<double> u(0.25, 0.9);
    int support = std::max(1, n / 4);
    xs = sparse_point(n, support, u(rng) * tau, rng);
  }
  Vector b = A * xs;
  return make_l1_ls_from(A, b, tau, &xs, seed);
}

// ------------------------------------------------------------------ SVMs

namespace {

struct HingeData {
  Matrix A;
  Vector y;
};

double hinge_value(const HingeData& d, const Vector& x) {
  Vector margin = d.y.cwiseProduct(d.A * x);
  return (1.0 - margin.array()).max(0.0).sum() / static_cast<double>(d.A.rows());
}

Vector hinge_subgrad(const HingeData& d, const Vector& x) {
  Vector margin = d.y.cwiseProduct(d.A * x);
  Vector w(margin.size());
  // margin exactly 1 contributes nothing
  for (Eigen::Index i = 0; i < margin.size(); ++i) w(i) = margin(i) < 1.0 ? -d.y(i) : 0.0;
  return d.A.transpose() * w / static_cast<double>(d.A.rows());
}

// Two Gaussian classes whose means differ on a sparse set of coordinates.
void two_class_data(int m, int n, Rng& rng, Matrix& A, Vector& y) {
  std::bernoulli_distribution coin(0.5);
  y.resize(m);
  for (int i = 0; i < m; ++i) y(i) = coin(rng) ? 1.0 : -1.0;
  int support = std::max(1, n / 10);
  Vector c = sparse_point(n, support, 1.0, rng);
  c *= 2.0 / c.norm();
  A = gaussian_matrix(m, n, rng);
  for (int i = 0; i < m; ++i) A.row(i) += y(i) * c.transpose();
}

Matrix random_graph(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double prob = std::min(1.0, 4.0 / n);
  Matrix M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double draw = u(rng);
      double w = u(rng);
      if (draw < prob) M(i, j) = M(j, i) = 0.5 + w;
    }
  return M;
}

}  // namespace

ProblemInstance make_graph_svm_from(const Matrix& A, const Vector& y, const Matrix& M, double tau,
                                    std::uint64_t seed) {
  if (A.rows() != y.size()) throw ArgumentError("make_graph_svm: A and y disagree in rows");
  if (M.cols() != A.cols()) throw ArgumentError("make_graph_svm: M must have as many columns as A");
  if (!(tau >= 0.0)) throw ArgumentError("make_graph_svm: tau must be >= 0");
  auto data = std::make_shared<ProblemData>();
  data->family = "graph_svm";
  data->rows = static_cast<int>(A.rows());
  data->cols = static_cast<int>(A.cols());
  data->tau = tau;
  data->seed = seed;
  data->blocks = {{"A", A}, {"y", y}, {"M", M}};

  auto hd = std::make_shared<const HingeData>(HingeData{A, y});
  auto Ms = std::make_shared<const Eigen::SparseMatrix<double>>(M.sparseView());
  ProblemInstance p;
  p.name = "graph_svm";
  p.dim = static_cast<int>(A.cols());
  p.f_value = [hd, Ms, tau](const Vector& x) {
    double v = hinge_value(*hd, x);
    if (tau > 0.0) v += tau * (*Ms * x).lpNorm<1>();
    return v;
  };
  p.f_subgrad = [hd, Ms, tau](const Vector& x) -> Vector {
    Vector g = hinge_subgrad(*hd, x);
    if (tau > 0.0) g += tau * (Ms->transpose() * sign_vec(*Ms * x));
    return g;
  };
  p.psi = ProxSpec::zero();
  p.subgrad_bound = hinge_subgrad_bound(A) + tau * M.norm() * std::sqrt(static_cast<double>(M.rows()));
  p.data = data;
  return p;
}

ProblemInstance make_graph_svm(int m, int n, double tau, GraphKind kind, std::uint64_t seed) {
  check_dims(m, n, "make_graph_svm");
  Rng rng(seed);
  Matrix A;
  Vector y;
  two_class_data(m, n, rng, A, y);
  Matrix M = kind == GraphKind::identity ? Matrix(Matrix::Identity(n, n)) : random_graph(n, rng);
  return make_graph_svm_from(A, y, M, tau, seed);
}

ProblemInstance make_sparse_l1_svm_from(const Matrix& A, const Vector& y, double tau,
                                        const Vector* planted, std::uint64_t seed) {
  if (A.rows() != y.size()) throw ArgumentError("make_sparse_l1_svm: A and y disagree in rows");
  if (!(tau > 0.0)) throw ArgumentError("make_sparse_l1_svm: tau must be > 0");
  auto data = std::make_shared<ProblemData>();
  data->family = "sparse_l1_svm";
  data->rows = static_cast<int>(A.rows());
  data->cols = static_cast<int>(A.cols());
  data->tau = tau;
  data->seed = seed;
  data->blocks = {{"A", A}, {"y", y}};
  if (planted) data->blocks.push_back({"x_planted", *planted});

  auto hd = std::make_shared<const HingeData>(HingeData{A, y});
  ProblemInstance p;
  p.name = "sparse_l1_svm";
  p.dim = static_cast<int>(A.cols());
  p.f_value = [hd](const Vector& x) { return hinge_value(*hd, x); };
  p.f_subgrad = [hd](const Vector& x) -> Vector { return hinge_subgrad(*hd, x); };
  p.psi = std::isinf(tau) ? ProxSpec::zero() : ProxSpec::l1_ball(tau);
  p.subgrad_bound = hinge_subgrad_bound(A);
  if (planted) {
    p.F_star = 0.0;
    p.X_star_witness = *planted;
  }
  p.data = data;
  return p;
}

ProblemInstance make_sparse_l1_svm(int m, int n, double tau, std::uint64_t seed, bool planted) {
  check_dims(m, n, "make_sparse_l1_svm");
  Rng rng(seed);
  if (!planted) {
    Matrix A;
    Vector y;
    two_class_data(m, n, rng, A, y);
    return make_sparse_l1_svm_from(A, y, tau, nullptr, seed);
  }
  if (std::isinf(tau)) throw ArgumentError("make_sparse_l1_svm: planted instances need a finite tau");
  int support = std::max(1, n / 50);
  Vector xs = sparse_point(n, support, 0.8 * tau, rng);
  std::bernoulli_distribution coin(0.5);
  std::exponential_distribution<double> extra(2.0);
  Matrix A = gaussian_matrix(m, n, rng);
  Vector y(m);
  double s2 = xs.squaredNorm();
  for (int i = 0; i < m; ++i) {
    y(i) = coin(rng) ? 1.0 : -1.0;
    // replace the component along xs so that y_i a_i^T xs = 1 + e_i
    double along = A.row(i).dot(xs) / s2;
    A.row(i) -= along * xs.transpose();
    A.row(i) += (y(i) * (1.0 + extra(rng)) / s2) * xs.transpose();
  }
  return make_sparse_l1_svm_from(A, y, tau, &xs, seed);
}

// ------------------------------------------------------ matrix completion

namespace {

struct Observations {
  int rows, cols;
  std::vector<Eigen::Index> flat;  // row-major index
  Vector values;
};

Vector nuclear_subgrad(const Vector& x, int rows, int cols) {
  Matrix X = as_matrix(x, rows, cols);
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  double tol = s.size() ? 1e-12 * std::max(1.0, s(0)) : 0.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol) ++r;
  if (r == 0) return Vector::Zero(x.size());
  Matrix G = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).transpose();
  return as_vector(G);
}

}  // namespace

ProblemInstance make_matrix_completion_from(int rows, int cols, const Matrix& obs, double tau,
                                            bool nuclear_in_f, std::uint64_t seed) {
  check_dims(rows, cols, "make_matrix_completion");
  if (obs.cols() != 3) throw ArgumentError("make_matrix_completion: observations need 3 columns");
  if (!(tau >= 0.0)) throw ArgumentError("make_matrix_completion: tau must be >= 0");
  auto data = std::make_shared<ProblemData>();
  data->family = "matrix_completion";
  data->rows = rows;
  data->cols = cols;
  data->tau = tau;
  data->seed = seed;
  data->params = {{"nuclear_in_f", nuclear_in_f ? "1" : "0"}};
  data->blocks = {{"obs", obs}};

  auto ob = std::make_shared<Observations>();
  ob->rows = rows;
  ob->cols = cols;
  ob->values.resize(obs.rows());
  for (Eigen::Index k = 0; k < obs.rows(); ++k) {
    auto i = static_cast<Eigen::Index>(obs(k, 0));
    auto j = static_cast<Eigen::Index>(obs(k, 1));
    if (i < 0 || i >= rows || j < 0 || j >= cols)
      throw ArgumentError("make_matrix_completion: observation outside the matrix");
    ob->flat.push_back(i * cols + j);
    ob->values(k) = obs(k, 2);
  }
  if (ob->flat.empty()) throw ArgumentError("make_matrix_completion: need at least one observation");
  const double N = static_cast<double>(ob->flat.size());
  std::shared_ptr<const Observations> obc = ob;

  ProblemInstance p;
  p.name = "matrix_completion";
  p.dim = rows * cols;
  auto data_value = [obc, N](const Vector& x) {
    double v = 0.0;
    for (std::size_t k = 0; k < obc->flat.size(); ++k) v += std::abs(x(obc->flat[k]) - obc->values(k));
    return v / N;
  };
  auto data_subgrad = [obc, N](const Vector& x) -> Vector {
    Vector g = Vector::Zero(x.size());
    for (std::size_t k = 0; k < obc->flat.size(); ++k) {
      double r = x(obc->flat[k]) - obc->values(k);
      g(obc->flat[k]) = (r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0)) / N;
    }
    return g;
  };
  if (nuclear_in_f && tau > 0.0) {
    p.f_value = [data_value, tau, rows, cols](const Vector& x) {
      return data_value(x) + tau * nuclear_norm(as_matrix(x, rows, cols));
    };
    p.f_subgrad = [data_subgrad, tau, rows, cols](const Vector& x) -> Vector {
      return data_subgrad(x) + tau * nuclear_subgrad(x, rows, cols);
    };
    p.psi = ProxSpec::zero();
    p.subgrad_bound = 1.0 / std::sqrt(N) + tau * std::sqrt(static_cast<double>(std::min(rows, cols)));
  } else {
    p.f_value = data_value;
    p.f_subgrad = data_subgrad;
    p.psi = ProxSpec::nuclear_norm(tau, rows, cols);
    p.subgrad_bound = 1.0 / std::sqrt(N);
  }
  p.data = data;
  return p;
}

ProblemInstance make_matrix_completion(int rows, int cols, int n_obs, double tau, std::uint64_t seed,
                                       bool nuclear_in_f) {
  check_dims(rows, cols, "make_matrix_completion");
  if (n_obs < 1 || n_obs > rows * cols)
    throw ArgumentError("make_matrix_completion: need 1 <= n_obs <= rows * cols");
  Rng rng(seed);
  std::vector<int> cells(rows * cols);
  std::iota(cells.begin(), cells.end(), 0);
  std::shuffle(cells.begin(), cells.end(), rng);
  cells.resize(n_obs);
  std::sort(cells.begin(), cells.end());
  std::uniform_int_distribution<int> rating(1, 5);
  Matrix obs(n_obs, 3);
  for (int k = 0; k < n_obs; ++k) {
    obs(k, 0) = cells[k] / cols;
    obs(k, 1) = cells[k] % cols;
    obs(k, 2) = rating(rng);
  }
  return make_matrix_completion_from(rows, cols, obs, tau, nuclear_in_f, seed);
}

// ------------------------------------------------------------ univariate

double univariate_holder_prox(double gamma, double sigma, double x, double mu) {
  if (!(gamma >= 1.0)) throw ArgumentError("univariate prox: gamma must be >= 1");
  if (!(sigma > 0.0) || !(mu > 0.0)) throw ArgumentError("univariate prox: sigma, mu must be > 0");
  double a = std::abs(x);
  double c = mu * sigma;
  if (gamma == 1.0) return std::copysign(std::max(a - c, 0.0), x);
  if (gamma == 2.0) return x / (1.0 + c);
  if (a == 0.0) return 0.0;
  // z + c z^(gamma-1) = a on [0, a]; the left side is increasing.
  auto g = [&](double z) { return z + c * std::pow(z, gamma - 1.0) - a; };
  auto dg = [&](double z) { return 1.0 + c * (gamma - 1.0) * std::pow(z, gamma - 2.0); };
  double lo = 0.0, hi = a;
  double z = a;
  for (int it = 0; it < 200; ++it) {
    double gz = g(z);
    if (gz == 0.0) break;
    (gz > 0.0 ? hi : lo) = z;
    double d = dg(z);
    double zn = std::isfinite(d) && d > 0.0 ? z - gz / d : 0.5 * (lo + hi);
    if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
    if (std::abs(zn - z) <= 1e-14 * std::max(1.0, std::abs(z)) || hi - lo <= 1e-15 * a) {
      z = zn;
      break;
    }
    z = zn;
  }
  return std::copysign(z, x);
}

ProblemInstance make_univariate_holder(double gamma, double sigma) {
  if (!(gamma >= 1.0)) throw ArgumentError("make_univariate_holder: gamma must be >= 1");
  if (!(sigma > 0.0)) throw ArgumentError("make_univariate_holder: sigma must be > 0");
  auto data = std::make_shared<ProblemData>();
  data->family = "univariate_holder";
  data->rows = 1;
  data->cols = 1;
  data->params = {{"gamma", format_double(gamma)}, {"sigma", format_double(sigma)}};

  ProblemInstance p;
  p.name = "univariate_holder";
  p.dim = 1;
  p.f_value = [gamma, sigma](const Vector& x) { return sigma / gamma * std::pow(std::abs(x(0)), gamma); };
  p.f_subgrad = [gamma, sigma](const Vector& x) -> Vector {
    double v = x(0);
    double s = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    return Vector::Constant(1, s * sigma * std::pow(std::abs(v), gamma - 1.0));
  };
  p.psi = ProxSpec::zero();
  p.F_star = 0.0;
  p.X_star_witness = Vector::Zero(1);
  p.dist_to_solutions = [](const Vector& x) { return std::abs(x(0)); };
  p.exact_prox = [gamma, sigma](const Vector& x, double mu) -> Vector {
    return Vector::Constant(1, univariate_holder_prox(gamma, sigma, x(0), mu));
  };
  p.growth = GrowthModel(gamma, sigma / gamma, 0.0, gamma == 1.0 ? sigma : kInf);
  p.subgrad_bound = gamma == 1.0 ? sigma : kInf;
  p.data = data;
  return p;
}

ProblemInstance make_problem(const ProblemRecipe& r) {
  ProblemInstance p;
  if (r.family == "l1_ls") {
    p = make_l1_ls(r.m, r.n, r.tau, r.planted, r.seed);
  } else if (r.family == "graph_svm") {
    p = make_graph_svm(r.m, r.n, std::isinf(r.tau) ? 0.0 : r.tau, r.graph, r.seed);
  } else if (r.family == "sparse_l1_svm") {
    p = make_sparse_l1_svm(r.m, r.n, r.tau, r.seed, r.planted);
  } else if (r.family == "matrix_completion") {
    p = make_matrix_completion(r.m, r.n, r.n_obs, std::isinf(r.tau) ? 0.0 : r.tau, r.seed, r.nuclear_in_f);
  } else if (r.family == "univariate_holder") {
    p = make_univariate_holder(r.gamma, r.sigma);
  } else {
    throw ArgumentError("unknown problem family '" + r.family + "'");
  }
  return p;
}

// --------------------------------------------------------- serialization

void write_problem(std::ostream& os, const ProblemInstance& p) {
  if (!p.data) throw ArgumentError("write_problem: instance carries no data");
  const ProblemData& d = *p.data;
  os << "family=" << d.family << " rows=" << d.rows << " cols=" << d.cols << " dim=" << p.dim << '\n';
  os << "tau=" << tau_string(d.tau) << " seed=" << d.seed;
  for (const auto& [k, v] : d.params) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& b : d.blocks) {
    os << b.name << ' ' << b.value.rows() << ' ' << b.value.cols() << '\n';
    for (Eigen::Index i = 0; i < b.value.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.value.cols(); ++j) {
        if (j) os << ' ';
        os << format_double(b.value(i, j));
      }
      os << '\n';
    }
  }
}

namespace {

std::map<std::string, std::string> parse_kv_line(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ArgumentError("read_problem: bad header token '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double parse_num(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw ArgumentError("read_problem: bad number '" + s + "'");
  return v;
}

}  // namespace

ProblemInstance read_problem(std::istream& is) {
  std::string l1, l2;
  if (!std::getline(is, l1) || !std::getline(is, l2)) throw ArgumentError("read_problem: missing header");
  auto h1 = parse_kv_line(l1);
  auto h2 = parse_kv_line(l2);
  std::map<std::string, Matrix> blocks;
  std::string name;
  Eigen::Index r, c;
  while (is >> name >> r >> c) {
    Matrix M(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) {
        std::string tok;
        if (!(is >> tok)) throw ArgumentError("read_problem: truncated block '" + name + "'");
        M(i, j) = parse_num(tok);
      }
    blocks[name] = M;
  }
  auto need = [&](const char* b) -> const Matrix& {
    auto it = blocks.find(b);
    if (it == blocks.end()) throw ArgumentError(std::string("read_problem: missing block ") + b);
    return it->second;
  };
  const std::string family = h1.at("family");
  const double tau = parse_num(h2.at("tau"));
  const std::uint64_t seed = std::stoull(h2.at("seed"));
  if (family == "l1_ls") {
    Vector b = need("b").col(0);
    if (blocks.count("x_planted")) {
      Vector xs = blocks["x_planted"].col(0);
      return make_l1_ls_from(need("A"), b, tau, &xs, seed);
    }
    return make_l1_ls_from(need("A"), b, tau, nullptr, seed);
  }
  if (family == "graph_svm") return make_graph_svm_from(need("A"), need("y").col(0), need("M"), tau, seed);
  if (family == "sparse_l1_svm") {
    Vector y = need("y").col(0);
    if (blocks.count("x_planted")) {
      Vector xs = blocks["x_planted"].col(0);
      return make_sparse_l1_svm_from(need("A"), y, tau, &xs, seed);
    }
    return make_sparse_l1_svm_from(need("A"), y, tau, nullptr, seed);
  }
  if (family == "matrix_completion") {
    bool nf = h2.count("nuclear_in_f") && h2.at("nuclear_in_f") == "1";
    int rows = std::stoi(h1.at("rows")), cols = std::stoi(h1.at("cols"));
    return make_matrix_completion_from(rows, cols, need("obs"), tau, nf, seed);
  }
  if (family == "univariate_holder")
    return make_univariate_holder(parse_num(h2.at("gamma")), parse_num(h2.at("sigma")));
  throw ArgumentError("read_problem: unknown family '" + family + "'");
}

}  // namespace proxpoint
