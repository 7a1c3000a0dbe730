#include "proxpoint/proxlib.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "proxpoint/errors.hpp"

namespace proxpoint {

ProxSpec ProxSpec::zero() { return ProxSpec{}; }

ProxSpec ProxSpec::l1_norm(double weight) {
  if (!(weight >= 0.0)) throw ArgumentError("l1_norm: weight must be >= 0");
  ProxSpec s;
  s.kind = Kind::l1_norm;
  s.weight = weight;
  return s;
}

ProxSpec ProxSpec::l1_ball(double radius) {
  if (!(radius > 0.0)) throw ArgumentError("l1_ball: radius must be > 0");
  ProxSpec s;
  s.kind = Kind::l1_ball;
  s.radius = radius;
  return s;
}

ProxSpec ProxSpec::box(double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("box: need lo < hi");
  ProxSpec s;
  s.kind = Kind::box;
  s.lo = lo;
  s.hi = hi;
  return s;
}

ProxSpec ProxSpec::nuclear_norm(double weight, int rows, int cols) {
  if (!(weight >= 0.0)) throw ArgumentError("nuclear_norm: weight must be >= 0");
  if (rows <= 0 || cols <= 0) throw ArgumentError("nuclear_norm: rows and cols must be positive");
  ProxSpec s;
  s.kind = Kind::nuclear_norm;
  s.weight = weight;
  s.rows = rows;
  s.cols = cols;
  return s;
}

std::string ProxSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::zero: os << "zero"; break;
    case Kind::l1_norm: os << "l1_norm(" << weight << ")"; break;
    case Kind::l1_ball: os << "l1_ball(" << radius << ")"; break;
    case Kind::box: os << "box(" << lo << "," << hi << ")"; break;
    case Kind::nuclear_norm: os << "nuclear_norm(" << weight << "," << rows << "x" << cols << ")"; break;
  }
  return os.str();
}

Matrix as_matrix(const Vector& x, int rows, int cols) {
  if (x.size() != static_cast<Eigen::Index>(rows) * cols)
    throw ArgumentError("as_matrix: size mismatch");
  Matrix X(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) X(i, j) = x(static_cast<Eigen::Index>(i) * cols + j);
  return X;
}

Vector as_vector(const Matrix& X) {
  Vector x(X.size());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) x(i * X.cols() + j) = X(i, j);
  return x;
}

double nuclear_norm(const Matrix& X) {
  Eigen::BDCSVD<Matrix> svd(X);
  return svd.singularValues().sum();
}

double psi_value(const ProxSpec& ps, const Vector& x) {
  switch (ps.kind) {
    case ProxSpec::Kind::zero: return 0.0;
    case ProxSpec::Kind::l1_norm: return ps.weight * x.lpNorm<1>();
    case ProxSpec::Kind::l1_ball: {
      // Small slack so projected points are not reported infeasible.
      double n1 = x.lpNorm<1>();
      return n1 <= ps.radius * (1.0 + 1e-12) + 1e-15 ? 0.0 : kInf;
    }
    case ProxSpec::Kind::box:
      return (x.array() >= ps.lo).all() && (x.array() <= ps.hi).all() ? 0.0 : kInf;
    case ProxSpec::Kind::nuclear_norm:
      if (ps.weight == 0.0) return 0.0;
      return ps.weight * nuclear_norm(as_matrix(x, ps.rows, ps.cols));
  }
  return 0.0;
}

Vector soft_threshold(const Vector& x, double threshold) {
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double a = std::abs(x(i)) - threshold;
    // |x| == threshold lands on the kink and maps to 0
    out(i) = a > 0.0 ? std::copysign(a, x(i)) : 0.0;
  }
  return out;
}

Vector project_l1_ball(const Vector& x, double radius) {
  if (!(radius > 0.0)) throw ArgumentError("project_l1_ball: radius must be > 0");
  if (!x.allFinite()) throw NumericalError("project_l1_ball: non-finite input");
  double n1 = x.lpNorm<1>();
  if (n1 <= radius) return x;
  std::vector<double> u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) u[i] = std::abs(x(i));
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    double t = (cum - radius) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return soft_threshold(x, theta);
}

Matrix prox_nuclear(const Matrix& X, double weight, double step) {
  if (!(weight > 0.0)) throw ArgumentError("prox_nuclear: weight must be > 0");
  if (!(step > 0.0)) throw ArgumentError("prox_nuclear: step must be > 0");
  if (!X.allFinite()) {
    std::ostringstream os;
    os << "prox_nuclear: non-finite input (" << X.rows() << "x" << X.cols()
       << ", max |entry| = " << X.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(os.str());
  }
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s = svd.singularValues();
  double thr = weight * step;
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - thr, 0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Vector prox(const ProxSpec& ps, const Vector& x, double step) {
  if (!(step > 0.0)) throw ArgumentError("prox: step must be > 0");
  switch (ps.kind) {
    case ProxSpec::Kind::zero: return x;
    case ProxSpec::Kind::l1_norm: return soft_threshold(x, ps.weight * step);
    case ProxSpec::Kind::l1_ball: return project_l1_ball(x, ps.radius);
    case ProxSpec::Kind::box: return x.cwiseMax(ps.lo).cwiseMin(ps.hi);
    case ProxSpec::Kind::nuclear_norm:
      if (ps.weight == 0.0) return x;
      return as_vector(prox_nuclear(as_matrix(x, ps.rows, ps.cols), ps.weight, step));
  }
  return x;
}

}  // namespace proxpoint
