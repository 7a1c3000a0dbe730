#pragma once

#include <string>

#include "proxpoint/types.hpp"

namespace proxpoint {

// Closed-form proximal maps for the simple part psi of F = f + psi.
struct ProxSpec {
  enum class Kind { zero, l1_norm, l1_ball, box, nuclear_norm };

  Kind kind = Kind::zero;
  double weight = 0.0;  // l1_norm, nuclear_norm
  double radius = 0.0;  // l1_ball
  double lo = 0.0;      // box
  double hi = 0.0;
  int rows = 0;         // nuclear_norm: x is a row-major rows x cols matrix
  int cols = 0;

  static ProxSpec zero();
  static ProxSpec l1_norm(double weight);
  static ProxSpec l1_ball(double radius);
  static ProxSpec box(double lo, double hi);
  static ProxSpec nuclear_norm(double weight, int rows, int cols);

  bool is_indicator() const { return kind == Kind::l1_ball || kind == Kind::box; }
  std::string describe() const;
};

// psi(x); +inf outside the feasible set of an indicator.
double psi_value(const ProxSpec& ps, const Vector& x);

Vector prox(const ProxSpec& ps, const Vector& x, double step);

Vector soft_threshold(const Vector& x, double threshold);
Vector project_l1_ball(const Vector& x, double radius);
Matrix prox_nuclear(const Matrix& X, double weight, double step);
double nuclear_norm(const Matrix& X);

// Row-major reshaping used by the nuclear-norm prox.
Matrix as_matrix(const Vector& x, int rows, int cols);
Vector as_vector(const Matrix& X);

}  // namespace proxpoint
