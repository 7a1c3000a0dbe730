#pragma once

// Strongly convex quadratic test problems with a closed-form prox.

#include <memory>

#include "proxpoint/core.hpp"
#include "support/gen.hpp"

namespace testsupport {

struct Quadratic {
  proxpoint::Matrix Q;
  proxpoint::Vector c;
  double L;  // largest eigenvalue of Q

  proxpoint::Vector prox(const proxpoint::Vector& x, double mu) const {
    proxpoint::Matrix H = Q + proxpoint::Matrix::Identity(Q.rows(), Q.cols()) / mu;
    return H.ldlt().solve(x / mu - c);
  }
};

inline Quadratic random_quadratic(Gen& g, int n) {
  proxpoint::Matrix B = g.matrix(n, n);
  Quadratic q;
  q.Q = B * B.transpose() / n + g.log_uniform(1e-3, 1.0) * proxpoint::Matrix::Identity(n, n);
  q.Q *= g.log_uniform(0.1, 10.0);
  q.c = g.vector(n);
  Eigen::SelfAdjointEigenSolver<proxpoint::Matrix> es(q.Q);
  q.L = es.eigenvalues().maxCoeff();
  return q;
}

inline proxpoint::ProblemInstance quadratic_problem(const Quadratic& q) {
  auto shared = std::make_shared<const Quadratic>(q);
  proxpoint::ProblemInstance p;
  p.name = "quadratic";
  p.dim = static_cast<int>(q.Q.rows());
  p.f_value = [shared](const proxpoint::Vector& x) { return 0.5 * x.dot(shared->Q * x) + shared->c.dot(x); };
  p.f_subgrad = [shared](const proxpoint::Vector& x) -> proxpoint::Vector { return shared->Q * x + shared->c; };
  p.exact_prox = [shared](const proxpoint::Vector& x, double mu) { return shared->prox(x, mu); };
  return p;
}

}  // namespace testsupport
