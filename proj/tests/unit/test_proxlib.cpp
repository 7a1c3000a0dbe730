#include <cmath>
#include <vector>

#include "doctest.h"
#include "proxpoint/errors.hpp"
#include "proxpoint/proxlib.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace proxpoint;
using testsupport::Gen;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

// Objective minimized by prox(ps, x, step).
double prox_objective(const ProxSpec& s, const Vector& x, double step, const Vector& z) {
  return psi_value(s, z) + (z - x).squaredNorm() / (2.0 * step);
}

std::vector<ProxSpec> all_specs() {
  return {ProxSpec::zero(), ProxSpec::l1_norm(0.7), ProxSpec::l1_ball(1.3), ProxSpec::box(-0.5, 2.0),
          ProxSpec::nuclear_norm(0.4, 3, 4)};
}

}  // namespace

TEST_CASE("soft threshold examples") {
  auto s = ProxSpec::l1_norm(1.0);
  CHECK(prox(s, vec({3.0}), 1.0)(0) == doctest::Approx(2.0));
  CHECK(prox(s, vec({0.5}), 1.0)(0) == 0.0);
  // kink maps to zero
  CHECK(prox(s, vec({1.0}), 1.0)(0) == 0.0);
  CHECK(prox(s, vec({-1.0}), 1.0)(0) == 0.0);
}

TEST_CASE("l1 ball projection examples") {
  Vector a = project_l1_ball(vec({2.0, 1.0}), 1.0);
  CHECK(a(0) == doctest::Approx(1.0));
  CHECK(a(1) == doctest::Approx(0.0));
  Vector b = project_l1_ball(vec({3.0, 0.0}), 1.0);
  CHECK(b(0) == doctest::Approx(1.0));
  CHECK(b(1) == 0.0);
  Vector c = project_l1_ball(vec({0.2, 0.3}), 1.0);
  CHECK(c(0) == 0.2);
  CHECK(c(1) == 0.3);
  auto o = testsupport::project_l1_ball_bisect({2.0, 1.0}, 1.0);
  CHECK(a(0) == doctest::Approx(o[0]).epsilon(1e-12));
  CHECK(a(1) == doctest::Approx(o[1]).epsilon(1e-12));
}

TEST_CASE("l1 ball projection agrees with the threshold bisection oracle") {
  Gen g(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = g.integer(1, 30);
    Vector x = g.vector(n, g.log_uniform(0.1, 10.0));
    double r = g.log_uniform(0.05, 5.0);
    Vector z = project_l1_ball(x, r);
    auto o = testsupport::project_l1_ball_bisect(std::vector<double>(x.data(), x.data() + n), r);
    for (int i = 0; i < n; ++i) CHECK(std::abs(z(i) - o[i]) <= 1e-9 * (1.0 + std::abs(o[i])));
    CHECK(z.lpNorm<1>() <= r * (1.0 + 1e-12));
  }
}

TEST_CASE("l1 ball prox ignores the step") {
  Vector x = vec({2.0, 1.0});
  auto s = ProxSpec::l1_ball(1.0);
  CHECK((prox(s, x, 0.1) - prox(s, x, 10.0)).norm() == 0.0);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(prox(ProxSpec::l1_norm(1.0), vec({1.0}), 0.0), ArgumentError);
  CHECK_THROWS_AS(prox(ProxSpec::zero(), vec({1.0}), -1.0), ArgumentError);
  CHECK_THROWS_AS(project_l1_ball(vec({1.0}), 0.0), ArgumentError);
  CHECK_THROWS_AS(ProxSpec::l1_ball(-1.0), ArgumentError);
  CHECK_THROWS_AS(ProxSpec::l1_norm(-0.1), ArgumentError);
  CHECK_THROWS_AS(ProxSpec::box(1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(prox(ProxSpec::nuclear_norm(1.0, 2, 2), vec({1.0, 2.0, 3.0}), 1.0), ArgumentError);
  CHECK_THROWS_AS(prox_nuclear(Matrix::Identity(2, 2), 1.0, 0.0), ArgumentError);
}

TEST_CASE("nuclear prox of diag(3,1) at threshold 1 is diag(2,0)") {
  Matrix X = Matrix::Zero(2, 2);
  X(0, 0) = 3.0;
  X(1, 1) = 1.0;
  Matrix Z = prox_nuclear(X, 1.0, 1.0);
  CHECK(Z(0, 0) == doctest::Approx(2.0));
  CHECK(std::abs(Z(1, 1)) < 1e-12);
  CHECK(std::abs(Z(0, 1)) < 1e-12);
  CHECK(std::abs(Z(1, 0)) < 1e-12);
}

TEST_CASE("nuclear prox of zero is zero") {
  Matrix Z = prox_nuclear(Matrix::Zero(3, 2), 0.5, 2.0);
  CHECK(Z.norm() == 0.0);
}

TEST_CASE("nuclear prox of a non-finite matrix is a numerical error") {
  Matrix X = Matrix::Identity(2, 2);
  X(0, 1) = kNaN;
  CHECK_THROWS_AS(prox_nuclear(X, 1.0, 1.0), NumericalError);
}

TEST_CASE("nuclear prox beats 200 random perturbations on a random 5x4 matrix") {
  Gen g(5);
  Matrix X = g.matrix(5, 4);
  const double w = 0.6, step = 1.5;
  Matrix Z = prox_nuclear(X, w, step);
  auto obj = [&](const Matrix& M) { return 0.5 * (M - X).squaredNorm() + w * step * nuclear_norm(M); };
  double best = obj(Z);
  for (int i = 0; i < 200; ++i) {
    Matrix P = Z + g.log_uniform(1e-4, 1.0) * g.matrix(5, 4);
    CHECK(best <= obj(P) + 1e-9 * std::abs(best));
  }
  // rank cannot grow
  Eigen::JacobiSVD<Matrix> sx(X), sz(Z);
  auto rank = [](const Vector& s) {
    int r = 0;
    for (int i = 0; i < s.size(); ++i) r += s(i) > 1e-10;
    return r;
  };
  CHECK(rank(sz.singularValues()) <= rank(sx.singularValues()));
}

TEST_CASE("nonexpansiveness for every prox kind") {
  Gen g(21);
  for (const auto& s : all_specs()) {
    int n = s.kind == ProxSpec::Kind::nuclear_norm ? 12 : g.integer(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
      double scale = g.log_uniform(0.01, 10.0);
      Vector x = g.vector(n, scale), y = g.vector(n, scale);
      if (trial % 5 == 0) y = x + g.vector(n, 1e-3 * scale);
      double step = g.log_uniform(0.1, 10.0);
      double lhs = (prox(s, x, step) - prox(s, y, step)).norm();
      CHECK_MESSAGE(lhs <= (x - y).norm() + 1e-10, s.describe());
    }
  }
}

TEST_CASE("minimizers of psi are fixed points") {
  Gen g(3);
  CHECK(prox(ProxSpec::l1_norm(2.0), Vector::Zero(4), 3.0).norm() == 0.0);
  CHECK(prox(ProxSpec::nuclear_norm(2.0, 2, 3), Vector::Zero(6), 3.0).norm() == 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    // any feasible point minimizes an indicator
    Vector x = project_l1_ball(g.vector(6, 3.0), 1.0);
    CHECK((prox(ProxSpec::l1_ball(1.0), x, 1.0) - x).norm() <= 1e-15);
    Vector b = g.vector(6).cwiseMax(-0.5).cwiseMin(2.0);
    CHECK((prox(ProxSpec::box(-0.5, 2.0), b, 1.0) - b).norm() == 0.0);
    Vector z = g.vector(6);
    CHECK(prox(ProxSpec::zero(), z, 0.3) == z);
  }
}

TEST_CASE("prox output beats 200 random perturbations for every kind") {
  Gen g(8);
  for (const auto& s : all_specs()) {
    int n = s.kind == ProxSpec::Kind::nuclear_norm ? 12 : 7;
    for (int trial = 0; trial < 10; ++trial) {
      Vector x = g.vector(n, 2.0);
      double step = g.log_uniform(0.1, 5.0);
      Vector z = prox(s, x, step);
      double best = prox_objective(s, x, step, z);
      for (int i = 0; i < 200; ++i) {
        Vector zz = z + g.log_uniform(1e-5, 1.0) * g.vector(n);
        double v = prox_objective(s, x, step, zz);
        CHECK_MESSAGE(best <= v + 1e-9 * std::max(1.0, std::abs(best)), s.describe());
      }
    }
  }
}

TEST_CASE("matrix layout is row major") {
  Matrix M(2, 3);
  M << 1, 2, 3, 4, 5, 6;
  Vector v = as_vector(M);
  CHECK(v(1) == 2.0);
  CHECK(v(3) == 4.0);
  CHECK(as_matrix(v, 2, 3) == M);
}
