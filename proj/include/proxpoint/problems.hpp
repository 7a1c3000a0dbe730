#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "proxpoint/core.hpp"

namespace proxpoint {

enum class GraphKind { identity, random_graph };

struct ProblemRecipe {
  std::string family = "l1_ls";  // l1_ls, graph_svm, sparse_l1_svm, matrix_completion, univariate_holder
  int m = 50;                    // rows (samples, or matrix rows)
  int n = 20;                    // columns (features, or matrix columns)
  int n_obs = 250;               // matrix_completion only
  double tau = kInf;
  double gamma = 1.0;            // univariate_holder only
  double sigma = 1.0;            // univariate_holder only
  GraphKind graph = GraphKind::identity;
  bool planted = true;
  bool nuclear_in_f = false;     // matrix_completion: treat the nuclear norm by subgradients
  std::uint64_t seed = 1;
};

// ||Ax - b||_1 over the l1 ball of radius tau (no constraint when tau = inf).
ProblemInstance make_l1_ls(int m, int n, double tau, bool planted, std::uint64_t seed);
ProblemInstance make_l1_ls_from(const Matrix& A, const Vector& b, double tau,
                                const Vector* planted = nullptr, std::uint64_t seed = 0);

// (1/m) sum max{0, 1 - y_i a_i^T x} + tau |Mx|_1, all handled by subgradients.
ProblemInstance make_graph_svm(int m, int n, double tau, GraphKind kind, std::uint64_t seed);
ProblemInstance make_graph_svm_from(const Matrix& A, const Vector& y, const Matrix& M, double tau,
                                    std::uint64_t seed = 0);

// (1/m) sum max{0, 1 - y_i a_i^T x} over the l1 ball of radius tau.
// planted: data separable with margin 1 by a sparse point inside the ball.
ProblemInstance make_sparse_l1_svm(int m, int n, double tau, std::uint64_t seed, bool planted = false);
ProblemInstance make_sparse_l1_svm_from(const Matrix& A, const Vector& y, double tau,
                                        const Vector* planted = nullptr, std::uint64_t seed = 0);

// (1/N) sum over observed cells |X_ij - Y_ij| + tau |X|_*, X stored row-major.
ProblemInstance make_matrix_completion(int rows, int cols, int n_obs, double tau, std::uint64_t seed,
                                       bool nuclear_in_f = false);
// obs rows are (i, j, value).
ProblemInstance make_matrix_completion_from(int rows, int cols, const Matrix& obs, double tau,
                                            bool nuclear_in_f = false, std::uint64_t seed = 0);

// F(x) = (sigma/gamma) |x|^gamma on the real line.
ProblemInstance make_univariate_holder(double gamma, double sigma);
// Solves z + mu sigma |z|^(gamma-1) sign(z) = x.
double univariate_holder_prox(double gamma, double sigma, double x, double mu);

ProblemInstance make_problem(const ProblemRecipe& r);

// Two header lines (family and dimensions; tau, seed and extra parameters),
// then named dense blocks written row-major.
void write_problem(std::ostream& os, const ProblemInstance& p);
ProblemInstance read_problem(std::istream& is);

// Largest singular value.
double spectral_norm(const Matrix& A);

}  // namespace proxpoint
