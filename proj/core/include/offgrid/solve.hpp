#pragma once

// The two reconstruction programs. Basis pursuit denoise
//   min ||h||_1  s.t.  ||A h - b||_2 <= sigma
// is solved by root-finding on the Pareto curve of LASSO subproblems, each
// handled by a spectral projected-gradient method (Barzilai-Borwein steps
// with a nonmonotone line search). Least squares goes through conjugate
// gradients on the normal equations. Both touch A only through
// forward/adjoint products.

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "offgrid/operators.hpp"

namespace offgrid {

struct BpdnOptions {
  double sigma = 0.0;        // residual bound
  int max_outer = 40;        // Pareto/Newton iterations
  int max_inner = 200;       // projected-gradient steps per subproblem
  double opt_tol = 1e-6;     // relative duality-gap / root tolerance
  // spectral step safeguards and nonmonotone window
  double step_min = 1e-16;
  double step_max = 1e16;
  int linesearch_memory = 10;
  double suff_decrease = 1e-4;
};

struct SolveReport {
  Eigen::VectorXcd solution;
  double residual_norm = 0.0;  // ||A x - b||_2 of the returned solution
  double one_norm = 0.0;       // sum of moduli of the returned solution
  double duality_gap = 0.0;    // final LASSO duality gap (bpdn/lasso paths)
  int iterations = 0;          // total inner iterations (bpdn), or CG steps
  int outer_iterations = 0;
  bool converged = false;
  // one entry per outer iteration: (residual_norm, one_norm) of its iterate
  std::vector<std::pair<double, double>> history;
};

// sigma = eta + 2 sqrt(m) * tail: measurement noise plus the interpolation
// error budget that makes the true coefficients feasible.
double bpdn_sigma_from_model(double eta, std::int64_t m, double tail);

// Euclidean projection onto { x : sum |x_i| <= radius }; acts on the moduli
// (exact sort-based threshold), phases preserved.
Eigen::VectorXcd project_l1_ball(const Eigen::VectorXcd& x, double radius);

// min ||A x - b||_2 over the l1 ball of radius tau_ball, warm-started at x0.
SolveReport lasso_subproblem(const LinearOperator& A, const Eigen::VectorXcd& b,
                             double tau_ball, const Eigen::VectorXcd& x0,
                             const BpdnOptions& opts);

// BPDN. ||b||_2 <= sigma short-circuits to zero. Non-convergence within
// max_outer is reported in the flag; the best iterate is still returned.
SolveReport bpdn(const LinearOperator& A, const Eigen::VectorXcd& b,
                 const BpdnOptions& opts);

// argmin ||A g - b||_2 by CG on A*A g = A*b; stops when the normal-equations
// residual satisfies ||A*(Ag-b)|| <= tol * ||A|| * ||b|| (operator norm
// estimated by a short power iteration).
SolveReport least_squares(const LinearOperator& A, const Eigen::VectorXcd& b,
                          double tol = 1e-10, int max_iter = 500);

}  // namespace offgrid
