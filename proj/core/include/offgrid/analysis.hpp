#pragma once

// Diagnostics: the exact interpolation-error series (the library's central
// correctness anchor), error metrics, empirical restricted-isometry
// estimators over enumerated supports, the dense minimum-singular-value
// check for the oversampled kernel, and the closed-form least-squares error
// bound.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"

namespace offgrid {

// Exact per-sample interpolation error plus the norm envelopes it obeys.
struct ErrorBreakdown {
  Eigen::VectorXcd per_sample;          // length m
  std::map<int, double> p_norm_bounds;  // p in {1, 2} -> 2 m^{1/p} * tail
  double sup_bound = 0.0;               // 2 * tail  (the p = infinity case)
};

// per_sample_k = sum_{|l| > (N-1)/2} c_l (e(l t~_k) - sign(l) e(r(l) t~_k))
// with (r, sign) from alias_fold. Samples that coincide with a uniform grid
// point get exactly zero.
ErrorBreakdown interp_error_exact(const FourierSignal& sig,
                                  const NonuniformGrid& grid, std::int64_t N);

// ||f_hat - f||_2 / ||f||_2.
double relative_error(const Eigen::VectorXcd& f_hat, const Eigen::VectorXcd& f);

struct XmOptions {
  int draws = 500;                // Monte-Carlo draws for the mean Gram
  bool exact_identity_mean = true;  // use E[A*A] = I instead of sampling
  std::uint64_t seed = 0;
  std::int64_t max_supports = 20000;
};

// sup over supports |T| <= s of || A_T* A_T - M_T || where M_T is either the
// identity (exact_identity_mean, valid for unbiased-deviation orthonormal
// setups) or the Monte-Carlo mean Gram over draws from `draw_member`.
// Supports are enumerated exhaustively (s <= 3, column count <= 20).
double empirical_xm(const Eigen::MatrixXcd& A,
                    const std::function<Eigen::MatrixXcd(std::uint64_t)>& draw_member,
                    std::int64_t s, const XmOptions& opts);

// delta_s = sup over supports |T| <= s of || A_T* A_T - I ||_2. Enumerated
// supports are capped (default 20000) rather than hard-limited by n.
double empirical_ric(const Eigen::MatrixXcd& A, std::int64_t s,
                     std::int64_t max_supports = 20000);

// sigma_min of the dense interpolation kernel (N <= 512), for comparison
// against the oversampled spectral floor sqrt((1-2 tau) m / N).
double min_singular_check(const DirichletKernelOp& S);

// Closed-form least-squares error bound and its sample-size precondition.
struct BoundCheck {
  bool applicable = false;
  double value = 0.0;
  std::string reason;  // set when not applicable
};

// value = tau * d_norm / (3 sqrt((1 - tau - 2 tau^2) log(2N)))
//         + 2 sqrt(N) * tail / sqrt(1 - 2 tau),
// applicable when 0 < tau < 1/2 and m >= 36 N log(2N) (1 + tau) / tau^2.
BoundCheck ls_error_bound(double tau, std::int64_t N, std::int64_t m,
                          double d_norm, double tail);

// The smallest m for which the bound above applies.
double ls_bound_min_m(double tau, std::int64_t N);

}  // namespace offgrid
