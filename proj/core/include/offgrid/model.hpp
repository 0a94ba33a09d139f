#pragma once

// Continuous signal model: finitely supported Fourier series, uniform
// discretization on the odd-length centered grid, the aliasing fold map, and
// the two signal families used by the experiments (random sparse exponentials
// and a fixed sum of three Gaussian bumps with numerically computed
// coefficients).

#include <Eigen/Dense>
#include <cstdint>
#include <map>

#include "offgrid/util.hpp"

namespace offgrid {

// A trigonometric series f(x) = sum_l c_l e(l x) with finite support.
struct FourierSignal {
  std::map<std::int64_t, cplx> coeffs;  // frequency -> amplitude, sparse
  // Quadrature residual attached by gaussian_model_coeffs (0 for exact
  // constructions); an upper estimate of the per-coefficient error.
  double coeff_error_estimate = 0.0;
};

// Samples of a signal on the uniform grid t_k = (k-1)/N - 1/2, k in [N].
struct UniformDiscretization {
  std::int64_t N = 0;            // odd
  Eigen::VectorXcd samples;      // length N
  double grid_point(std::int64_t k) const {  // k is 1-based
    return static_cast<double>(k - 1) / static_cast<double>(N) - 0.5;
  }
};

// Uniform grid point t_k = (k-1)/N - 1/2 (1-based k).
inline double uniform_grid_point(std::int64_t k, std::int64_t N) {
  return static_cast<double>(k - 1) / static_cast<double>(N) - 0.5;
}

// f(x) = sum_l c_l e(l x).
cplx eval_signal(const FourierSignal& sig, double x);

// Sample on the N-point centered uniform grid; N must be odd and >= 3.
UniformDiscretization discretize(const FourierSignal& sig, std::int64_t N);

// Where an out-of-band frequency lands under N-point sampling:
// r = rem(l + Nt, N) - Nt with Nt = (N-1)/2 and rem the nonnegative
// remainder; sign = (-1)^floor((l + Nt)/N). Always |r| <= Nt.
struct AliasFold {
  std::int64_t r = 0;
  int sign = 1;
};
AliasFold alias_fold(std::int64_t l, std::int64_t N);

// sum_{|l| > (N-1)/2} |c_l| -- the bandlimitation tail in the
// absolutely-summable-coefficients norm; drives every error bound here.
double tail_wiener_norm(const FourierSignal& sig, std::int64_t N);

// sum_l |c_l| over the whole support.
double wiener_norm(const FourierSignal& sig);

// s distinct frequencies uniform in {-omega..omega}, unit coefficients.
FourierSignal random_exponential_signal(std::int64_t s, std::int64_t omega,
                                        std::uint64_t seed);

// The fixed three-bump test signal
//   -exp(-100 x^2) + exp(-100 (x-.104)^2) - exp(-100 (x+.217)^2)
// evaluated directly (no series).
double gaussian_bumps(double x);

// Fourier coefficients of gaussian_bumps for |l| <= L via an M-point
// rectangle rule on [-1/2, 1/2); requires M >= 4L. The returned signal
// carries a quadrature error estimate (difference against a 2M-point rule on
// the largest coefficients). Note the bumps do not match across the torus
// seam (jump ~3.3e-4 at x = +-1/2), so coefficients decay like 1/l and the
// series converges to the jump midpoint at the seam.
FourierSignal gaussian_model_coeffs(std::int64_t L, std::int64_t M);

}  // namespace offgrid
