#pragma once

// Sparsifying transforms Psi (DFT, identity, periodized Haar and Daubechies-2
// wavelet synthesis), their DFT-incoherence gamma, extreme singular value
// bounds (alpha, beta), and the best s-term approximation error.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "offgrid/operators.hpp"

namespace offgrid {

enum class TransformKind { dft, dft_adjoint, identity, haar, db2 };

TransformKind transform_kind_from_string(const std::string& name);
const char* transform_kind_name(TransformKind kind);

// Psi as an operator with N rows (sample space) and n columns (coefficient
// space). For the wavelet kinds at non-power-of-two N, n = 2^ceil(log2 N):
// synthesis is inverse-DWT-then-crop, the adjoint is zero-pad-then-DWT, and
// synthesis(adjoint(x)) == x exactly (rows of an orthonormal matrix), so all
// N singular values are 1 even though the matrix is wide.
struct SparsifyingTransform {
  LinearOperator op;
  TransformKind kind = TransformKind::identity;
  std::int64_t levels = 0;  // wavelet decomposition depth (0 for non-wavelets)
  std::optional<double> cached_gamma;
  std::optional<std::pair<double, double>> cached_alpha_beta;
};

// Factories. depth < 0 means the per-kind default: Haar decomposes fully
// (approximation length 1), Daubechies-2 stops at approximation length 4.
SparsifyingTransform dft_transform(std::int64_t N);
SparsifyingTransform dft_adjoint_transform(std::int64_t N);
SparsifyingTransform identity_transform(std::int64_t N);
SparsifyingTransform haar_inverse(std::int64_t N, std::int64_t depth = -1);
SparsifyingTransform db2_inverse(std::int64_t N, std::int64_t depth = -1);

SparsifyingTransform make_transform(TransformKind kind, std::int64_t N,
                                    std::int64_t depth = -1);

// max over columns l of sum_k |<F_col_k, Psi_col_l>| = max_l || F* Psi e_l ||_1,
// computed one column at a time via the centered DFT. Dense-cost guard at
// N ~ 4096 unless allow_large. Results are identical regardless of thread
// count (fixed-order reduction).
double gamma(SparsifyingTransform& psi, bool allow_large = false, int threads = 1);

struct SingularBounds {
  double alpha = 0.0;  // smallest of the min(N, n) singular values
  double beta = 0.0;   // largest singular value
  double alpha_residual = 0.0;  // eigen-residual certificates ||G v - lambda v||
  double beta_residual = 0.0;
  bool converged = false;
};

// beta by power iteration on the Gram operator, alpha by shifted power
// iteration (exact dense decomposition below a small-size threshold).
// iters >= 50 required.
SingularBounds singular_bounds(SparsifyingTransform& psi, int iters,
                               std::uint64_t seed);

// Same routine for any operator (used by tests with synthetic matrices).
SingularBounds singular_bounds_of(const LinearOperator& A, int iters,
                                  std::uint64_t seed);

// epsilon_s(g): the l1 mass of everything but the s largest-magnitude entries
// (ties keep the lower index). Monotone nonincreasing in s; 0 at s = n.
double best_sparse_error(const Eigen::VectorXcd& g, std::int64_t s);

// ---- raw periodized wavelet machinery (exposed for tests) ------------------

// Orthonormal filter taps.
const std::vector<double>& haar_taps();
const std::vector<double>& db2_taps();

// Periodized analysis/synthesis on length-2^k vectors, [approx | detail]
// layout recursing on the approximation band.
Eigen::VectorXcd dwt_periodized(const Eigen::VectorXcd& x,
                                const std::vector<double>& taps, std::int64_t levels);
Eigen::VectorXcd idwt_periodized(const Eigen::VectorXcd& coeffs,
                                 const std::vector<double>& taps, std::int64_t levels);

std::int64_t wavelet_padded_length(std::int64_t N);  // 2^ceil(log2 N)
std::int64_t wavelet_max_levels(std::int64_t padded, std::size_t tap_count,
                                std::int64_t min_approx_len);

}  // namespace offgrid
