#pragma once

// Matrix-free linear operator contract and the concrete operators: the
// centered unitary DFT pair, the exact type-2 nonuniform DFT, the Dirichlet
// interpolation kernel in its two equivalent representations, composition,
// scaling, and stacking of repeated acquisitions.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "offgrid/sampling.hpp"
#include "offgrid/util.hpp"

namespace offgrid {

// Forward/adjoint pair. Everything downstream (solvers, diagnostics) sees
// only this contract, so dense and matrix-free implementations interchange.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> forward;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> adjoint;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;          // checks cols
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& y) const;  // checks rows
};

// |<Au,v> - <u,A*v>| <= 1e-10 (||Au|| ||v|| + ||u|| ||A*v||) over random
// probes; returns the worst normalized defect.
double dot_test(const LinearOperator& A, int probes = 20, std::uint64_t seed = 0x0d07);

// Newly built operators run a one-probe dot test unless disabled (useful for
// large sweeps where construction cost matters).
void set_operator_validation(bool enabled);
bool operator_validation_enabled();

// ---- centered DFT ----------------------------------------------------------

// Coefficient recovery direction ("analysis"): out_u = (1/sqrt(N)) sum_p
// f_p e(-t_p (u - Nt - 1)) with t_p the uniform grid and Nt = (N-1)/2, so
// bin u holds the coefficient of the mode of frequency u - Nt - 1.
Eigen::VectorXcd centered_dft_adjoint(const Eigen::VectorXcd& f);

// Synthesis direction, the unitary inverse of centered_dft_adjoint:
// out_p = (1/sqrt(N)) sum_u g_u e(t_p (u - Nt - 1)).
Eigen::VectorXcd centered_dft_forward(const Eigen::VectorXcd& g);

// The synthesis matrix as an operator (forward = centered_dft_forward).
LinearOperator centered_dft_operator(std::int64_t N);

// ---- NDFT (type 2) ---------------------------------------------------------

// out_k = (1/sqrt(N)) sum_u v_u e(t~_k (u - Nt - 1)); exact direct
// summation, no fast approximation (approximation error would contaminate
// the interpolation-error identity checks).
Eigen::VectorXcd ndft_apply(const NonuniformGrid& grid, const Eigen::VectorXcd& v,
                            std::int64_t N);

LinearOperator ndft_operator(const NonuniformGrid& grid, std::int64_t N);

// ---- Dirichlet interpolation kernel ----------------------------------------

enum class DirichletRepresentation { fourier_factorized, direct_sum };

// The m x N interpolation operator S: factorized path computes NDFT(F* f);
// direct path computes (Sf)_k = (1/N) sum_p f_p K(t~_k - t_p) with
// K(theta) = sin(N pi theta)/sin(pi theta), removable singularity K = +-N.
// Entries are real, so real inputs map to (numerically) real outputs.
struct DirichletKernelOp {
  NonuniformGrid grid;
  std::int64_t N = 0;
  DirichletRepresentation representation = DirichletRepresentation::fourier_factorized;
};

DirichletKernelOp make_dirichlet(const NonuniformGrid& grid, std::int64_t N,
                                 DirichletRepresentation repr =
                                     DirichletRepresentation::fourier_factorized);

Eigen::VectorXcd dirichlet_apply(const DirichletKernelOp& op, const Eigen::VectorXcd& f);

LinearOperator dirichlet_operator(const DirichletKernelOp& op);

// The kernel value (1/N) K(theta) with the singularity handled.
double dirichlet_kernel(double theta, std::int64_t N);

// ---- combinators -----------------------------------------------------------

// forward = A o B, adjoint = B* o A*.
LinearOperator compose(const LinearOperator& A, const LinearOperator& B);

LinearOperator scale_operator(const LinearOperator& A, cplx factor);

LinearOperator identity_operator(Eigen::Index n);

// Stack several acquisitions S^1..S^P of the same N into one tall operator;
// forward concatenates blocks, adjoint sums the per-block adjoints.
LinearOperator concat_acquisitions(const std::vector<DirichletKernelOp>& ops);

// ---- continuous evaluation --------------------------------------------------

// <h(x), coeff_vec> with h(x)_u = (1/sqrt(N)) e(x (u - Nt - 1)); on the
// uniform grid x = t_k this returns sample k of the signal whose analysis
// coefficients are coeff_vec. ||h(x)||_2 = 1 for every x.
cplx continuous_eval(const Eigen::VectorXcd& coeff_vec, double x);

// ---- dense views ------------------------------------------------------------

// Materialize an operator column-by-column. Guarded by a size cap: refuses
// matrices larger than `max_entries` (default 2^24) rather than thrash.
Eigen::MatrixXcd dense_matrix(const LinearOperator& A,
                              std::int64_t max_entries = (1 << 24));

}  // namespace offgrid
