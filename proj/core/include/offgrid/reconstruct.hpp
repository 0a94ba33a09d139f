#pragma once

// End-to-end pipelines: acquire noisy off-the-grid samples of a model signal,
// reconstruct by basis pursuit (undersampled, sparsity prior) or least
// squares (oversampled, denoising), optionally with repeated acquisitions
// stacked into one system, and evaluate the reconstruction off the grid.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "offgrid/analysis.hpp"
#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/solve.hpp"
#include "offgrid/transforms.hpp"

namespace offgrid {

enum class NoiseKind { none, uniform_scaled };

// uniform_scaled: entries i.i.d. U[-chi/divisor, chi/divisor] with
// chi = ||f||_1 / sqrt(m), which keeps ||d||_2 roughly constant across m.
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double divisor = 1000.0;
};

struct AcquisitionSpec {
  FourierSignal signal;
  std::int64_t N = 0;  // odd
  std::int64_t m = 0;
  DeviationDistribution distribution = UniformJitter{0.5};
  NoiseModel noise;
  std::uint64_t seed = 0;
};

struct Acquisition {
  Eigen::VectorXcd b;       // observed samples f~ + d
  NonuniformGrid grid;
  Eigen::VectorXcd d;       // the generated noise (real-valued entries)
  Eigen::VectorXcd f;       // uniform discretization of the truth (length N)
  Eigen::VectorXcd f_tilde; // noiseless off-grid samples
  std::optional<Eigen::VectorXcd> g_truth;  // Psi-coefficients of f, if Psi given
};

Acquisition acquire(const AcquisitionSpec& spec,
                    const SparsifyingTransform* psi = nullptr);

struct ReconstructionReport {
  Eigen::VectorXcd f_hat;
  Eigen::VectorXcd g_hat;     // coefficient-space solution (empty for LS path)
  double relative_error = 0.0;
  double input_noise_level = 0.0;  // ||d||_2 / ||f||_2
  double sigma_used = 0.0;
  SolveReport solver;
  std::optional<double> theoretical_bound;  // LS path, when applicable
  std::vector<double> per_acquisition_residuals;  // repeated-acquisition path
};

// Undersampled compressive path: A = S Psi, sigma = eta + 2 sqrt(m) tail,
// f_hat = Psi g#. eta defaults to ||d||_2 of the generated noise and tail to
// the exact out-of-band coefficient mass of the truth.
ReconstructionReport cs_reconstruct(const AcquisitionSpec& spec,
                                    const SparsifyingTransform& psi,
                                    std::optional<double> eta,
                                    std::optional<double> tail,
                                    const BpdnOptions& opts);

// Oversampled path (m >= N required): least squares against S. When tau is
// given and the sample-size precondition holds, the closed-form error bound
// is attached.
ReconstructionReport ls_denoise(const AcquisitionSpec& spec, double tol = 1e-10,
                                std::optional<double> tau = std::nullopt,
                                int max_iter = 500);

// Stack P acquisitions of the same signal and N (independent seeds) into one
// tall least-squares system; reports per-acquisition residual norms.
ReconstructionReport repeated_acquisition_denoise(
    const std::vector<AcquisitionSpec>& specs, double tol = 1e-10,
    int max_iter = 500);

// Evaluate the reconstruction as a continuous signal at the given abscissae
// (analysis coefficients of f_hat fed through the unit-norm evaluation row).
Eigen::VectorXcd continuous_reconstruct(const ReconstructionReport& report,
                                        const std::vector<double>& xs);

}  // namespace offgrid
