#pragma once

// Deviation distributions for off-the-grid sampling, torus-wrapped grid
// construction, and the deviation-model parameter theta computed from
// closed-form characteristic functions (with a Monte-Carlo cross-check).

#include <cstdint>
#include <variant>
#include <vector>

#include "offgrid/util.hpp"

namespace offgrid {

// Tagged union of the supported deviation laws. The two uniform families are
// parameterized relative to the grid cell 1/m; Normal/Laplace/Exponential are
// absolute-scale; Degenerate is the deterministic shift.
struct UniformJitter { double rho = 0.5; };                  // U[-rho/m, rho/m]
struct UniformGeneral { double mu = 0.0; std::int64_t p = 1; };  // U[mu-p/2m, mu+p/2m]
// Support points mu - p/2m + p*k/(m*nbar), k = 0..nbar-1, equal weights.
struct DiscreteUniform { double mu = 0.0; std::int64_t p = 1; std::int64_t nbar = 1; };
struct Normal { double mu = 0.0; double sigma = 1.0; };
struct Laplace { double mu = 0.0; double b = 1.0; };
struct Exponential { double lambda = 1.0; };
struct Degenerate { double value = 0.0; };

using DeviationDistribution =
    std::variant<UniformJitter, UniformGeneral, DiscreteUniform, Normal,
                 Laplace, Exponential, Degenerate>;

// m perturbed sample locations on the torus.
struct NonuniformGrid {
  std::int64_t m = 0;
  std::vector<double> deviations;  // raw Delta_k as drawn
  std::vector<double> points;      // wrap((k-1)/m - 1/2 + Delta_k), in [-1/2, 1/2)
  double base_step() const { return 1.0 / static_cast<double>(m); }
};

// i.i.d. draws, deterministic per seed. The cell-relative laws need m.
std::vector<double> draw_deviations(const DeviationDistribution& dist,
                                    std::int64_t m, std::uint64_t seed);

NonuniformGrid build_grid(const std::vector<double>& deviations, std::int64_t m);

// Convenience: draw + wrap in one call.
NonuniformGrid make_grid(const DeviationDistribution& dist, std::int64_t m,
                         std::uint64_t seed);

// E[e(t * delta)] in closed form. The cell-relative laws (UniformJitter,
// UniformGeneral, DiscreteUniform) need the sample count m to fix their
// absolute scale; it is ignored by the others.
cplx char_function(const DeviationDistribution& dist, double t, std::int64_t m);

// theta = (2N/m) * max over 0 < |j| <= floor(2(N-1)/m) of |E e(j m delta)|.
// Requires m <= N: for m > N the quantity is not the right diagnostic
// (oversampling needs no deviation model) and a domain_error is raised.
double theta(const DeviationDistribution& dist, std::int64_t N, std::int64_t m);

// Largest |j| entering the theta maximization.
std::int64_t theta_j_max(std::int64_t N, std::int64_t m);

struct ThetaEstimate {
  double value = 0.0;      // Monte-Carlo theta
  double std_error = 0.0;  // CLT standard error at the maximizing j
};

// Same maximization with E[e(j m delta)] replaced by a sample mean over
// `trials` draws (trials >= 1e4). Cross-validates the closed forms.
ThetaEstimate theta_monte_carlo(const DeviationDistribution& dist,
                                std::int64_t N, std::int64_t m,
                                std::int64_t trials, std::uint64_t seed);

// Name used in configs/CSV ("uniform_jitter", "normal", ...).
const char* distribution_kind(const DeviationDistribution& dist);

}  // namespace offgrid
