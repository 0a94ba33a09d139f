#include "offgrid/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "offgrid/util.hpp"

namespace offgrid {

double Rng::normal(double mu, double sigma) {
  // Box-Muller, always consuming exactly two uniforms.
  double u1 = uniform01();
  double u2 = uniform01();
  // Guard the log singularity; probability ~2^-53 per draw.
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  double r = std::sqrt(-2.0 * std::log(u1));
  return mu + sigma * r * std::cos(2.0 * pi * u2);
}

double Rng::laplace(double mu, double scale) {
  if (scale <= 0.0) throw std::invalid_argument("laplace: scale must be positive");
  double u = uniform01() - 0.5;  // in [-1/2, 1/2)
  double s = (u < 0.0) ? -1.0 : 1.0;
  double a = 1.0 - 2.0 * std::fabs(u);  // in (0, 1]
  if (a <= 0.0) a = 0x1.0p-53;
  return mu - s * scale * std::log(a);
}

double Rng::exponential(double rate) {
  if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
  double u = 1.0 - uniform01();  // in (0, 1]
  return -std::log(u) / rate;
}

std::uint64_t Rng::integer(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("integer: n must be >= 1");
  unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

std::uint64_t trial_seed_of(std::uint64_t master_seed, std::uint64_t row,
                            std::uint64_t trial) {
  return trial_rng(master_seed, row, trial).state_key();
}

}  // namespace offgrid
