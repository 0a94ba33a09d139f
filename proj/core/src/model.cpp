#include "offgrid/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "offgrid/rng.hpp"

namespace offgrid {

cplx eval_signal(const FourierSignal& sig, double x) {
  cplx acc(0.0, 0.0);
  for (const auto& [l, c] : sig.coeffs) {
    acc += c * unit_exp(static_cast<double>(l) * x);
  }
  return acc;
}

UniformDiscretization discretize(const FourierSignal& sig, std::int64_t N) {
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("discretize: N must be odd and >= 3");
  }
  UniformDiscretization out;
  out.N = N;
  out.samples.resize(N);
  for (std::int64_t k = 1; k <= N; ++k) {
    out.samples[k - 1] = eval_signal(sig, uniform_grid_point(k, N));
  }
  return out;
}

AliasFold alias_fold(std::int64_t l, std::int64_t N) {
  if (N < 1 || N % 2 == 0) {
    throw std::invalid_argument("alias_fold: N must be odd and positive");
  }
  const std::int64_t Nt = (N - 1) / 2;
  std::int64_t r0 = (l + Nt) % N;
  if (r0 < 0) r0 += N;                      // nonnegative remainder
  const std::int64_t q = (l + Nt - r0) / N;  // floor division quotient
  AliasFold out;
  out.r = r0 - Nt;
  out.sign = (q % 2 == 0) ? 1 : -1;
  return out;
}

double tail_wiener_norm(const FourierSignal& sig, std::int64_t N) {
  if (N < 1 || N % 2 == 0) {
    throw std::invalid_argument("tail_wiener_norm: N must be odd and positive");
  }
  const std::int64_t Nt = (N - 1) / 2;
  double tail = 0.0;
  for (const auto& [l, c] : sig.coeffs) {
    if (std::abs(l) > Nt) tail += std::abs(c);
  }
  return tail;
}

double wiener_norm(const FourierSignal& sig) {
  double total = 0.0;
  for (const auto& [l, c] : sig.coeffs) total += std::abs(c);
  return total;
}

FourierSignal random_exponential_signal(std::int64_t s, std::int64_t omega,
                                        std::uint64_t seed) {
  if (s < 0 || omega < 0) {
    throw std::invalid_argument("random_exponential_signal: s and omega must be >= 0");
  }
  const std::int64_t range = 2 * omega + 1;
  if (s > range) {
    throw std::invalid_argument(
        "random_exponential_signal: cannot draw s distinct frequencies from "
        "{-omega..omega} with s > 2*omega+1");
  }
  FourierSignal sig;
  Rng rng(seed);
  if (s * 2 >= range) {
    // dense regime: partial Fisher-Yates over the whole frequency range
    std::vector<std::int64_t> freqs(range);
    for (std::int64_t i = 0; i < range; ++i) freqs[i] = i - omega;
    for (std::int64_t i = 0; i < s; ++i) {
      std::int64_t j = i + static_cast<std::int64_t>(
                               rng.integer(static_cast<std::uint64_t>(range - i)));
      std::swap(freqs[i], freqs[j]);
      sig.coeffs[freqs[i]] = cplx(1.0, 0.0);
    }
  } else {
    // sparse regime: rejection keeps memory at s entries even for huge omega
    std::unordered_set<std::int64_t> seen;
    while (static_cast<std::int64_t>(seen.size()) < s) {
      std::int64_t f = static_cast<std::int64_t>(
                           rng.integer(static_cast<std::uint64_t>(range))) - omega;
      if (seen.insert(f).second) sig.coeffs[f] = cplx(1.0, 0.0);
    }
  }
  return sig;
}

double gaussian_bumps(double x) {
  const double a = x - 0.104;
  const double b = x + 0.217;
  return -std::exp(-100.0 * x * x) + std::exp(-100.0 * a * a) -
         std::exp(-100.0 * b * b);
}

namespace {

// Rectangle-rule coefficients at nodes x_j = -1/2 + j/M (equivalent to the
// trapezoid rule for a torus-periodic integrand; the two differ here only by
// the seam jump over 2M, below the attached error estimate).
std::vector<cplx> rect_rule_coeffs(std::int64_t L, std::int64_t M) {
  std::vector<double> fx(M);
  for (std::int64_t j = 0; j < M; ++j) {
    fx[j] = gaussian_bumps(-0.5 + static_cast<double>(j) / static_cast<double>(M));
  }
  std::vector<cplx> c(2 * L + 1);
  for (std::int64_t l = -L; l <= L; ++l) {
    cplx acc(0.0, 0.0);
    for (std::int64_t j = 0; j < M; ++j) {
      const double xj = -0.5 + static_cast<double>(j) / static_cast<double>(M);
      acc += fx[j] * unit_exp(-static_cast<double>(l) * xj);
    }
    c[l + L] = acc / static_cast<double>(M);
  }
  return c;
}

}  // namespace

FourierSignal gaussian_model_coeffs(std::int64_t L, std::int64_t M) {
  if (L < 1) throw std::invalid_argument("gaussian_model_coeffs: L must be >= 1");
  if (M < 4 * L) {
    throw std::invalid_argument(
        "gaussian_model_coeffs: resolution M must be at least 4*L");
  }
  const std::vector<cplx> c = rect_rule_coeffs(L, M);
  const std::vector<cplx> c2 = rect_rule_coeffs(L, 2 * M);
  FourierSignal sig;
  double est = 0.0;
  for (std::int64_t l = -L; l <= L; ++l) {
    sig.coeffs[l] = c[l + L];
    est = std::max(est, std::abs(c[l + L] - c2[l + L]));
  }
  sig.coeff_error_estimate = est;
  return sig;
}

}  // namespace offgrid
