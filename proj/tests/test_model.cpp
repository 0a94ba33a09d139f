#include <cmath>
#include <complex>

#include "doctest.h"
#include "offgrid/model.hpp"
#include "offgrid/util.hpp"

using namespace offgrid;

namespace {

FourierSignal geometric_signal(std::int64_t max_abs_freq) {
  // c_l = 2^{-|l|}; the worked tail example uses support |l| <= 10
  FourierSignal sig;
  for (std::int64_t l = -max_abs_freq; l <= max_abs_freq; ++l) {
    sig.coeffs[l] = cplx(std::pow(2.0, -static_cast<double>(std::llabs(l))), 0.0);
  }
  return sig;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("eval_signal sums the exponential series") {
  FourierSignal sig;
  sig.coeffs[3] = cplx(2.0, 0.0);
  sig.coeffs[-1] = cplx(0.0, 1.0);
  const double x = 0.2;
  const cplx want = 2.0 * unit_exp(3 * x) + cplx(0.0, 1.0) * unit_exp(-x);
  CHECK(std::abs(eval_signal(sig, x) - want) <= 1e-15);
  CHECK(std::abs(eval_signal(FourierSignal{}, 0.3)) == 0.0);
}

TEST_CASE("discretize samples the signal at the centered uniform grid") {
  const std::int64_t N = 9;
  FourierSignal sig;
  sig.coeffs[2] = cplx(1.0, -0.5);
  sig.coeffs[11] = cplx(0.25, 0.0);  // out of band on purpose
  const UniformDiscretization d = discretize(sig, N);
  REQUIRE(d.samples.size() == N);
  CHECK(uniform_grid_point(1, N) == doctest::Approx(-0.5));
  for (std::int64_t k = 1; k <= N; ++k) {
    CHECK(std::abs(d.samples[k - 1] - eval_signal(sig, uniform_grid_point(k, N))) <=
          1e-15);
  }
  CHECK_THROWS_AS(discretize(sig, 8), std::invalid_argument);
  CHECK_THROWS_AS(discretize(sig, 1), std::invalid_argument);
}

TEST_CASE("alias_fold folds with the odd-N sign rule") {
  // hand-checked pairs at N = 63
  CHECK(alias_fold(200, 63).r == 11);
  CHECK(alias_fold(200, 63).sign == -1);
  CHECK(alias_fold(-305, 63).r == 10);
  CHECK(alias_fold(-305, 63).sign == -1);
  // in-band frequencies are fixed points with sign +1
  for (std::int64_t l = -31; l <= 31; l += 7) {
    CHECK(alias_fold(l, 63).r == l);
    CHECK(alias_fold(l, 63).sign == 1);
  }
  // first frequency past the band edge wraps to the far end, sign -1
  CHECK(alias_fold(32, 63).r == -31);
  CHECK(alias_fold(32, 63).sign == -1);
  CHECK_THROWS_AS(alias_fold(5, 10), std::invalid_argument);
}

TEST_CASE("alias_fold reproduces the exponential on the uniform grid") {
  const std::int64_t N = 63;
  for (std::int64_t l : {47ll, 64ll, 200ll, -305ll, -70ll}) {
    const AliasFold fold = alias_fold(l, N);
    for (std::int64_t k = 1; k <= N; k += 5) {
      const double t = uniform_grid_point(k, N);
      const cplx lhs = unit_exp(static_cast<double>(l) * t);
      const cplx rhs = static_cast<double>(fold.sign) *
                       unit_exp(static_cast<double>(fold.r) * t);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("tail and Wiener norms on the geometric worked example") {
  const FourierSignal sig = geometric_signal(10);
  CHECK(tail_wiener_norm(sig, 11) == 0.060546875);  // exact in binary
  CHECK(wiener_norm(sig) == doctest::Approx(3.0 - std::pow(2.0, -9.0)).epsilon(1e-15));
  CHECK(tail_wiener_norm(sig, 21) == 0.0);  // support fits inside the band
  CHECK(tail_wiener_norm(sig, 9) > tail_wiener_norm(sig, 11));
  CHECK_THROWS_AS(tail_wiener_norm(sig, 12), std::invalid_argument);
}

TEST_CASE("random_exponential_signal draws s distinct in-range unit coefficients") {
  const FourierSignal sig = random_exponential_signal(6, 127, 42);
  REQUIRE(sig.coeffs.size() == 6);
  for (const auto& [l, c] : sig.coeffs) {
    CHECK(std::llabs(l) <= 127);
    CHECK(c == cplx(1.0, 0.0));
  }
  // reproducible; different seeds give a different support with high probability
  CHECK(random_exponential_signal(6, 127, 42).coeffs == sig.coeffs);
  CHECK(random_exponential_signal(6, 127, 43).coeffs != sig.coeffs);
  // dense regime: drawing the whole range yields exactly the whole range
  const FourierSignal full = random_exponential_signal(11, 5, 1);
  CHECK(full.coeffs.size() == 11);
  CHECK_THROWS_AS(random_exponential_signal(12, 5, 1), std::invalid_argument);
}

TEST_CASE("gaussian model: frozen summary values") {
  const FourierSignal sig = gaussian_model_coeffs(1200, 4800);
  REQUIRE(sig.coeffs.size() == 2401);
  CHECK(wiener_norm(sig) == doctest::Approx(1.4428544227).epsilon(1e-9));
  CHECK(tail_wiener_norm(sig, 255) == doctest::Approx(2.414796e-4).epsilon(1e-4));
  CHECK(tail_wiener_norm(sig, 2015) == doctest::Approx(2.015357e-5).epsilon(1e-4));
  CHECK(sig.coeff_error_estimate > 0.0);
  CHECK(sig.coeff_error_estimate < 5e-8);
  // the function is real, so coefficients come in conjugate pairs
  for (std::int64_t l = 1; l <= 1200; l += 97) {
    CHECK(std::abs(sig.coeffs.at(l) - std::conj(sig.coeffs.at(-l))) <= 1e-15);
  }
  // value at 0 pinned to the independently computed reference within the
  // quadrature-resolution budget
  CHECK(std::abs(eval_signal(sig, 0.0).real() - (-0.669962081033224)) <= 1e-7);
  CHECK(std::abs(eval_signal(sig, 0.0).imag()) <= 1e-12);
}

TEST_CASE("gaussian model: truncated series tracks the bump function") {
  const FourierSignal sig = gaussian_model_coeffs(1200, 4800);
  // interior points: series and closed form agree tightly
  for (double x : {0.0, 0.13, -0.2, 0.31}) {
    CHECK(std::abs(eval_signal(sig, x).real() - gaussian_bumps(x)) <= 5e-7);
  }
  // the bumps are not torus-periodic, so the seam is the worst spot
  CHECK(std::abs(eval_signal(sig, 0.499).real() - gaussian_bumps(0.499)) <= 2e-5);
  // discretized at the working resolution, the seam dominates the error
  const UniformDiscretization d = discretize(sig, 2015);
  double worst = 0.0;
  for (std::int64_t k = 1; k <= 2015; ++k) {
    worst = std::max(worst, std::abs(d.samples[k - 1].real() -
                                     gaussian_bumps(uniform_grid_point(k, 2015))));
  }
  CHECK(worst < 2e-4);
}

TEST_CASE("gaussian model: truncation level is converged") {
  const double w1200 = wiener_norm(gaussian_model_coeffs(1200, 4800));
  const double w600 = wiener_norm(gaussian_model_coeffs(600, 2400));
  CHECK(std::abs(w1200 - w600) < 1e-4);
  CHECK_THROWS_AS(gaussian_model_coeffs(100, 399), std::invalid_argument);
}

}  // TEST_SUITE("model")
