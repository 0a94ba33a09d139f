#pragma once

// Small numeric helpers shared across the library: exact-reduction sin(pi x),
// torus wrapping, the complex exponential e(x) = exp(2*pi*i*x), and a couple
// of hashing/formatting utilities used by the experiment harness.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace offgrid {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// sin(pi*x) with the integer part of x removed exactly, so sinpi(k) == 0 for
// every integer k representable in double. Plain std::sin(pi*k) would return
// k*pi rounding noise instead, which matters when an exact zero feeds a
// "theta == 0" claim or a removable-singularity test.
inline double sinpi(double x) {
  double r = std::remainder(x, 2.0);  // r in [-1, 1], exact for finite x
  // reduce to [-1/2, 1/2] using sin(pi(1 - r)) = sin(pi r)
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(pi * r);
}

// cos(pi*x) via the same exact reduction.
inline double cospi(double x) {
  double r = std::remainder(x, 2.0);
  r = std::fabs(r);                   // cos is even
  double s = 1.0;
  if (r > 0.5) { r = 1.0 - r; s = -1.0; }  // cos(pi(1-r)) = -cos(pi r)
  if (r == 0.5) return 0.0;  // exact zero at half-integers, matching sinpi
  return s * std::cos(pi * r);
}

// e(x) = exp(2*pi*i*x), the complex-exponential convention used throughout.
inline cplx unit_exp(double x) {
  // use the exact reduction so unit_exp(integer) == 1 exactly
  double r = std::remainder(x, 1.0);
  return {cospi(2.0 * r), sinpi(2.0 * r)};
}

// Wrap to the half-open torus interval [-1/2, 1/2).
inline double wrap_torus(double x) {
  double w = x - std::floor(x + 0.5);
  // floor(x + 0.5) can round such that w == 0.5 when x is just below a
  // half-integer; fold that boundary case back into the interval.
  if (w >= 0.5) w -= 1.0;
  return w;
}

// FNV-1a 64-bit over bytes; used for config fingerprints in CSV rows.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Shortest round-trippable decimal for a double ("%.17g"); CSV cells use this
// so that re-running a sweep reproduces files byte-for-byte.
std::string format_double(double v);

}  // namespace offgrid
