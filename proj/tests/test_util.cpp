#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "offgrid/rng.hpp"
#include "offgrid/util.hpp"

using namespace offgrid;

TEST_SUITE("util") {

TEST_CASE("sinpi and cospi are exact at integers and half-integers") {
  for (int k = -6; k <= 6; ++k) {
    CHECK(sinpi(static_cast<double>(k)) == 0.0);
    CHECK(cospi(static_cast<double>(k)) == ((k % 2 == 0) ? 1.0 : -1.0));
    const double h = static_cast<double>(k) + 0.5;
    CHECK(cospi(h) == 0.0);
    CHECK(std::abs(sinpi(h)) == 1.0);
  }
  // large arguments stay exact: naive sin(pi*x) loses the zero structure here
  CHECK(sinpi(1e10) == 0.0);
  CHECK(sinpi(1e10 + 0.5) == 1.0);
}

TEST_CASE("unit_exp is on the unit circle and periodic") {
  CHECK(unit_exp(0.0) == cplx(1.0, 0.0));
  CHECK(unit_exp(0.25).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(unit_exp(0.25).imag() == doctest::Approx(1.0));
  CHECK(unit_exp(0.5).real() == doctest::Approx(-1.0));
  // exact mod-1 reduction: adding a huge integer does not drift the phase
  const cplx a = unit_exp(0.3);
  const cplx b = unit_exp(0.3 + 1024.0);
  CHECK(std::abs(a - b) <= 1e-12);
  for (double x : {-0.49, -0.1, 0.37, 0.499}) {
    CHECK(std::abs(unit_exp(x)) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("wrap_torus maps into [-1/2, 1/2)") {
  CHECK(wrap_torus(0.5) == -0.5);
  CHECK(wrap_torus(-0.5) == -0.5);
  CHECK(wrap_torus(0.0) == 0.0);
  CHECK(wrap_torus(1.25) == doctest::Approx(0.25));
  CHECK(wrap_torus(-1.25) == doctest::Approx(-0.25));
  CHECK(wrap_torus(7.0) == 0.0);
  for (double x : {-3.7, -0.2, 0.49999, 12.3}) {
    const double w = wrap_torus(x);
    CHECK(w >= -0.5);
    CHECK(w < 0.5);
    // wrapping moves by an integer
    CHECK(std::abs(std::remainder(x - w, 1.0)) <= 1e-12);
  }
}

TEST_CASE("fnv1a64 matches the canonical test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("hello") == 0xa430d84680aabd0bull);
}

TEST_CASE("format_double round-trips exactly") {
  for (double x : {0.1, -1.0 / 3.0, 2.414796e-4, 1e300, 0.0, 42.0}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

}  // TEST_SUITE("util")

TEST_SUITE("rng") {

TEST_CASE("same seed gives the same stream, different seeds differ") {
  Rng a(7), b(7), c(8);
  bool all_equal = true, any_equal_c = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_equal_c = any_equal_c || (va == c.next_u64());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_c);
}

TEST_CASE("split derives independent reproducible streams") {
  const Rng base(99);
  Rng s1 = base.split(1), s1b = base.split(1), s2 = base.split(2);
  CHECK(s1.state_key() == s1b.state_key());
  CHECK(s1.state_key() != s2.state_key());
  CHECK(s1.next_u64() == s1b.next_u64());
  // splitting is const: base itself is unaffected
  Rng fresh(99);
  CHECK(Rng(99).split(1).state_key() == s1b.state_key());
  (void)fresh;
}

TEST_CASE("trial stream layout is master -> row -> trial") {
  CHECK(trial_rng(5, 3, 2).state_key() == Rng(5).split(3).split(2).state_key());
  CHECK(trial_seed_of(5, 3, 2) == trial_rng(5, 3, 2).state_key());
  // neighboring rows and trials give distinct keys
  CHECK(trial_seed_of(5, 3, 2) != trial_seed_of(5, 3, 3));
  CHECK(trial_seed_of(5, 3, 2) != trial_seed_of(5, 4, 2));
}

TEST_CASE("uniform stays in range; integer stays below n") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
    CHECK(rng.integer(7) < 7);
  }
  Rng one(2);
  CHECK(one.integer(1) == 0);
}

TEST_CASE("distribution moments are roughly right") {
  // loose sanity on the inverse-CDF/Box-Muller paths, not a statistical test
  const int n = 40000;
  Rng rng(12);
  double sn = 0, sl = 0, se = 0, vn = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(1.0, 2.0);
    sn += x;
    vn += (x - 1.0) * (x - 1.0);
    sl += rng.laplace(-1.0, 0.5);
    se += rng.exponential(4.0);
  }
  CHECK(sn / n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(vn / n == doctest::Approx(4.0).epsilon(0.08));
  CHECK(sl / n == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(se / n == doctest::Approx(0.25).epsilon(0.05));
}

}  // TEST_SUITE("rng")
