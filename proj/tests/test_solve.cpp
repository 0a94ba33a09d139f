#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"
#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/rng.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/solve.hpp"
#include "offgrid/transforms.hpp"
#include "offgrid/util.hpp"

using namespace offgrid;

namespace {

LinearOperator dense_op(const Eigen::MatrixXcd& M) {
  LinearOperator A;
  A.rows = M.rows();
  A.cols = M.cols();
  A.forward = [M](const Eigen::VectorXcd& x) { return Eigen::VectorXcd(M * x); };
  A.adjoint = [M](const Eigen::VectorXcd& y) {
    return Eigen::VectorXcd(M.adjoint() * y);
  };
  return A;
}

}  // namespace

TEST_SUITE("solve") {

TEST_CASE("l1-ball projection: soft threshold on the moduli, phases kept") {
  Eigen::VectorXcd x(2);
  x << cplx(3, 0), cplx(1, 0);
  Eigen::VectorXcd p = project_l1_ball(x, 2.0);
  CHECK(std::abs(p[0] - cplx(2, 0)) <= 1e-14);
  CHECK(std::abs(p[1]) <= 1e-14);

  // already feasible: unchanged
  p = project_l1_ball(x, 5.0);
  CHECK((p - x).norm() <= 1e-14);

  // radius zero: everything collapses
  p = project_l1_ball(x, 0.0);
  CHECK(p.norm() == 0.0);

  CHECK_THROWS_AS(project_l1_ball(x, -1.0), std::invalid_argument);

  // complex phases survive and the constraint is tight
  Rng rng(12);
  Eigen::VectorXcd z(40);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z[i] = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  }
  const double radius = 0.37 * z.lpNorm<1>();
  const Eigen::VectorXcd pz = project_l1_ball(z, radius);
  CHECK(pz.lpNorm<1>() == doctest::Approx(radius).epsilon(1e-12));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(pz[i]) > 1e-12) {
      // same phase as the input entry
      const cplx ratio = pz[i] / z[i];
      CHECK(std::abs(ratio.imag()) <= 1e-12);
      CHECK(ratio.real() > 0.0);
    }
  }
}

TEST_CASE("bpdn against the identity: the answer is soft shrinkage") {
  const Eigen::Index n = 8;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  b[0] = cplx(5.0, 0.0);
  BpdnOptions opts;
  opts.sigma = 1.0;
  opts.opt_tol = 1e-8;
  const SolveReport rep = bpdn(identity_operator(n), b, opts);
  CHECK(rep.converged);
  // min ||x||_1 s.t. ||x - b|| <= 1 pulls the spike toward zero by sigma
  CHECK(std::abs(rep.solution[0] - cplx(4.0, 0.0)) <= 1e-5);
  CHECK(rep.residual_norm == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.one_norm == doctest::Approx(4.0).epsilon(1e-5));
  CHECK_FALSE(rep.history.empty());
}

TEST_CASE("bpdn short-circuits when the data are already within budget") {
  Eigen::VectorXcd b(3);
  b << cplx(0.1, 0), cplx(0, 0.1), cplx(0.1, 0.1);
  BpdnOptions opts;
  opts.sigma = 1.0;
  const SolveReport rep = bpdn(identity_operator(3), b, opts);
  CHECK(rep.converged);
  CHECK(rep.solution.norm() == 0.0);
  CHECK(rep.one_norm == 0.0);
  CHECK(rep.iterations == 0);
}

TEST_CASE("sigma budget combines noise level and interpolation tail") {
  CHECK(bpdn_sigma_from_model(0.5, 100, 0.01) ==
        doctest::Approx(0.5 + 2.0 * 10.0 * 0.01).epsilon(1e-15));
  CHECK(bpdn_sigma_from_model(0.25, 1, 0.0) == 0.25);
  CHECK_THROWS_AS(bpdn_sigma_from_model(0.0, 0, 0.0), std::invalid_argument);
}

TEST_CASE("lasso with radius zero returns the zero vector") {
  Rng rng(3);
  Eigen::MatrixXcd M(6, 4);
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) M(i, j) = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  }
  const Eigen::VectorXcd b = Eigen::VectorXcd::Ones(6);
  const SolveReport rep = lasso_subproblem(dense_op(M), b, 0.0,
                                           Eigen::VectorXcd::Zero(4), BpdnOptions{});
  CHECK(rep.solution.norm() == 0.0);
  CHECK(rep.residual_norm == doctest::Approx(b.norm()).epsilon(1e-12));
}

TEST_CASE("noiseless bpdn recovers an exponential-sparse signal off the grid") {
  const std::int64_t N = 63, s = 3, m = 40;
  int hits = 0;
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    const FourierSignal sig = random_exponential_signal(s, 31, 1000 + trial);
    const NonuniformGrid grid = make_grid(UniformJitter{0.5}, m, 2000 + trial);
    const DirichletKernelOp S = make_dirichlet(grid, N);
    // solve for the sparse coefficient vector: the unknown fed to the l1
    // objective must be the transform coefficients, not the samples
    SparsifyingTransform psi = dft_transform(N);
    const LinearOperator A = compose(dirichlet_operator(S), psi.op);
    Eigen::VectorXcd b(m);
    for (std::int64_t k = 0; k < m; ++k) {
      b[k] = eval_signal(sig, grid.points[k]);
    }
    BpdnOptions opts;
    // sigma = 0: for an in-band signal the off-grid samples are exactly
    // representable, so the residual can reach the fp floor
    opts.opt_tol = 1e-8;
    opts.max_outer = 60;
    opts.max_inner = 400;
    const SolveReport rep = bpdn(A, b, opts);
    const Eigen::VectorXcd truth = discretize(sig, N).samples;
    const Eigen::VectorXcd f_hat = psi.op.forward(rep.solution);
    if ((f_hat - truth).norm() <= 1e-4 * truth.norm()) ++hits;

    // the recovered support (top-s coefficient bins) matches the spectrum
    std::vector<std::pair<double, std::int64_t>> mag(static_cast<std::size_t>(N));
    for (std::int64_t u = 0; u < N; ++u) {
      mag[static_cast<std::size_t>(u)] = {std::abs(rep.solution[u]),
                                          u - (N - 1) / 2};
    }
    std::sort(mag.begin(), mag.end(),
              [](const auto& a, const auto& b2) { return a.first > b2.first; });
    std::set<std::int64_t> support;
    for (std::int64_t i = 0; i < s; ++i) {
      support.insert(mag[static_cast<std::size_t>(i)].second);
    }
    std::set<std::int64_t> expected;
    for (const auto& [freq, coeff] : sig.coeffs) expected.insert(freq);
    CHECK(support == expected);
  }
  CHECK(hits == 3);
}

TEST_CASE("least squares agrees with the dense normal-equations solution") {
  Rng rng(9);
  Eigen::MatrixXcd M(24, 8);
  for (Eigen::Index i = 0; i < 24; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) M(i, j) = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  }
  Eigen::VectorXcd b(24);
  for (Eigen::Index i = 0; i < 24; ++i) b[i] = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  const SolveReport rep = least_squares(dense_op(M), b, 1e-12, 200);
  CHECK(rep.converged);
  const Eigen::VectorXcd ref =
      (M.adjoint() * M).ldlt().solve(Eigen::VectorXcd(M.adjoint() * b));
  CHECK((rep.solution - ref).norm() <= 1e-10 * ref.norm());
  CHECK(rep.residual_norm ==
        doctest::Approx((M * ref - b).norm()).epsilon(1e-10));
}

TEST_CASE("least squares on a unitary operator inverts it in one step") {
  const std::int64_t N = 31;
  const LinearOperator F = centered_dft_operator(N);
  Rng rng(4);
  Eigen::VectorXcd b(N);
  for (Eigen::Index i = 0; i < N; ++i) b[i] = cplx(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  const SolveReport rep = least_squares(F, b);
  CHECK(rep.converged);
  CHECK((F.forward(rep.solution) - b).norm() <= 1e-9 * b.norm());
  CHECK(rep.iterations <= 3);
}

TEST_CASE("bpdn reports honest non-convergence under a starved budget") {
  const std::int64_t N = 63, m = 24;
  const FourierSignal sig = random_exponential_signal(4, 31, 7);
  const NonuniformGrid grid = make_grid(UniformJitter{0.06}, m, 8);
  const LinearOperator A = dirichlet_operator(make_dirichlet(grid, N));
  Eigen::VectorXcd b(m);
  for (std::int64_t k = 0; k < m; ++k) b[k] = eval_signal(sig, grid.points[k]);
  BpdnOptions opts;
  opts.sigma = 0.0;
  opts.max_outer = 2;
  opts.max_inner = 3;
  const SolveReport rep = bpdn(A, b, opts);
  CHECK_FALSE(rep.converged);
  CHECK(rep.outer_iterations <= 2);
  CHECK(rep.solution.size() == N);  // best iterate still returned
}

}  // TEST_SUITE("solve")
