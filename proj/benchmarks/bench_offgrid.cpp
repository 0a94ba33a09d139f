// Microbenchmarks for the hot paths: kernel application in both
// representations, the nonuniform transform, the l1-ball projection inside
// the solver, wavelet round trips, and a small end-to-end basis-pursuit
// solve. Run via ./benchmarks/offgrid_bench; no ctest wiring, these are
// for eyeballing regressions, not gating.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/rng.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/solve.hpp"
#include "offgrid/transforms.hpp"

using namespace offgrid;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  return v;
}

void BM_DirichletFactorized(benchmark::State& state) {
  const std::int64_t N = state.range(0), m = N / 2;
  const NonuniformGrid grid = make_grid(UniformJitter{0.5}, m, 1);
  const DirichletKernelOp S =
      make_dirichlet(grid, N, DirichletRepresentation::fourier_factorized);
  const Eigen::VectorXcd f = random_vector(N, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_apply(S, f));
  }
}
BENCHMARK(BM_DirichletFactorized)->Arg(255)->Arg(1023);

void BM_DirichletDirect(benchmark::State& state) {
  const std::int64_t N = state.range(0), m = N / 2;
  const NonuniformGrid grid = make_grid(UniformJitter{0.5}, m, 1);
  const DirichletKernelOp S =
      make_dirichlet(grid, N, DirichletRepresentation::direct_sum);
  const Eigen::VectorXcd f = random_vector(N, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirichlet_apply(S, f));
  }
}
BENCHMARK(BM_DirichletDirect)->Arg(255)->Arg(1023);

void BM_NdftApply(benchmark::State& state) {
  const std::int64_t N = state.range(0), m = N / 2;
  const NonuniformGrid grid = make_grid(UniformJitter{0.5}, m, 3);
  const LinearOperator A = ndft_operator(grid, N);
  const Eigen::VectorXcd g = random_vector(N, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(A.forward(g));
  }
}
BENCHMARK(BM_NdftApply)->Arg(255)->Arg(1023);

void BM_CenteredDftAdjoint(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const Eigen::VectorXcd f = random_vector(N, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(centered_dft_adjoint(f));
  }
}
BENCHMARK(BM_CenteredDftAdjoint)->Arg(255)->Arg(2048);

void BM_ProjectL1Ball(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Eigen::VectorXcd v = 10.0 * random_vector(n, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_l1_ball(v, 5.0));
  }
}
BENCHMARK(BM_ProjectL1Ball)->Arg(1024)->Arg(8192);

void BM_WaveletRoundTrip(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  SparsifyingTransform psi = db2_inverse(N);
  const Eigen::VectorXcd f = random_vector(N, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi.op.forward(psi.op.adjoint(f)));
  }
}
BENCHMARK(BM_WaveletRoundTrip)->Arg(255)->Arg(2015);

void BM_BpdnSmallRecovery(benchmark::State& state) {
  const std::int64_t N = 63, m = 40;
  const FourierSignal sig = random_exponential_signal(3, 31, 8);
  const NonuniformGrid grid = make_grid(UniformJitter{0.5}, m, 9);
  const DirichletKernelOp S = make_dirichlet(grid, N);
  SparsifyingTransform psi = dft_transform(N);
  const LinearOperator A = compose(dirichlet_operator(S), psi.op);
  Eigen::VectorXcd b(m);
  for (std::int64_t k = 0; k < m; ++k) {
    b[k] = eval_signal(sig, grid.points[static_cast<std::size_t>(k)]);
  }
  BpdnOptions opts;
  opts.opt_tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpdn(A, b, opts));
  }
}
BENCHMARK(BM_BpdnSmallRecovery);

}  // namespace

BENCHMARK_MAIN();
