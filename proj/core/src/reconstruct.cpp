#include "offgrid/reconstruct.hpp"

#include <cmath>
#include <stdexcept>

#include "offgrid/rng.hpp"
#include "offgrid/util.hpp"

namespace offgrid {

namespace {

void check_spec(const AcquisitionSpec& spec, const char* who) {
  if (spec.N < 3 || spec.N % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": N must be odd and >= 3");
  }
  if (spec.m < 1) {
    throw std::invalid_argument(std::string(who) + ": m must be positive");
  }
}

}  // namespace

Acquisition acquire(const AcquisitionSpec& spec, const SparsifyingTransform* psi) {
  check_spec(spec, "acquire");

  Acquisition out;
  out.grid = make_grid(spec.distribution, spec.m, spec.seed);
  out.f = discretize(spec.signal, spec.N).samples;

  out.f_tilde.resize(spec.m);
  for (std::int64_t k = 0; k < spec.m; ++k) {
    out.f_tilde[k] = eval_signal(spec.signal,
                                 out.grid.points[static_cast<std::size_t>(k)]);
  }

  out.d = Eigen::VectorXcd::Zero(spec.m);
  if (spec.noise.kind == NoiseKind::uniform_scaled) {
    if (!(spec.noise.divisor > 0.0)) {
      throw std::invalid_argument("acquire: noise divisor must be positive");
    }
    // scale chi = ||f||_1 / sqrt(m) keeps ||d||_2 roughly flat in m; the
    // noise stream is split off the grid stream so the two never collide
    const double chi = out.f.lpNorm<1>() / std::sqrt(static_cast<double>(spec.m));
    Rng noise_rng = Rng(spec.seed).split(1);
    const double amp = chi / spec.noise.divisor;
    for (std::int64_t k = 0; k < spec.m; ++k) {
      out.d[k] = cplx(noise_rng.uniform(-amp, amp), 0.0);
    }
  }

  out.b = out.f_tilde + out.d;
  if (psi != nullptr) {
    if (psi->op.rows != spec.N) {
      throw std::invalid_argument("acquire: transform does not match N");
    }
    out.g_truth = psi->op.adjoint(out.f);
  }
  return out;
}

ReconstructionReport cs_reconstruct(const AcquisitionSpec& spec,
                                    const SparsifyingTransform& psi,
                                    std::optional<double> eta,
                                    std::optional<double> tail,
                                    const BpdnOptions& opts) {
  check_spec(spec, "cs_reconstruct");
  if (psi.op.rows != spec.N) {
    throw std::invalid_argument("cs_reconstruct: transform does not match N");
  }

  const Acquisition acq = acquire(spec, &psi);
  const LinearOperator S = dirichlet_operator(
      make_dirichlet(acq.grid, spec.N, DirichletRepresentation::fourier_factorized));
  const LinearOperator A = compose(S, psi.op);

  const double eta_val = eta ? *eta : acq.d.norm();
  const double tail_val = tail ? *tail : tail_wiener_norm(spec.signal, spec.N);

  BpdnOptions run = opts;
  run.sigma = bpdn_sigma_from_model(eta_val, spec.m, tail_val);

  ReconstructionReport rep;
  rep.solver = bpdn(A, acq.b, run);
  rep.g_hat = rep.solver.solution;
  rep.f_hat = psi.op.forward(rep.g_hat);
  rep.relative_error = relative_error(rep.f_hat, acq.f);
  const double fnorm = acq.f.norm();
  rep.input_noise_level = (fnorm > 0.0) ? acq.d.norm() / fnorm : 0.0;
  rep.sigma_used = run.sigma;
  return rep;
}

ReconstructionReport ls_denoise(const AcquisitionSpec& spec, double tol,
                                std::optional<double> tau, int max_iter) {
  check_spec(spec, "ls_denoise");
  if (spec.m < spec.N) {
    throw std::invalid_argument(
        "ls_denoise: the oversampled path requires m >= N");
  }

  const Acquisition acq = acquire(spec);
  const LinearOperator S = dirichlet_operator(
      make_dirichlet(acq.grid, spec.N, DirichletRepresentation::fourier_factorized));

  ReconstructionReport rep;
  rep.solver = least_squares(S, acq.b, tol, max_iter);
  rep.f_hat = rep.solver.solution;
  rep.relative_error = relative_error(rep.f_hat, acq.f);
  const double fnorm = acq.f.norm();
  rep.input_noise_level = (fnorm > 0.0) ? acq.d.norm() / fnorm : 0.0;

  if (tau) {
    const BoundCheck bound =
        ls_error_bound(*tau, spec.N, spec.m, acq.d.norm(),
                       tail_wiener_norm(spec.signal, spec.N));
    if (bound.applicable) rep.theoretical_bound = bound.value;
  }
  return rep;
}

ReconstructionReport repeated_acquisition_denoise(
    const std::vector<AcquisitionSpec>& specs, double tol, int max_iter) {
  if (specs.empty()) {
    throw std::invalid_argument("repeated_acquisition_denoise: no acquisitions");
  }
  const std::int64_t N = specs.front().N;
  std::int64_t total_m = 0;
  for (const auto& spec : specs) {
    check_spec(spec, "repeated_acquisition_denoise");
    if (spec.N != N) {
      throw std::invalid_argument(
          "repeated_acquisition_denoise: all acquisitions must share N");
    }
    total_m += spec.m;
  }
  if (total_m < N) {
    throw std::invalid_argument(
        "repeated_acquisition_denoise: stacked system must have m >= N");
  }

  std::vector<Acquisition> acqs;
  std::vector<DirichletKernelOp> kernels;
  acqs.reserve(specs.size());
  kernels.reserve(specs.size());
  Eigen::VectorXcd b(total_m);
  Eigen::VectorXcd d(total_m);
  Eigen::Index at = 0;
  for (const auto& spec : specs) {
    acqs.push_back(acquire(spec));
    const Acquisition& acq = acqs.back();
    kernels.push_back(make_dirichlet(acq.grid, N,
                                     DirichletRepresentation::fourier_factorized));
    b.segment(at, spec.m) = acq.b;
    d.segment(at, spec.m) = acq.d;
    at += spec.m;
  }

  const LinearOperator A = concat_acquisitions(kernels);

  ReconstructionReport rep;
  rep.solver = least_squares(A, b, tol, max_iter);
  rep.f_hat = rep.solver.solution;
  rep.relative_error = relative_error(rep.f_hat, acqs.front().f);
  const double fnorm = acqs.front().f.norm();
  rep.input_noise_level = (fnorm > 0.0) ? d.norm() / fnorm : 0.0;

  at = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const LinearOperator Si = dirichlet_operator(kernels[i]);
    rep.per_acquisition_residuals.push_back(
        (Si.forward(rep.f_hat) - b.segment(at, specs[i].m)).norm());
    at += specs[i].m;
  }
  return rep;
}

Eigen::VectorXcd continuous_reconstruct(const ReconstructionReport& report,
                                        const std::vector<double>& xs) {
  if (report.f_hat.size() == 0) {
    throw std::invalid_argument("continuous_reconstruct: empty reconstruction");
  }
  const Eigen::VectorXcd c = centered_dft_adjoint(report.f_hat);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    out[static_cast<Eigen::Index>(j)] = continuous_eval(c, xs[j]);
  }
  return out;
}

}  // namespace offgrid
