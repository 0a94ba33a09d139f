// offgrid-cs: command line front end for the off-the-grid sampling library.
//
// Two groups of subcommands. The sweep runners (fig1, fig2, fig3, run) are
// driven entirely by a JSON config file and write the sweep CSV; the
// diagnostics (theta, gamma, singular-bounds, interp-error, dot-test, ric,
// grid, dump-op, make-signal) are thin wrappers over single library calls
// and print one CSV record (or a small table) to stdout.
//
// Exit codes: 0 on success, 2 on config or argument errors, 3 when any sweep
// trial's solver failed to converge (the CSV is still written in full).

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "offgrid/analysis.hpp"
#include "offgrid/experiments.hpp"
#include "offgrid/io.hpp"
#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/reconstruct.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/transforms.hpp"
#include "offgrid/util.hpp"

namespace {

using namespace offgrid;

// ---- shared option bundles --------------------------------------------------------

// Deviation-distribution flags shared by every diagnostic that draws a grid.
// Kind names match the config-file vocabulary.
struct DistOptions {
  std::string kind = "uniform_jitter";
  double rho = 0.5;
  double mu = 0.0;
  double sigma = 1e-3;
  double b = 1e-3;
  double lambda = 500.0;
  double value = 0.0;
  std::int64_t p = 1;
  std::int64_t nbar = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dist", kind,
                    "deviation distribution: uniform_jitter | uniform | "
                    "discrete_uniform | normal | laplace | exponential | degenerate")
        ->capture_default_str();
    cmd->add_option("--rho", rho, "uniform_jitter half-width factor")->capture_default_str();
    cmd->add_option("--mu", mu, "location (uniform, discrete_uniform, normal, laplace)")
        ->capture_default_str();
    cmd->add_option("--sigma", sigma, "normal standard deviation")->capture_default_str();
    cmd->add_option("--b", b, "laplace scale")->capture_default_str();
    cmd->add_option("--lambda", lambda, "exponential rate")->capture_default_str();
    cmd->add_option("--value", value, "degenerate deviation value")->capture_default_str();
    cmd->add_option("--p", p, "uniform / discrete_uniform width in grid cells")
        ->capture_default_str();
    cmd->add_option("--nbar", nbar, "discrete_uniform support size")->capture_default_str();
  }

  DeviationDistribution build() const {
    if (kind == "uniform_jitter") return UniformJitter{rho};
    if (kind == "uniform") return UniformGeneral{mu, p};
    if (kind == "discrete_uniform") return DiscreteUniform{mu, p, nbar};
    if (kind == "normal") return Normal{mu, sigma};
    if (kind == "laplace") return Laplace{mu, b};
    if (kind == "exponential") return Exponential{lambda};
    if (kind == "degenerate") return Degenerate{value};
    throw std::invalid_argument("unknown distribution kind: " + kind);
  }
};

// Builds any named operator in the library, for dot-test and dump-op.
LinearOperator build_operator(const std::string& op, std::int64_t N, std::int64_t m,
                              const DeviationDistribution& dist, std::uint64_t seed,
                              std::int64_t depth) {
  if (op == "dirichlet" || op == "dirichlet_direct") {
    const auto rep = (op == "dirichlet") ? DirichletRepresentation::fourier_factorized
                                         : DirichletRepresentation::direct_sum;
    return dirichlet_operator(make_dirichlet(make_grid(dist, m, seed), N, rep));
  }
  if (op == "ndft") return ndft_operator(make_grid(dist, m, seed), N);
  if (op == "dft" || op == "dft_adjoint" || op == "identity" || op == "haar" ||
      op == "db2") {
    return make_transform(transform_kind_from_string(op), N, depth).op;
  }
  throw std::invalid_argument("unknown operator: " + op);
}

// ---- sweep runners ----------------------------------------------------------------

struct SweepCli {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::string> plot;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON experiment config")->required();
    cmd->add_option("--seed", seed, "override the config's master seed");
    cmd->add_option("--out", out, "override the config's output path");
    cmd->add_option("--threads", threads, "override the config's trial parallelism");
    cmd->add_option("--plot", plot, "also emit a gnuplot script to this path");
  }
};

int run_sweep(const SweepCli& cli, const std::string& expected) {
  ExperimentConfig config = load_config(cli.config_path);
  if (cli.seed) config.master_seed = *cli.seed;
  if (cli.out) config.output_path = *cli.out;
  if (cli.threads) config.threads = *cli.threads;
  if (!expected.empty() && config.experiment != expected) {
    throw ConfigError("config experiment is '" + config.experiment +
                      "' but the subcommand expects '" + expected + "'");
  }

  const SweepResult result = run_experiment(config);
  if (config.output_path.empty()) {
    std::cout << result.csv.to_string();
  } else {
    write_csv(result.csv, config.output_path);
    std::fprintf(stderr, "wrote %zu rows to %s\n", result.csv.rows.size(),
                 config.output_path.c_str());
  }

  if (cli.plot) {
    if (config.output_path.empty()) {
      throw ConfigError("--plot needs a CSV on disk; give --out or set output_path");
    }
    write_text_file(*cli.plot, gnuplot_script(config, config.output_path));
  }

  if (result.nonconverged_trials > 0) {
    std::fprintf(stderr, "%d trial(s) did not converge (rows written and flagged)\n",
                 result.nonconverged_trials);
    return 3;
  }
  return 0;
}

// ---- diagnostics ------------------------------------------------------------------

int run_theta(const DistOptions& dist_cli, std::int64_t N, std::int64_t m, bool mc,
              std::int64_t trials, std::uint64_t seed) {
  const DeviationDistribution dist = dist_cli.build();
  const double value = theta(dist, N, m);
  const std::int64_t jmax = theta_j_max(N, m);
  if (mc) {
    const ThetaEstimate est = theta_monte_carlo(dist, N, m, trials, seed);
    std::printf("# kind,N,m,j_max,theta,theta_mc,mc_std_error\n");
    std::printf("%s,%lld,%lld,%lld,%s,%s,%s\n", distribution_kind(dist),
                static_cast<long long>(N), static_cast<long long>(m),
                static_cast<long long>(jmax), format_double(value).c_str(),
                format_double(est.value).c_str(), format_double(est.std_error).c_str());
  } else {
    std::printf("# kind,N,m,j_max,theta\n");
    std::printf("%s,%lld,%lld,%lld,%s\n", distribution_kind(dist),
                static_cast<long long>(N), static_cast<long long>(m),
                static_cast<long long>(jmax), format_double(value).c_str());
  }
  return 0;
}

// gamma and singular-bounds share one record shape:
// kind, N, depth, gamma, alpha, beta (bare single line, no header).
int run_gamma(const std::string& psi_kind, std::int64_t N, std::int64_t depth,
              bool allow_large, int threads, int iters, std::uint64_t seed) {
  SparsifyingTransform psi = make_transform(transform_kind_from_string(psi_kind), N, depth);
  const double g = gamma(psi, allow_large, threads);
  const SingularBounds sb = singular_bounds(psi, iters, seed);
  std::printf("%s,%lld,%lld,%s,%s,%s\n", transform_kind_name(psi.kind),
              static_cast<long long>(N), static_cast<long long>(psi.levels),
              format_double(g).c_str(), format_double(sb.alpha).c_str(),
              format_double(sb.beta).c_str());
  if (!sb.converged) {
    std::fprintf(stderr, "warning: singular-bound iteration did not meet its "
                         "residual certificate\n");
  }
  return 0;
}

int run_interp_error(const DistOptions& dist_cli, std::int64_t N, std::int64_t m,
                     std::uint64_t grid_seed, const std::string& signal_path,
                     std::int64_t s, std::int64_t omega, std::uint64_t signal_seed) {
  const FourierSignal sig = signal_path.empty()
                                ? random_exponential_signal(s, omega, signal_seed)
                                : read_signal(signal_path);
  const DeviationDistribution dist = dist_cli.build();
  const NonuniformGrid grid = make_grid(dist, m, grid_seed);
  const ErrorBreakdown err = interp_error_exact(sig, grid, N);
  std::printf("# kind,N,m,l1,l1_bound,l2,l2_bound,sup,sup_bound\n");
  std::printf("%s,%lld,%lld,%s,%s,%s,%s,%s,%s\n", distribution_kind(dist),
              static_cast<long long>(N), static_cast<long long>(m),
              format_double(err.per_sample.lpNorm<1>()).c_str(),
              format_double(err.p_norm_bounds.at(1)).c_str(),
              format_double(err.per_sample.lpNorm<2>()).c_str(),
              format_double(err.p_norm_bounds.at(2)).c_str(),
              format_double(err.per_sample.lpNorm<Eigen::Infinity>()).c_str(),
              format_double(err.sup_bound).c_str());
  return 0;
}

int run_dot_test(const DistOptions& dist_cli, const std::string& op, std::int64_t N,
                 std::int64_t m, std::int64_t depth, int probes, std::uint64_t seed) {
  const LinearOperator A = build_operator(op, N, m, dist_cli.build(), seed, depth);
  const double defect = dot_test(A, probes, seed);
  std::printf("# op,N,m,probes,defect\n");
  std::printf("%s,%lld,%lld,%d,%s\n", op.c_str(), static_cast<long long>(N),
              static_cast<long long>(m), probes, format_double(defect).c_str());
  return 0;
}

int run_ric(const DistOptions& dist_cli, const std::string& psi_kind, std::int64_t N,
            std::int64_t m, std::int64_t s, int draws, std::uint64_t seed,
            std::int64_t max_supports) {
  const DeviationDistribution dist = dist_cli.build();
  SparsifyingTransform psi = make_transform(transform_kind_from_string(psi_kind), N);
  // Normalize so the on-grid full-sample case is an exact isometry: the
  // kernel rows carry weight m/N on average, so sqrt(N/m) S Psi has
  // unit-norm columns in expectation.
  const double scale = std::sqrt(static_cast<double>(N) / static_cast<double>(m));
  std::printf("# draw,kind,psi,N,m,s,delta\n");
  double mean = 0.0;
  for (int i = 0; i < draws; ++i) {
    const NonuniformGrid grid = make_grid(dist, m, seed + static_cast<std::uint64_t>(i));
    const auto S = make_dirichlet(grid, N);
    const Eigen::MatrixXcd A =
        scale * dense_matrix(compose(dirichlet_operator(S), psi.op));
    const double delta = empirical_ric(A, s, max_supports);
    mean += delta / static_cast<double>(draws);
    std::printf("%d,%s,%s,%lld,%lld,%lld,%s\n", i, distribution_kind(dist),
                transform_kind_name(psi.kind), static_cast<long long>(N),
                static_cast<long long>(m), static_cast<long long>(s),
                format_double(delta).c_str());
  }
  std::printf("# mean_delta=%s\n", format_double(mean).c_str());
  return 0;
}

int run_grid(const DistOptions& dist_cli, std::int64_t m, std::uint64_t seed,
             const std::string& out) {
  const NonuniformGrid grid = make_grid(dist_cli.build(), m, seed);
  if (out.empty()) {
    std::cout << grid_to_text(grid);
  } else {
    write_grid(grid, out);
  }
  return 0;
}

int run_dump_op(const DistOptions& dist_cli, const std::string& op, std::int64_t N,
                std::int64_t m, std::int64_t depth, std::uint64_t seed,
                const std::string& out) {
  write_dense_operator(build_operator(op, N, m, dist_cli.build(), seed, depth), out);
  return 0;
}

int run_make_signal(const std::string& kind, std::int64_t s, std::int64_t omega,
                    std::uint64_t seed, std::int64_t truncation, std::int64_t resolution,
                    const std::string& out) {
  FourierSignal sig;
  if (kind == "random_exponential") {
    sig = random_exponential_signal(s, omega, seed);
  } else if (kind == "gaussian") {
    sig = gaussian_model_coeffs(truncation, resolution);
  } else {
    throw std::invalid_argument("unknown signal kind: " + kind);
  }
  if (out.empty()) {
    std::cout << signal_to_text(sig);
  } else {
    write_signal(sig, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"off-the-grid sampling experiments and diagnostics"};
  app.require_subcommand(1);
  int rc = 0;

  // sweep runners
  SweepCli fig1, fig2, fig3, any;
  auto* fig1_cmd = app.add_subcommand("fig1", "error vs average step size, two signal models");
  fig1.attach(fig1_cmd);
  fig1_cmd->callback([&] { rc = run_sweep(fig1, "fig1_step_sweep"); });
  auto* fig2_cmd = app.add_subcommand("fig2", "error vs deviation-model parameter theta");
  fig2.attach(fig2_cmd);
  fig2_cmd->callback([&] { rc = run_sweep(fig2, "fig2_theta_sweep"); });
  auto* fig3_cmd = app.add_subcommand("fig3", "error vs step size under scaled noise");
  fig3.attach(fig3_cmd);
  fig3_cmd->callback([&] { rc = run_sweep(fig3, "fig3_noise_sweep"); });
  auto* run_cmd = app.add_subcommand("run", "run whichever sweep the config names");
  any.attach(run_cmd);
  run_cmd->callback([&] { rc = run_sweep(any, ""); });

  // theta
  {
    auto* cmd = app.add_subcommand("theta", "deviation-model parameter for a distribution");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto N = std::make_shared<std::int64_t>(255);
    auto m = std::make_shared<std::int64_t>(36);
    auto mc = std::make_shared<bool>(false);
    auto trials = std::make_shared<std::int64_t>(100000);
    auto seed = std::make_shared<std::uint64_t>(1);
    cmd->add_option("--N", *N, "uniform grid size (odd)")->capture_default_str();
    cmd->add_option("--m", *m, "sample count")->capture_default_str();
    cmd->add_flag("--mc", *mc, "also report a Monte-Carlo estimate");
    cmd->add_option("--trials", *trials, "Monte-Carlo draws")->capture_default_str();
    cmd->add_option("--seed", *seed, "Monte-Carlo seed")->capture_default_str();
    cmd->callback([=, &rc] { rc = run_theta(*dist, *N, *m, *mc, *trials, *seed); });
  }

  // gamma / singular-bounds (same record: kind, N, depth, gamma, alpha, beta)
  for (const char* name : {"gamma", "singular-bounds"}) {
    auto* cmd = app.add_subcommand(
        name, std::string(name) == "gamma"
                  ? "DFT-incoherence of a sparsifying transform"
                  : "extreme singular values of a sparsifying transform");
    auto psi = std::make_shared<std::string>("dft");
    auto N = std::make_shared<std::int64_t>(255);
    auto depth = std::make_shared<std::int64_t>(-1);
    auto allow_large = std::make_shared<bool>(false);
    auto threads = std::make_shared<int>(1);
    auto iters = std::make_shared<int>(200);
    auto seed = std::make_shared<std::uint64_t>(0x5eed);
    cmd->add_option("--psi", *psi, "transform kind: dft | dft_adjoint | identity | haar | db2")
        ->capture_default_str();
    cmd->add_option("--N", *N, "sample-space dimension")->capture_default_str();
    cmd->add_option("--depth", *depth, "wavelet depth (-1 = kind default)")
        ->capture_default_str();
    cmd->add_flag("--allow-large", *allow_large, "lift the dense-cost guard above N = 4096");
    cmd->add_option("--threads", *threads, "column-scan parallelism")->capture_default_str();
    cmd->add_option("--iters", *iters, "power-iteration budget (>= 50)")->capture_default_str();
    cmd->add_option("--seed", *seed, "power-iteration start seed")->capture_default_str();
    cmd->callback([=, &rc] {
      rc = run_gamma(*psi, *N, *depth, *allow_large, *threads, *iters, *seed);
    });
  }

  // interp-error
  {
    auto* cmd = app.add_subcommand("interp-error",
                                   "exact interpolation error of a signal on a drawn grid");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto N = std::make_shared<std::int64_t>(63);
    auto m = std::make_shared<std::int64_t>(40);
    auto grid_seed = std::make_shared<std::uint64_t>(1);
    auto signal = std::make_shared<std::string>();
    auto s = std::make_shared<std::int64_t>(8);
    auto omega = std::make_shared<std::int64_t>(127);
    auto signal_seed = std::make_shared<std::uint64_t>(7);
    cmd->add_option("--N", *N, "uniform grid size (odd)")->capture_default_str();
    cmd->add_option("--m", *m, "sample count")->capture_default_str();
    cmd->add_option("--grid-seed", *grid_seed, "grid draw seed")->capture_default_str();
    cmd->add_option("--signal", *signal, "signal file (two-column text); default random");
    cmd->add_option("--s", *s, "random signal sparsity")->capture_default_str();
    cmd->add_option("--omega", *omega, "random signal max frequency")->capture_default_str();
    cmd->add_option("--signal-seed", *signal_seed, "random signal seed")->capture_default_str();
    cmd->callback([=, &rc] {
      rc = run_interp_error(*dist, *N, *m, *grid_seed, *signal, *s, *omega, *signal_seed);
    });
  }

  // dot-test
  {
    auto* cmd = app.add_subcommand("dot-test", "adjoint consistency defect of an operator");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto op = std::make_shared<std::string>("dirichlet");
    auto N = std::make_shared<std::int64_t>(255);
    auto m = std::make_shared<std::int64_t>(100);
    auto depth = std::make_shared<std::int64_t>(-1);
    auto probes = std::make_shared<int>(20);
    auto seed = std::make_shared<std::uint64_t>(1);
    cmd->add_option("--op", *op,
                    "dirichlet | dirichlet_direct | ndft | dft | dft_adjoint | "
                    "identity | haar | db2")
        ->capture_default_str();
    cmd->add_option("--N", *N, "column-space dimension")->capture_default_str();
    cmd->add_option("--m", *m, "sample count (grid-backed operators)")->capture_default_str();
    cmd->add_option("--depth", *depth, "wavelet depth (-1 = kind default)")
        ->capture_default_str();
    cmd->add_option("--probes", *probes, "random probe pairs")->capture_default_str();
    cmd->add_option("--seed", *seed, "probe seed")->capture_default_str();
    cmd->callback([=, &rc] {
      rc = run_dot_test(*dist, *op, *N, *m, *depth, *probes, *seed);
    });
  }

  // ric
  {
    auto* cmd = app.add_subcommand("ric", "empirical restricted isometry constant over grid draws");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto psi = std::make_shared<std::string>("dft");
    auto N = std::make_shared<std::int64_t>(31);
    auto m = std::make_shared<std::int64_t>(16);
    auto s = std::make_shared<std::int64_t>(2);
    auto draws = std::make_shared<int>(20);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto max_supports = std::make_shared<std::int64_t>(20000);
    cmd->add_option("--psi", *psi, "sparsifying transform")->capture_default_str();
    cmd->add_option("--N", *N, "uniform grid size (odd)")->capture_default_str();
    cmd->add_option("--m", *m, "sample count")->capture_default_str();
    cmd->add_option("--s", *s, "sparsity level (<= 3)")->capture_default_str();
    cmd->add_option("--draws", *draws, "independent grid draws")->capture_default_str();
    cmd->add_option("--seed", *seed, "first grid seed")->capture_default_str();
    cmd->add_option("--max-supports", *max_supports, "support enumeration budget")
        ->capture_default_str();
    cmd->callback([=, &rc] {
      rc = run_ric(*dist, *psi, *N, *m, *s, *draws, *seed, *max_supports);
    });
  }

  // grid
  {
    auto* cmd = app.add_subcommand("grid", "draw a perturbed sampling grid");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto m = std::make_shared<std::int64_t>(36);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--m", *m, "sample count")->capture_default_str();
    cmd->add_option("--seed", *seed, "draw seed")->capture_default_str();
    cmd->add_option("--out", *out, "output path (default stdout)");
    cmd->callback([=, &rc] { rc = run_grid(*dist, *m, *seed, *out); });
  }

  // dump-op
  {
    auto* cmd = app.add_subcommand("dump-op", "write an operator's dense matrix to a text file");
    auto dist = std::make_shared<DistOptions>();
    dist->attach(cmd);
    auto op = std::make_shared<std::string>("dirichlet");
    auto N = std::make_shared<std::int64_t>(63);
    auto m = std::make_shared<std::int64_t>(40);
    auto depth = std::make_shared<std::int64_t>(-1);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--op", *op, "operator name (see dot-test)")->capture_default_str();
    cmd->add_option("--N", *N, "column-space dimension")->capture_default_str();
    cmd->add_option("--m", *m, "sample count (grid-backed operators)")->capture_default_str();
    cmd->add_option("--depth", *depth, "wavelet depth (-1 = kind default)")
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "grid seed")->capture_default_str();
    cmd->add_option("--out", *out, "output path")->required();
    cmd->callback([=, &rc] { rc = run_dump_op(*dist, *op, *N, *m, *depth, *seed, *out); });
  }

  // make-signal
  {
    auto* cmd = app.add_subcommand("make-signal", "generate a signal file");
    auto kind = std::make_shared<std::string>("random_exponential");
    auto s = std::make_shared<std::int64_t>(8);
    auto omega = std::make_shared<std::int64_t>(127);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto truncation = std::make_shared<std::int64_t>(1200);
    auto resolution = std::make_shared<std::int64_t>(4800);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--kind", *kind, "random_exponential | gaussian")->capture_default_str();
    cmd->add_option("--s", *s, "random signal sparsity")->capture_default_str();
    cmd->add_option("--omega", *omega, "random signal max frequency")->capture_default_str();
    cmd->add_option("--seed", *seed, "random signal seed")->capture_default_str();
    cmd->add_option("--truncation", *truncation, "gaussian coefficient truncation")
        ->capture_default_str();
    cmd->add_option("--resolution", *resolution, "gaussian quadrature points")
        ->capture_default_str();
    cmd->add_option("--out", *out, "output path (default stdout)");
    cmd->callback([=, &rc] {
      rc = run_make_signal(*kind, *s, *omega, *seed, *truncation, *resolution, *out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "argument error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "argument error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
