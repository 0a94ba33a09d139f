#pragma once

// Config-driven experiment sweeps mirroring the three reference experiments:
// reconstruction error vs average step size (two signal models), error vs the
// deviation-model parameter theta (jitter width sweep), and error vs step
// size under scaled noise spanning the over- and under-sampled regimes.
// Sweeps emit CSV; every row carries the master seed, the first trial's
// derived stream key, and a hash of the canonical config so any row can be
// reproduced bit-exactly.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "offgrid/io.hpp"
#include "offgrid/reconstruct.hpp"
#include "offgrid/solve.hpp"

namespace offgrid {

// Config problems are reported as this type; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelSpec {
  std::string kind;          // "complex_exponential" | "gaussian"
  std::int64_t s = 0;        // complex_exponential only
  std::int64_t omega = 0;    // complex_exponential only
  std::string psi = "dft";   // transform used for this model's runs
  std::int64_t depth = -1;   // wavelet depth override
  // gaussian model coefficient computation
  std::int64_t truncation = 1200;
  std::int64_t resolution = 4800;
};

struct ExperimentConfig {
  std::string experiment;    // "fig1_step_sweep" | "fig2_theta_sweep" | "fig3_noise_sweep"
  std::int64_t N = 255;
  std::vector<ModelSpec> models;     // fig1: one curve per model; fig2/3: exactly one
  std::vector<std::int64_t> m_list;  // fig1/fig3
  std::vector<double> rho_list;      // fig2
  std::int64_t m = 0;                // fig2
  DeviationDistribution distribution = UniformJitter{0.5};  // fig1/fig3
  NoiseModel noise;                  // fig3 (defaults to uniform_scaled there)
  int trials = 10;
  std::uint64_t master_seed = 1;
  std::string output_path;
  BpdnOptions solver;
  int threads = 1;
  bool validate_operators = true;
};

// Parse + validate a JSON config document. Unknown keys anywhere are errors.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Hash of the canonical (key-sorted, whitespace-free) config serialization.
std::uint64_t config_hash(const ExperimentConfig& config);

struct SweepResult {
  CsvTable csv;
  int nonconverged_trials = 0;  // CLI maps > 0 to exit code 3
};

SweepResult run_fig1(const ExperimentConfig& config);
SweepResult run_fig2(const ExperimentConfig& config);
SweepResult run_fig3(const ExperimentConfig& config);

// Dispatch on config.experiment.
SweepResult run_experiment(const ExperimentConfig& config);

// Small gnuplot script plotting the sweep CSV (optional convenience output).
std::string gnuplot_script(const ExperimentConfig& config, const std::string& csv_path);

}  // namespace offgrid
