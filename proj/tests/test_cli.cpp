// End-to-end checks of the command-line tool: spawns the built binary, so the
// test target defines OFFGRID_CS_PATH to its location.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "offgrid/io.hpp"
#include "offgrid/util.hpp"

using namespace offgrid;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

int counter = 0;

CliResult run_cli(const std::string& args) {
  const std::string tag = std::to_string(++counter);
  const std::string out_path = "cli_stdout_" + tag + ".txt";
  const std::string err_path = "cli_stderr_" + tag + ".txt";
  const std::string cmd = std::string(OFFGRID_CS_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int raw = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = read_text_file(out_path);
  res.err = read_text_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content) : path(name) {
    write_text_file(path, content);
  }
  explicit TempFile(const std::string& name) : path(name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kMicroFig3 = R"({
  "experiment": "fig3_noise_sweep",
  "N": 31,
  "models": [{"kind": "complex_exponential", "s": 2, "omega": 15, "psi": "dft"}],
  "m_list": [62, 31],
  "distribution": {"kind": "uniform_jitter", "rho": 0.5},
  "noise": {"kind": "uniform_scaled", "divisor": 1000},
  "trials": 2,
  "master_seed": 11
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("theta: the half-cell jitter closed form is exactly zero") {
  const CliResult res =
      run_cli("theta --dist uniform_jitter --rho 0.5 --N 255 --m 36");
  REQUIRE(res.exit_code == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "# kind,N,m,j_max,theta");
  const auto cells = fields_of(lines[1]);
  REQUIRE(cells.size() == 5);
  CHECK(cells[0] == "uniform_jitter");
  CHECK(cells[3] == "14");  // widest aliasing offset probed
  CHECK(cells[4] == "0");
}

TEST_CASE("theta: invalid arguments exit with code 2") {
  CHECK(run_cli("theta --dist uniform_jitter --rho 0.5 --N 254 --m 36").exit_code ==
        2);
  CHECK(run_cli("theta --dist uniform_jitter --rho -1 --N 255 --m 36").exit_code ==
        2);
  CHECK(run_cli("theta --dist no_such_law --N 255 --m 36").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
}

TEST_CASE("gamma and singular-bounds share the single-record shape") {
  const CliResult dft = run_cli("gamma --psi dft --N 255");
  REQUIRE(dft.exit_code == 0);
  const auto lines = lines_of(dft.out);
  REQUIRE(lines.size() == 1);
  const auto cells = fields_of(lines[0]);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0] == "dft");
  CHECK(cells[1] == "255");
  CHECK(std::strtod(cells[3].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::strtod(cells[4].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::strtod(cells[5].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-6));

  const CliResult ident = run_cli("gamma --psi identity --N 255");
  REQUIRE(ident.exit_code == 0);
  CHECK(std::strtod(fields_of(ident.out)[3].c_str(), nullptr) ==
        doctest::Approx(std::sqrt(255.0)).epsilon(1e-9));

  const CliResult sb = run_cli("singular-bounds --psi db2 --N 64");
  REQUIRE(sb.exit_code == 0);
  const auto sb_cells = fields_of(lines_of(sb.out)[0]);
  CHECK(sb_cells[0] == "db2");
  CHECK(std::strtod(sb_cells[4].c_str(), nullptr) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::strtod(sb_cells[5].c_str(), nullptr) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sweeps: config validation failures exit with code 2") {
  TempFile bad("cli_bad_config.json", R"({
    "experiment": "fig1_step_sweep",
    "N": 31,
    "models": [{"kind": "complex_exponential", "s": 2, "omega": 15}],
    "m_list": [20],
    "bogus_key": 1
  })");
  const CliResult res = run_cli("fig1 --config " + bad.path);
  CHECK(res.exit_code == 2);
  CHECK(res.err.find("bogus_key") != std::string::npos);

  // a well-formed config handed to the wrong subcommand is also refused
  TempFile fig3(std::string("cli_fig3_config.json"), kMicroFig3);
  CHECK(run_cli("fig1 --config " + fig3.path).exit_code == 2);
  // while the generic runner dispatches on the config's own name
  CHECK(run_cli("run --config " + fig3.path).exit_code == 0);

  CHECK(run_cli("fig1 --config does_not_exist.json").exit_code == 2);
}

TEST_CASE("fig3 micro sweep: clean exit, stable bytes, seed override") {
  TempFile cfg(std::string("cli_fig3_sweep.json"), kMicroFig3);
  TempFile out1("cli_fig3_a.csv");
  TempFile out2("cli_fig3_b.csv");
  const CliResult r1 = run_cli("fig3 --config " + cfg.path + " --out " + out1.path);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.err.find("wrote 2 rows") != std::string::npos);
  const CliResult r2 = run_cli("fig3 --config " + cfg.path + " --out " + out2.path);
  REQUIRE(r2.exit_code == 0);
  const std::string csv1 = read_text_file(out1.path);
  CHECK(csv1 == read_text_file(out2.path));
  const auto lines = lines_of(csv1);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "m,avg_step,mean_err,mean_noise_level,trials,master_seed,"
                    "trial_seed,config_hash");

  // overriding the master seed changes the data but not the schema
  const CliResult r3 =
      run_cli("fig3 --config " + cfg.path + " --seed 99 --out " + out1.path);
  REQUIRE(r3.exit_code == 0);
  const std::string csv3 = read_text_file(out1.path);
  CHECK(csv3 != csv1);
  CHECK(lines_of(csv3)[0] == lines[0]);
}

TEST_CASE("a starved solver budget is reported as exit 3 with rows on disk") {
  TempFile cfg("cli_stall.json", R"({
    "experiment": "fig1_step_sweep",
    "N": 31,
    "models": [{"kind": "complex_exponential", "s": 2, "omega": 15, "psi": "dft"}],
    "m_list": [20],
    "distribution": {"kind": "uniform_jitter", "rho": 0.06},
    "trials": 1,
    "master_seed": 5,
    "solver": {"max_outer": 2, "max_inner": 3}
  })");
  TempFile out("cli_stall.csv");
  const CliResult res = run_cli("fig1 --config " + cfg.path + " --out " + out.path);
  CHECK(res.exit_code == 3);
  CHECK(res.err.find("did not converge") != std::string::npos);
  const auto lines = lines_of(read_text_file(out.path));
  REQUIRE(lines.size() == 2);  // header + the flagged row, still written
}

TEST_CASE("dump-op: the written DFT matrix reads back unitary") {
  TempFile dump("cli_dft5.txt");
  const CliResult res = run_cli("dump-op --op dft --N 5 --out " + dump.path);
  REQUIRE(res.exit_code == 0);
  const Eigen::MatrixXcd M = read_dense_matrix(dump.path);
  REQUIRE(M.rows() == 5);
  REQUIRE(M.cols() == 5);
  CHECK((M.adjoint() * M - Eigen::MatrixXcd::Identity(5, 5)).norm() <= 1e-12);
}

TEST_CASE("make-signal: deterministic files that read back") {
  TempFile sig("cli_signal.txt");
  const CliResult res = run_cli(
      "make-signal --kind random_exponential --s 4 --omega 15 --seed 3 --out " +
      sig.path);
  REQUIRE(res.exit_code == 0);
  const FourierSignal parsed = read_signal(sig.path);
  CHECK(parsed.coeffs.size() == 4);
  for (const auto& [freq, coeff] : parsed.coeffs) {
    CHECK(std::llabs(freq) <= 15);
    CHECK(std::abs(std::abs(coeff) - 1.0) <= 1e-12);
  }
  const std::string bytes = read_text_file(sig.path);
  const CliResult again = run_cli(
      "make-signal --kind random_exponential --s 4 --omega 15 --seed 3 --out " +
      sig.path);
  REQUIRE(again.exit_code == 0);
  CHECK(read_text_file(sig.path) == bytes);
}

TEST_CASE("grid subcommand prints a header plus one line per sample") {
  const CliResult res = run_cli("grid --dist uniform_jitter --rho 0.5 --m 5 --seed 1");
  REQUIRE(res.exit_code == 0);
  const auto lines = lines_of(res.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "# index point");
  CHECK(fields_of(lines[1])[0].substr(0, 2) == "1 ");
}

TEST_CASE("diagnostic subcommands run clean on small inputs") {
  CHECK(run_cli("dot-test --op dirichlet --N 63 --m 20").exit_code == 0);
  CHECK(run_cli("interp-error --N 31 --m 10 --s 2 --omega 15").exit_code == 0);
  CHECK(run_cli("ric --N 31 --m 10 --s 2 --draws 2").exit_code == 0);
}

}  // TEST_SUITE("cli")
