#include <complex>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "offgrid/io.hpp"
#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/sampling.hpp"
#include "offgrid/util.hpp"

using namespace offgrid;

namespace {

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name) {
    path = std::string("offgrid_io_test_") + name;
  }
  ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("signal text round-trips with full precision") {
  FourierSignal sig;
  sig.coeffs[-7] = cplx(0.1234567890123456789, -3.0);
  sig.coeffs[0] = cplx(1.0 / 3.0, 0.0);
  sig.coeffs[12] = cplx(0.0, 1e-17);
  const std::string text = signal_to_text(sig);
  const FourierSignal back = signal_from_text(text);
  REQUIRE(back.coeffs.size() == 3);
  for (const auto& [freq, coeff] : sig.coeffs) {
    REQUIRE(back.coeffs.count(freq) == 1);
    CHECK(back.coeffs.at(freq) == coeff);  // bitwise, via round-trip formatting
  }
  // frequencies appear in ascending order
  CHECK(text.find("-7 ") < text.find("0 "));
  CHECK(text.find("0 ") < text.find("12 "));
}

TEST_CASE("signal parser: comments, blanks, and malformed lines") {
  const FourierSignal sig = signal_from_text(
      "# a comment\n"
      "\n"
      "3 1.5,-2.5\n"
      "# another comment\n"
      "-1 0,1\n");
  REQUIRE(sig.coeffs.size() == 2);
  CHECK(sig.coeffs.at(3) == cplx(1.5, -2.5));
  CHECK(sig.coeffs.at(-1) == cplx(0.0, 1.0));

  CHECK_THROWS_AS(signal_from_text("3 1.5,-2.5\n3 1,0\n"), std::runtime_error);
  CHECK_THROWS_AS(signal_from_text("x 1,0\n"), std::runtime_error);
  CHECK_THROWS_AS(signal_from_text("3 oops\n"), std::runtime_error);
}

TEST_CASE("signal file round-trip") {
  TempPath tmp("signal.txt");
  FourierSignal sig;
  sig.coeffs[5] = cplx(-0.25, 0.75);
  write_signal(sig, tmp.path);
  const FourierSignal back = read_signal(tmp.path);
  CHECK(back.coeffs.at(5) == cplx(-0.25, 0.75));
}

TEST_CASE("grid text uses 1-based indices") {
  const NonuniformGrid grid = make_grid(Degenerate{0.0}, 4, 1);
  const std::string text = grid_to_text(grid);
  CHECK(text.find("# index point") == 0);
  CHECK(text.find("\n1 -0.5\n") != std::string::npos);
  CHECK(text.find("\n4 0.25\n") != std::string::npos);
}

TEST_CASE("dense operator dump round-trips and honors its cap") {
  TempPath tmp("op.txt");
  const LinearOperator F = centered_dft_operator(7);
  write_dense_operator(F, tmp.path);
  const Eigen::MatrixXcd M = read_dense_matrix(tmp.path);
  REQUIRE(M.rows() == 7);
  REQUIRE(M.cols() == 7);
  const Eigen::MatrixXcd direct = dense_matrix(F);
  CHECK((M - direct).norm() == 0.0);  // bitwise via round-trip formatting

  LinearOperator big = identity_operator(600);
  CHECK_THROWS_AS(write_dense_operator(big, tmp.path), std::invalid_argument);
}

TEST_CASE("csv assembly rejects ragged rows and formats deterministically") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1", format_double(0.1)}, {"2", format_double(1.0 / 3.0)}};
  const std::string s = t.to_string();
  CHECK(s.find("a,b\n") == 0);
  CHECK(s.find("0.1") != std::string::npos);

  CsvTable ragged;
  ragged.header = {"a", "b"};
  ragged.rows = {{"only-one"}};
  CHECK_THROWS_AS(ragged.to_string(), std::runtime_error);

  TempPath tmp("table.csv");
  write_csv(t, tmp.path);
  CHECK(read_text_file(tmp.path) == s);
}

TEST_CASE("reading a missing file reports the path") {
  CHECK_THROWS_AS(read_text_file("definitely_not_here_12345.txt"),
                  std::runtime_error);
}

}  // TEST_SUITE("io")
