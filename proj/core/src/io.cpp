#include "offgrid/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "offgrid/util.hpp"

namespace offgrid {

std::string format_double(double x) {
  // %.17g round-trips every double, so files regenerate byte-for-byte
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string signal_to_text(const FourierSignal& sig) {
  std::ostringstream os;
  os << "# frequency re,im\n";
  for (const auto& [l, c] : sig.coeffs) {
    os << l << ' ' << format_double(c.real()) << ',' << format_double(c.imag())
       << '\n';
  }
  return os.str();
}

FourierSignal signal_from_text(const std::string& text) {
  FourierSignal sig;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::int64_t l = 0;
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ls >> l >> re >> comma >> im) || comma != ',') {
      throw std::runtime_error("signal parse error at line " +
                               std::to_string(lineno));
    }
    if (sig.coeffs.count(l)) {
      throw std::runtime_error("signal parse error: duplicate frequency " +
                               std::to_string(l));
    }
    sig.coeffs[l] = cplx(re, im);
  }
  return sig;
}

void write_signal(const FourierSignal& sig, const std::string& path) {
  write_text_file(path, signal_to_text(sig));
}

FourierSignal read_signal(const std::string& path) {
  return signal_from_text(read_text_file(path));
}

std::string grid_to_text(const NonuniformGrid& grid) {
  std::ostringstream os;
  os << "# index point\n";
  for (std::int64_t k = 0; k < grid.m; ++k) {
    os << (k + 1) << ' '
       << format_double(grid.points[static_cast<std::size_t>(k)]) << '\n';
  }
  return os.str();
}

void write_grid(const NonuniformGrid& grid, const std::string& path) {
  write_text_file(path, grid_to_text(grid));
}

void write_dense_operator(const LinearOperator& A, const std::string& path) {
  if (static_cast<std::int64_t>(A.rows) * static_cast<std::int64_t>(A.cols) >
      512 * 512) {
    throw std::invalid_argument("write_dense_operator: capped at 512x512 entries");
  }
  const Eigen::MatrixXcd M = dense_matrix(A);
  std::ostringstream os;
  os << M.rows() << ' ' << M.cols() << '\n';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(M(i, j).real()) << ',' << format_double(M(i, j).imag());
    }
    os << '\n';
  }
  write_text_file(path, os.str());
}

Eigen::MatrixXcd read_dense_matrix(const std::string& path) {
  std::istringstream is(read_text_file(path));
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 1 || cols < 1 ||
      rows * cols > 512 * 512) {
    throw std::runtime_error("dense matrix parse error: bad header");
  }
  Eigen::MatrixXcd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      char comma = 0;
      if (!(is >> re >> comma >> im) || comma != ',') {
        throw std::runtime_error("dense matrix parse error: bad cell");
      }
      M(i, j) = cplx(re, im);
    }
  }
  return M;
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) os << ',';
    os << header[j];
  }
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::runtime_error("csv row width does not match the header");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      os << row[j];
    }
    os << '\n';
  }
  return os.str();
}

void write_csv(const CsvTable& table, const std::string& path) {
  write_text_file(path, table.to_string());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace offgrid
