#pragma once

// Text formats: Fourier signals as "frequency re,im" lines, grids as
// "index point" lines, dense operator dumps as row-major "re,im" cells, and
// a CSV writer that formats doubles with round-trippable precision so that
// re-running a sweep reproduces output files byte-for-byte.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "offgrid/model.hpp"
#include "offgrid/operators.hpp"
#include "offgrid/sampling.hpp"

namespace offgrid {

// Signal file: one "frequency re,im" line per coefficient, ascending
// frequency. Lines starting with '#' are comments.
std::string signal_to_text(const FourierSignal& sig);
FourierSignal signal_from_text(const std::string& text);
void write_signal(const FourierSignal& sig, const std::string& path);
FourierSignal read_signal(const std::string& path);

// Grid file: one "index point" line per sample (1-based index).
std::string grid_to_text(const NonuniformGrid& grid);
void write_grid(const NonuniformGrid& grid, const std::string& path);

// Dense dump: first line "rows cols", then rows lines of "re,im" cells
// separated by spaces. Guarded to rows*cols <= 512*512.
void write_dense_operator(const LinearOperator& A, const std::string& path);
Eigen::MatrixXcd read_dense_matrix(const std::string& path);

// Minimal CSV assembly with deterministic formatting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
};
void write_csv(const CsvTable& table, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace offgrid
