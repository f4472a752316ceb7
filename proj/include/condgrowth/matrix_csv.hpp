#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "condgrowth/linalg.hpp"

namespace condgrowth::linalg {

/// Malformed matrix CSV; `line()` is 1-based.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Format: a header line "rows,cols", then one comma-separated row per line.
DenseMatrix read_matrix_csv(std::istream& in);
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// Values are written in shortest round-trip form, so reading back is exact.
void write_matrix_csv(std::ostream& out, const DenseMatrix& a);

/// Shortest round-trip text used by every CSV writer in the project.
std::string format_double(double v);

/// An n×1 or 1×n matrix as a vector.
Vector as_vector(const DenseMatrix& a);

}  // namespace condgrowth::linalg
