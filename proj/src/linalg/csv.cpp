#include "condgrowth/matrix_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace condgrowth::linalg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

template <class T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw CsvError(line_no, "cannot parse '" + std::string(field) + "' as a number");
  }
  return value;
}

}  // namespace

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw CsvError(1, "missing 'rows,cols' header");
  const auto header = split(line);
  if (header.size() != 2) throw CsvError(line_no, "header must be 'rows,cols'");
  const auto rows = parse_number<std::size_t>(header[0], line_no);
  const auto cols = parse_number<std::size_t>(header[1], line_no);
  if (rows == 0 || cols == 0) throw CsvError(line_no, "rows and cols must be >= 1");

  std::vector<double> entries(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_line()) throw CsvError(line_no + 1, "expected " + std::to_string(rows) + " data rows, found " + std::to_string(i));
    const auto fields = split(line);
    if (fields.size() != cols) {
      throw CsvError(line_no, "expected " + std::to_string(cols) + " values, found " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = parse_number<double>(fields[j], line_no);
      if (!std::isfinite(v)) throw CsvError(line_no, "non-finite entry");
      entries[j * rows + i] = v;
    }
  }
  if (next_line()) throw CsvError(line_no, "unexpected data after " + std::to_string(rows) + " rows");
  return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(0, "cannot open " + path.string());
  return read_matrix_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& a) {
  out << a.rows() << ',' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
}

Vector as_vector(const DenseMatrix& a) {
  if (a.cols() != 1 && a.rows() != 1) throw DimensionError("as_vector: expected a single row or column");
  return Vector(a.data().begin(), a.data().end());
}

}  // namespace condgrowth::linalg
