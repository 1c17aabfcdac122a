#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace hdmt::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    cells.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

[[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& what) {
  std::ostringstream os;
  os << "line " << line;
  if (column > 0) os << ", column " << column;
  os << ": " << what;
  throw DataError(os.str());
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  if (cell.empty()) fail_at(line, column, "empty cell");
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    fail_at(line, column, "not a number: '" + std::string(cell) + "'");
  }
  if (!std::isfinite(value)) fail_at(line, column, "non-finite value");
  return value;
}

}  // namespace

DataMatrix parse_matrix(std::istream& in, const CsvOptions& opts) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = opts.header;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, opts.delimiter);
    if (header_pending) {
      header_pending = false;
      cols = cells.size();
      continue;
    }
    if (cols == 0) cols = cells.size();
    if (cells.size() != cols) {
      fail_at(line_no, 0,
              "expected " + std::to_string(cols) + " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) values.push_back(parse_cell(cells[j], line_no, j + 1));
    ++rows;
  }
  if (rows == 0) throw DataError("no data rows");
  Matrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
    }
  }
  if (opts.normalize) normalize_columns(x);
  return DataMatrix(std::move(x));
}

DataMatrix load_matrix(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_matrix(in, opts);
}

void normalize_columns(Matrix& x) {
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double scale = std::sqrt(x.col(j).squaredNorm() / n);
    if (scale == 0.0) {
      throw DataError("column " + std::to_string(j + 1) + " is identically zero; cannot normalize");
    }
    x.col(j) /= scale;
  }
}

std::vector<double> load_pvalues(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    for (std::size_t j = 0; j < cells.size(); ++j) out.push_back(parse_cell(cells[j], line_no, j + 1));
  }
  return out;
}

}  // namespace hdmt::cli
