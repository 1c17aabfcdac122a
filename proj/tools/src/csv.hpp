#pragma once

#include "hdmt/datagen.hpp"

#include <istream>
#include <string>

namespace hdmt::cli {

struct CsvOptions {
  bool header = false;
  // Rescale every column so that (1/n) sum_i x_ij^2 = 1.
  bool normalize = false;
  char delimiter = ',';
};

// Rows are observations, columns variables. Errors name the 1-based line and
// column of the offending cell.
DataMatrix parse_matrix(std::istream& in, const CsvOptions& opts);
DataMatrix load_matrix(const std::string& path, const CsvOptions& opts);

void normalize_columns(Matrix& x);

std::vector<double> load_pvalues(const std::string& path);

}  // namespace hdmt::cli
