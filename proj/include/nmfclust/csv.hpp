// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>
#include <vector>

#include "nmfclust/matrix.hpp"

namespace nmfclust {

/// Reads a rectangular CSV of decimal numbers. Throws InputShapeError with
/// the row/column location of the first malformed cell.
Matrix read_matrix_csv(const std::string& path);

/// Reads a CSV of integer cluster labels, one MCMC draw per row. With
/// `skip_header` the first row is ignored.
std::vector<std::vector<int>> read_labels_csv(const std::string& path, bool skip_header = false);

/// Writes a matrix as CSV with 17 significant digits, so binary64 values
/// round-trip exactly through read_matrix_csv.
void write_matrix_csv(const std::string& path, const Matrix& m);

/// One row of integer labels.
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

/// Arbitrary rows of text cells, for report tables.
void write_table_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows);

/// Formatting used everywhere a double lands in text: %.17g, enough for
/// exact binary64 round-trips.
std::string format_double(double v);

}  // namespace nmfclust
