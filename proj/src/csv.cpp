// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nmfclust/errors.hpp"

namespace nmfclust {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // Trim surrounding whitespace.
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputShapeError("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_cells(line));
  }
  return rows;
}

[[noreturn]] void fail_cell(const std::string& path, std::size_t row, std::size_t col,
                            const std::string& cell, const char* expected) {
  throw InputShapeError(path + ": row " + std::to_string(row + 1) + ", column " +
                        std::to_string(col + 1) + ": cannot parse '" + cell + "' as " + expected);
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw InputShapeError(path + ": no rows");
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw InputShapeError(path + ": row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " columns, expected " +
                            std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& cell = rows[i][j];
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
        fail_cell(path, i, j, cell, "a number");
      m(i, j) = v;
    }
  }
  return m;
}

std::vector<std::vector<int>> read_labels_csv(const std::string& path, bool skip_header) {
  auto rows = read_rows(path);
  if (skip_header && !rows.empty()) rows.erase(rows.begin());
  std::vector<std::vector<int>> draws;
  draws.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<int> draw;
    draw.reserve(rows[i].size());
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const std::string& cell = rows[i][j];
      char* end = nullptr;
      errno = 0;
      const long v = std::strtol(cell.c_str(), &end, 10);
      if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
        fail_cell(path, i + (skip_header ? 1 : 0), j, cell, "an integer label");
      draw.push_back(static_cast<int>(v));
    }
    draws.push_back(std::move(draw));
  }
  return draws;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
void write_or_throw(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << body;
  if (!out) throw ValidationError("write failed for " + path);
}
}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::string body;
  body.reserve(m.size() * 20);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) body += ',';
      body += format_double(m(i, j));
    }
    body += '\n';
  }
  write_or_throw(path, body);
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  std::string body;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) body += ',';
    body += std::to_string(labels[i]);
  }
  body += '\n';
  write_or_throw(path, body);
}

void write_table_csv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::string body;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) body += ',';
      body += row[j];
    }
    body += '\n';
  }
  write_or_throw(path, body);
}

}  // namespace nmfclust
