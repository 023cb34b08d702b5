// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/similarity.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nmfclust/errors.hpp"
#include "nmfclust/kernels.hpp"

namespace nmfclust {

LabelSampleSet::LabelSampleSet(std::vector<std::vector<int>> draws) {
  if (draws.empty()) throw InputShapeError("label sample set needs at least one draw");
  n_ = draws.front().size();
  if (n_ < 2) throw InputShapeError("label draws need at least two observations");
  m_ = draws.size();
  labels_.reserve(m_ * n_);
  for (std::size_t t = 0; t < m_; ++t) {
    if (draws[t].size() != n_) {
      throw InputShapeError("ragged label draws: row " + std::to_string(t) + " has " +
                            std::to_string(draws[t].size()) + " columns, expected " +
                            std::to_string(n_));
    }
    labels_.insert(labels_.end(), draws[t].begin(), draws[t].end());
  }
}

SimilarityMatrix build_similarity(const LabelSampleSet& samples) {
  const std::size_t n = samples.num_observations();
  const std::size_t m = samples.num_draws();

  // Transpose to observation-major so each pair comparison streams two
  // contiguous runs of draws.
  std::vector<int> obs_major(n * m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t i = 0; i < n; ++i) obs_major[i * m + t] = samples.label(t, i);

  std::vector<std::uint32_t> counts;
  kernels::co_cluster_counts(obs_major, n, m, counts);

  Matrix values(n, n);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      values(i, j) = static_cast<double>(counts[i * n + j]) * inv_m;
    values(i, i) = 1.0;
  }
  return SimilarityMatrix(std::move(values));
}

SimilarityMatrix partition_affinity(const Partition& c) {
  const std::size_t n = c.size();
  Matrix values(n, n);
  const auto& labels = c.canonical();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) values(i, j) = labels[i] == labels[j] ? 1.0 : 0.0;
  return SimilarityMatrix(std::move(values));
}

namespace {
[[noreturn]] void fail_entry(const char* what, std::size_t i, std::size_t j, double v) {
  throw ValidationError(std::string(what) + " at entry (" + std::to_string(i) + ", " +
                        std::to_string(j) + "): value " + std::to_string(v));
}
}  // namespace

SimilarityMatrix validate_similarity(const Matrix& values, double tolerance) {
  if (values.rows() != values.cols())
    throw InputShapeError("similarity matrix must be square, got " +
                          std::to_string(values.rows()) + " x " + std::to_string(values.cols()));
  const std::size_t n = values.rows();
  Matrix out = values;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(out(i, i) - 1.0) > tolerance) fail_entry("diagonal deviates from 1", i, i, out(i, i));
    out(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = out(i, j), b = out(j, i);
      if (!(std::abs(a - b) <= tolerance)) fail_entry("asymmetry beyond tolerance", i, j, a - b);
      double v = 0.5 * (a + b);
      if (v < -tolerance || v > 1.0 + tolerance) fail_entry("entry outside [0, 1]", i, j, v);
      v = std::min(std::max(v, 0.0), 1.0);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return SimilarityMatrix(std::move(out));
}

}  // namespace nmfclust
