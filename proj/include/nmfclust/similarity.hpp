// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <vector>

#include "nmfclust/matrix.hpp"
#include "nmfclust/partition.hpp"

namespace nmfclust {

/// M stored MCMC draws of the n-vector of cluster labels. Labels within a
/// draw are arbitrary identifiers; label switching across draws is expected.
class LabelSampleSet {
 public:
  /// Throws InputShapeError on ragged rows, M < 1, or n < 2.
  explicit LabelSampleSet(std::vector<std::vector<int>> draws);

  std::size_t num_draws() const { return m_; }
  std::size_t num_observations() const { return n_; }
  int label(std::size_t draw, std::size_t obs) const { return labels_[draw * n_ + obs]; }
  const std::vector<int>& flat() const { return labels_; }

 private:
  std::vector<int> labels_;  // draw-major, m_ x n_
  std::size_t m_ = 0;
  std::size_t n_ = 0;
};

/// n x n symmetric matrix of pairwise co-clustering probabilities with unit
/// diagonal and entries in [0, 1]. Construction goes through the factories
/// below, so a held instance always satisfies the invariants.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;

  std::size_t size() const { return values_.rows(); }
  const Matrix& values() const { return values_; }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }

  friend SimilarityMatrix build_similarity(const LabelSampleSet&);
  friend SimilarityMatrix partition_affinity(const Partition&);
  friend SimilarityMatrix validate_similarity(const Matrix&, double);

 private:
  explicit SimilarityMatrix(Matrix values) : values_(std::move(values)) {}
  Matrix values_;
};

/// Fraction of draws co-assigning each pair: values[i][j] =
/// (1/M) * #{m : c_i^(m) == c_j^(m)}. Symmetric, unit diagonal, entries are
/// exact multiples of 1/M.
SimilarityMatrix build_similarity(const LabelSampleSet& samples);

/// Binary affinity of a hard partition: 1 where labels match, else 0.
SimilarityMatrix partition_affinity(const Partition& c);

/// Checks a raw matrix against the similarity invariants. Asymmetry within
/// `tolerance` is symmetrized by averaging, diagonal within tolerance of 1
/// is forced to 1, and entries within tolerance of [0, 1] are clamped.
/// Throws ValidationError naming the offending entry otherwise.
SimilarityMatrix validate_similarity(const Matrix& values, double tolerance);

}  // namespace nmfclust
