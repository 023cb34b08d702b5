// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <vector>

#include "nmfclust/partition.hpp"

namespace nmfclust {

/// Logarithm base for the information-theoretic quantities. The choice
/// rescales values but never changes which partition minimizes them.
enum class LogBase { natural, two };

/// K x K* cross-tabulation of two partitions over the same observations.
struct ContingencyTable {
  std::size_t rows = 0;  // clusters of a
  std::size_t cols = 0;  // clusters of b
  std::vector<std::int64_t> counts;  // row-major
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  std::int64_t operator()(std::size_t r, std::size_t s) const { return counts[r * cols + s]; }
};

ContingencyTable contingency(const Partition& a, const Partition& b);

/// Rand index via the pairwise-disagreement count: 1 - L_B / C(n,2) where
/// L_B is the number of pairs the two partitions treat differently.
double rand_index(const Partition& a, const Partition& b);

/// Adjusted Rand index. The degenerate 0/0 denominator (both partitions
/// trivial in the same way) returns 1 for identical groupings and 0
/// otherwise.
double adjusted_rand(const Partition& a, const Partition& b);

/// Variation of information; a metric on groupings, 0 iff equal.
double variation_of_information(const Partition& a, const Partition& b,
                                LogBase base = LogBase::natural);

}  // namespace nmfclust
