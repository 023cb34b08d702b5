// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nmfclust/partition.hpp"
#include "nmfclust/penalties.hpp"
#include "nmfclust/similarity.hpp"

namespace nmfclust {

enum class Linkage { average, complete };

/// A search space of candidate partitions, canonical and duplicate-free.
struct CandidateSet {
  enum class Provenance { dendrogram, exhaustive, user_supplied };
  std::vector<Partition> partitions;
  Provenance provenance = Provenance::user_supplied;
};

/// Agglomerative clustering on the dissimilarity 1 - pi. Returns the
/// partitions from cutting at every merge level (singletons included),
/// de-duplicated. Equal-height merges are resolved toward the smallest
/// pair of cluster leaders, so the dendrogram is platform-independent.
CandidateSet hclust_candidates(const SimilarityMatrix& pi, Linkage linkage);

/// The candidate minimizing the penalty. Ties go to the fewest clusters,
/// then to the lexicographically smallest canonical labels.
std::pair<Partition, double> best_in_set(const SimilarityMatrix& pi, const CandidateSet& set,
                                         PenaltyKind penalty);

/// Complete-linkage dendrogram on 1 - pi cut at the given height
/// (default 0.99, i.e. groups everything that ever co-clusters).
Partition medvedovic(const SimilarityMatrix& pi, double cut = 0.99);

/// All set partitions of n items. Refuses n > 12: Bell(12) = 4,213,597 is
/// the enumeration bound.
CandidateSet enumerate_partitions(std::size_t n);

/// Stirling number of the second kind, exact. Throws OverflowError when
/// the value leaves the 64-bit range.
std::uint64_t stirling2(std::size_t n, std::size_t k);

/// Bell number: partitions of n items into any number of blocks.
std::uint64_t bell_number(std::size_t n);

}  // namespace nmfclust
