// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <vector>

namespace nmfclust {

/// A hard assignment of n observations to clusters. Labels are arbitrary
/// integers; only the induced grouping is meaningful, so comparisons go
/// through the canonical form (relabeled by first appearance).
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  int label(std::size_t i) const { return labels_[i]; }

  /// Number of distinct labels actually used.
  std::size_t num_clusters() const { return num_clusters_; }

  /// Labels relabeled 0..K-1 by order of first appearance. Two partitions
  /// induce the same grouping iff their canonical labels are equal.
  const std::vector<int>& canonical() const { return canonical_; }

  /// Size of the cluster observation i belongs to.
  const std::vector<std::size_t>& cluster_sizes() const { return cluster_sizes_; }

  bool same_grouping(const Partition& other) const { return canonical_ == other.canonical_; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.same_grouping(b); }

 private:
  std::vector<int> labels_;
  std::vector<int> canonical_;
  std::vector<std::size_t> cluster_sizes_;  // indexed by canonical label
  std::size_t num_clusters_ = 0;
};

/// All-singletons partition of n observations.
Partition singletons_partition(std::size_t n);

/// Single-cluster partition of n observations.
Partition one_cluster_partition(std::size_t n);

}  // namespace nmfclust
