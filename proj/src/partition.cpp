// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/partition.hpp"

#include <unordered_map>
#include <utility>

namespace nmfclust {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  canonical_.resize(labels_.size());
  std::unordered_map<int, int> remap;
  remap.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels_[i], static_cast<int>(remap.size()));
    canonical_[i] = it->second;
  }
  num_clusters_ = remap.size();
  cluster_sizes_.assign(num_clusters_, 0);
  for (int c : canonical_) ++cluster_sizes_[static_cast<std::size_t>(c)];
}

Partition singletons_partition(std::size_t n) {
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
  return Partition(std::move(labels));
}

Partition one_cluster_partition(std::size_t n) {
  return Partition(std::vector<int>(n, 0));
}

}  // namespace nmfclust
