// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nmfclust/nmf.hpp"
#include "nmfclust/penalties.hpp"

namespace nmfclust {

/// Outcome of scoring hardened NMF solutions across a rank range under one
/// penalty. chosen_index points at the row with the minimum penalty; ties
/// go to the smallest rank.
struct SelectionReport {
  struct Row {
    std::size_t rank = 0;             // K handed to the factorization
    std::size_t realized_clusters = 0;  // clusters actually present after hardening
    double penalty = 0.0;
    bool penalty_degenerate = false;  // PEAR 0/0 candidate, scored as 1
    Partition partition;
    NmfSolution solution;
  };

  std::vector<Row> per_k;
  std::size_t chosen_index = 0;
  PenaltyKind penalty_kind = PenaltyKind::binder;

  const Row& chosen() const { return per_k[chosen_index]; }
  std::size_t chosen_k() const { return chosen().rank; }
  const Partition& chosen_partition() const { return chosen().partition; }
};

/// For each K in [k_min, k_max]: multi-start factorization, hard
/// extraction, penalty evaluation. Per-K jobs are independent and run
/// concurrently; the winner minimizes the penalty.
SelectionReport select(const SimilarityMatrix& pi, std::size_t k_min, std::size_t k_max,
                       const NmfVariant& variant, PenaltyKind penalty, int starts,
                       const NmfConfig& config);

/// Ordered (K, penalty) pairs, ready for CSV emission or plotting.
std::vector<std::pair<std::size_t, double>> penalty_curve(const SelectionReport& report);

}  // namespace nmfclust
