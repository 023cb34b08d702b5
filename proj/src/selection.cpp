// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/selection.hpp"

#include <string>

#include "nmfclust/errors.hpp"

namespace nmfclust {

SelectionReport select(const SimilarityMatrix& pi, std::size_t k_min, std::size_t k_max,
                       const NmfVariant& variant, PenaltyKind penalty, int starts,
                       const NmfConfig& config) {
  if (k_min < 1 || k_max > pi.size() || k_min > k_max)
    throw InputShapeError("rank range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                          "] is invalid for n=" + std::to_string(pi.size()));

  SelectionReport report;
  report.penalty_kind = penalty;
  report.per_k.resize(k_max - k_min + 1);

  const std::ptrdiff_t jobs = static_cast<std::ptrdiff_t>(report.per_k.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t idx = 0; idx < jobs; ++idx) {
    const std::size_t k = k_min + static_cast<std::size_t>(idx);
    SelectionReport::Row& row = report.per_k[static_cast<std::size_t>(idx)];
    row.rank = k;
    row.solution = multi_start(pi, k, variant, starts, config);
    row.partition = extract_hard(row.solution);
    row.realized_clusters = row.partition.num_clusters();
    if (penalty == PenaltyKind::pear) {
      row.penalty = pear_penalty(pi, row.partition, &row.penalty_degenerate);
    } else {
      row.penalty = evaluate(penalty, pi, row.partition);
    }
  }

  // Minimum penalty; ties resolved toward the smallest K (rows are in
  // ascending K order, so strict comparison does it).
  report.chosen_index = 0;
  for (std::size_t i = 1; i < report.per_k.size(); ++i)
    if (report.per_k[i].penalty < report.per_k[report.chosen_index].penalty)
      report.chosen_index = i;
  return report;
}

std::vector<std::pair<std::size_t, double>> penalty_curve(const SelectionReport& report) {
  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(report.per_k.size());
  for (const auto& row : report.per_k) curve.emplace_back(row.rank, row.penalty);
  return curve;
}

}  // namespace nmfclust
