// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <optional>
#include <string>

#include "nmfclust/metrics.hpp"
#include "nmfclust/partition.hpp"
#include "nmfclust/similarity.hpp"

namespace nmfclust {

/// The expected-loss penalties scored against a posterior similarity
/// matrix. All are minimized; the posterior expected adjusted Rand is
/// stored as 1 - expectation so it fits the same interface.
enum class PenaltyKind { binder, dahl_quadratic, pear, vi_lower_bound };

const char* penalty_name(PenaltyKind kind);
std::optional<PenaltyKind> parse_penalty(const std::string& name);

/// sum_{i<j} |pi_ij - 1{c_i = c_j}|
double binder_penalty(const SimilarityMatrix& pi, const Partition& c);

/// sum_{i<j} (1{c_i = c_j} - pi_ij)^2; argmin-equivalent to Binder.
double dahl_penalty(const SimilarityMatrix& pi, const Partition& c);

/// 1 - posterior expected adjusted Rand, evaluated on pi.
/// A degenerate (exactly zero) denominator yields penalty 1 and sets
/// *degenerate if provided, so search loops can skip such candidates.
double pear_penalty(const SimilarityMatrix& pi, const Partition& c, bool* degenerate = nullptr);

/// Lower bound on the expected variation-of-information loss. Inner sums
/// run over all j, diagonal included.
double vi_penalty(const SimilarityMatrix& pi, const Partition& c,
                  LogBase base = LogBase::natural);

double evaluate(PenaltyKind kind, const SimilarityMatrix& pi, const Partition& c);

}  // namespace nmfclust
