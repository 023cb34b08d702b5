// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/penalties.hpp"

#include <cmath>
#include <cstdint>

#include "nmfclust/errors.hpp"

namespace nmfclust {

namespace {

void require_dims(const SimilarityMatrix& pi, const Partition& c) {
  if (pi.size() != c.size())
    throw InputShapeError("similarity matrix is " + std::to_string(pi.size()) +
                          "-dimensional but partition has " + std::to_string(c.size()) +
                          " observations");
}

}  // namespace

const char* penalty_name(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::binder: return "binder";
    case PenaltyKind::dahl_quadratic: return "dahl";
    case PenaltyKind::pear: return "pear";
    case PenaltyKind::vi_lower_bound: return "vi";
  }
  return "?";
}

std::optional<PenaltyKind> parse_penalty(const std::string& name) {
  if (name == "binder") return PenaltyKind::binder;
  if (name == "dahl") return PenaltyKind::dahl_quadratic;
  if (name == "pear") return PenaltyKind::pear;
  if (name == "vi") return PenaltyKind::vi_lower_bound;
  return std::nullopt;
}

// Sums over i<j run in fixed row-major order. No compensated summation:
// at the matrix sizes this library targets the rounding error stays far
// below the documented test tolerances.

double binder_penalty(const SimilarityMatrix& pi, const Partition& c) {
  require_dims(pi, c);
  const auto& labels = c.canonical();
  const std::size_t n = c.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      total += std::abs(pi(i, j) - (labels[i] == labels[j] ? 1.0 : 0.0));
  return total;
}

double dahl_penalty(const SimilarityMatrix& pi, const Partition& c) {
  require_dims(pi, c);
  const auto& labels = c.canonical();
  const std::size_t n = c.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (labels[i] == labels[j] ? 1.0 : 0.0) - pi(i, j);
      total += d * d;
    }
  return total;
}

double pear_penalty(const SimilarityMatrix& pi, const Partition& c, bool* degenerate) {
  require_dims(pi, c);
  if (c.size() < 2) throw InputShapeError("pear penalty needs at least two observations");
  if (degenerate) *degenerate = false;
  const auto& labels = c.canonical();
  const std::size_t n = c.size();
  double sum_pi = 0.0;        // sum_{i<j} pi_ij
  double sum_match_pi = 0.0;  // sum_{i<j} 1{c_i=c_j} pi_ij
  std::int64_t matches = 0;   // sum_{i<j} 1{c_i=c_j}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = pi(i, j);
      sum_pi += v;
      if (labels[i] == labels[j]) {
        sum_match_pi += v;
        ++matches;
      }
    }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double chance = static_cast<double>(matches) * sum_pi / pairs;
  const double den = 0.5 * (static_cast<double>(matches) + sum_pi) - chance;
  if (den == 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
  return 1.0 - (sum_match_pi - chance) / den;
}

double vi_penalty(const SimilarityMatrix& pi, const Partition& c, LogBase base) {
  require_dims(pi, c);
  const auto& labels = c.canonical();
  const auto& sizes = c.cluster_sizes();
  const std::size_t n = c.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Inner sums over all j; the j == i term contributes pi_ii = 1, so the
    // log argument never vanishes.
    double mass = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (labels[i] == labels[j]) mass += pi(i, j);
    total += std::log(static_cast<double>(sizes[static_cast<std::size_t>(labels[i])])) -
             2.0 * std::log(mass);
  }
  if (base == LogBase::two) total /= std::log(2.0);
  return total;
}

double evaluate(PenaltyKind kind, const SimilarityMatrix& pi, const Partition& c) {
  switch (kind) {
    case PenaltyKind::binder: return binder_penalty(pi, c);
    case PenaltyKind::dahl_quadratic: return dahl_penalty(pi, c);
    case PenaltyKind::pear: return pear_penalty(pi, c);
    case PenaltyKind::vi_lower_bound: return vi_penalty(pi, c);
  }
  return 0.0;
}

}  // namespace nmfclust
