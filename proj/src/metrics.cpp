// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/metrics.hpp"

#include <cmath>
#include <string>

#include "nmfclust/errors.hpp"

namespace nmfclust {

namespace {

void require_comparable(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw InputShapeError("partition length mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  if (a.size() < 2) throw InputShapeError("pair-counting metrics need at least two observations");
}

struct PairCounts {
  std::int64_t both = 0;    // pairs together in a and in b
  std::int64_t in_a = 0;    // pairs together in a
  std::int64_t in_b = 0;    // pairs together in b
  std::int64_t total = 0;   // C(n, 2)
};

PairCounts count_pairs(const Partition& a, const Partition& b) {
  const auto& la = a.canonical();
  const auto& lb = b.canonical();
  const std::size_t n = la.size();
  PairCounts pc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sa = la[i] == la[j];
      const bool sb = lb[i] == lb[j];
      pc.both += sa && sb;
      pc.in_a += sa;
      pc.in_b += sb;
    }
  }
  pc.total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  return pc;
}

}  // namespace

ContingencyTable contingency(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw InputShapeError("partition length mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  ContingencyTable t;
  t.rows = a.num_clusters();
  t.cols = b.num_clusters();
  t.counts.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  const auto& la = a.canonical();
  const auto& lb = b.canonical();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = static_cast<std::size_t>(la[i]);
    const auto s = static_cast<std::size_t>(lb[i]);
    ++t.counts[r * t.cols + s];
    ++t.row_sums[r];
    ++t.col_sums[s];
  }
  t.total = static_cast<std::int64_t>(a.size());
  return t;
}

double rand_index(const Partition& a, const Partition& b) {
  require_comparable(a, b);
  const PairCounts pc = count_pairs(a, b);
  // Disagreeing pairs: together in exactly one of the two partitions.
  const std::int64_t loss = pc.in_a + pc.in_b - 2 * pc.both;
  return 1.0 - static_cast<double>(loss) / static_cast<double>(pc.total);
}

double adjusted_rand(const Partition& a, const Partition& b) {
  require_comparable(a, b);
  const PairCounts pc = count_pairs(a, b);
  // Denominator zero test done exactly: T*(A+B) == 2*A*B.
  if (pc.total * (pc.in_a + pc.in_b) == 2 * pc.in_a * pc.in_b)
    return a.same_grouping(b) ? 1.0 : 0.0;
  const double chance = static_cast<double>(pc.in_a) * static_cast<double>(pc.in_b) /
                        static_cast<double>(pc.total);
  const double num = static_cast<double>(pc.both) - chance;
  const double den = 0.5 * static_cast<double>(pc.in_a + pc.in_b) - chance;
  return num / den;
}

double variation_of_information(const Partition& a, const Partition& b, LogBase base) {
  require_comparable(a, b);
  const ContingencyTable t = contingency(a, b);
  const double n = static_cast<double>(t.total);
  auto plogp = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
  double vi = 0.0;
  for (std::size_t r = 0; r < t.rows; ++r) vi += plogp(static_cast<double>(t.row_sums[r]) / n);
  for (std::size_t s = 0; s < t.cols; ++s) vi += plogp(static_cast<double>(t.col_sums[s]) / n);
  for (std::size_t r = 0; r < t.rows; ++r)
    for (std::size_t s = 0; s < t.cols; ++s)
      vi -= 2.0 * plogp(static_cast<double>(t(r, s)) / n);
  if (base == LogBase::two) vi /= std::log(2.0);
  return vi;
}

}  // namespace nmfclust
