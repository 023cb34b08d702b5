// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/baselines.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "nmfclust/errors.hpp"

namespace nmfclust {

namespace {

// Plain O(n^3) agglomeration with Lance-Williams updates; n stays at desk
// scale so nothing fancier is warranted.
struct Agglomerator {
  explicit Agglomerator(const SimilarityMatrix& pi, Linkage linkage)
      : linkage_(linkage), n_(pi.size()) {
    dist_ = Matrix(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) dist_(i, j) = 1.0 - pi(i, j);
    active_.resize(n_);
    member_count_.assign(n_, 1);
    labels_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      active_[i] = true;
      labels_[i] = static_cast<int>(i);
    }
    remaining_ = n_;
  }

  // Height of the cheapest merge, or +inf when one cluster remains.
  double next_height() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n_; ++a) {
      if (!active_[a]) continue;
      for (std::size_t b = a + 1; b < n_; ++b) {
        if (!active_[b]) continue;
        best = std::min(best, dist_(a, b));
      }
    }
    return best;
  }

  // Merges the cheapest pair; equal heights resolve to the smallest
  // (a, b) of cluster leaders. Leaders are the smallest original index,
  // which is the row index itself since merges keep the smaller slot.
  void merge_cheapest() {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < n_; ++a) {
      if (!active_[a]) continue;
      for (std::size_t b = a + 1; b < n_; ++b) {
        if (!active_[b]) continue;
        if (dist_(a, b) < best) {
          best = dist_(a, b);
          ba = a;
          bb = b;
        }
      }
    }
    const std::size_t keep = ba, drop = bb;
    for (std::size_t c = 0; c < n_; ++c) {
      if (!active_[c] || c == keep || c == drop) continue;
      const double dk = dist_(keep, c), dd = dist_(drop, c);
      double merged;
      if (linkage_ == Linkage::complete) {
        merged = std::max(dk, dd);
      } else {
        const double wk = static_cast<double>(member_count_[keep]);
        const double wd = static_cast<double>(member_count_[drop]);
        merged = (wk * dk + wd * dd) / (wk + wd);
      }
      dist_(keep, c) = merged;
      dist_(c, keep) = merged;
    }
    member_count_[keep] += member_count_[drop];
    active_[drop] = false;
    for (std::size_t i = 0; i < n_; ++i)
      if (labels_[i] == static_cast<int>(drop)) labels_[i] = static_cast<int>(keep);
    --remaining_;
  }

  Partition current_partition() const { return Partition(labels_); }
  std::size_t remaining() const { return remaining_; }

 private:
  Linkage linkage_;
  std::size_t n_;
  Matrix dist_;
  std::vector<bool> active_;
  std::vector<std::size_t> member_count_;
  std::vector<int> labels_;
  std::size_t remaining_;
};

}  // namespace

CandidateSet hclust_candidates(const SimilarityMatrix& pi, Linkage linkage) {
  if (pi.size() < 2) throw InputShapeError("dendrogram candidates need n >= 2");
  Agglomerator agg(pi, linkage);
  CandidateSet set;
  set.provenance = CandidateSet::Provenance::dendrogram;
  std::set<std::vector<int>> seen;
  auto add = [&](const Partition& p) {
    if (seen.insert(p.canonical()).second) set.partitions.push_back(p);
  };
  add(agg.current_partition());
  while (agg.remaining() > 1) {
    agg.merge_cheapest();
    add(agg.current_partition());
  }
  return set;
}

std::pair<Partition, double> best_in_set(const SimilarityMatrix& pi, const CandidateSet& set,
                                         PenaltyKind penalty) {
  if (set.partitions.empty()) throw InputShapeError("candidate set is empty");
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(set.partitions.size());
  std::vector<double> scores(set.partitions.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < m; ++i)
    scores[static_cast<std::size_t>(i)] = evaluate(penalty, pi, set.partitions[static_cast<std::size_t>(i)]);

  std::size_t best = 0;
  for (std::size_t i = 1; i < set.partitions.size(); ++i) {
    const auto& cand = set.partitions[i];
    const auto& cur = set.partitions[best];
    if (scores[i] < scores[best] ||
        (scores[i] == scores[best] &&
         (cand.num_clusters() < cur.num_clusters() ||
          (cand.num_clusters() == cur.num_clusters() && cand.canonical() < cur.canonical()))))
      best = i;
  }
  return {set.partitions[best], scores[best]};
}

Partition medvedovic(const SimilarityMatrix& pi, double cut) {
  if (!(cut > 0.0 && cut <= 1.0)) throw ValidationError("medvedovic cut must be in (0, 1]");
  Agglomerator agg(pi, Linkage::complete);
  while (agg.remaining() > 1 && agg.next_height() <= cut) agg.merge_cheapest();
  return agg.current_partition();
}

CandidateSet enumerate_partitions(std::size_t n) {
  constexpr std::size_t kMaxN = 12;
  if (n < 1) throw InputShapeError("cannot enumerate partitions of zero items");
  if (n > kMaxN)
    throw InputShapeError("set-partition enumeration is capped at n <= 12 "
                          "(Bell(12) = 4,213,597 candidates); got n = " + std::to_string(n));
  CandidateSet set;
  set.provenance = CandidateSet::Provenance::exhaustive;
  // Restricted growth strings: a[i] <= 1 + max(a[0..i-1]); each string is
  // already the canonical labeling of a distinct grouping.
  std::vector<int> a(n, 0);
  std::vector<int> b(n, 1);  // b[i] = 1 + max(a[0..i-1]), meaningful for i >= 1
  while (true) {
    set.partitions.emplace_back(a);
    if (n == 1) break;
    std::size_t j = n - 1;
    while (j >= 1 && a[j] == b[j]) --j;
    if (j == 0) break;
    ++a[j];
    const int next_cap = b[j] + (a[j] == b[j] ? 1 : 0);
    for (std::size_t t = j + 1; t < n; ++t) {
      a[t] = 0;
      b[t] = next_cap;
    }
  }
  return set;
}

std::uint64_t stirling2(std::size_t n, std::size_t k) {
  if (k > n) throw InputShapeError("stirling2 requires 0 <= K <= n");
  if (n == 0) return 1;  // S(0,0) = 1
  if (k == 0) return 0;
  // Row-by-row recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1), exact with
  // overflow checks.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;  // S(0,0)
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t top = std::min(i, k);
    for (std::size_t j = top; j >= 1; --j) {
      std::uint64_t scaled = 0, total = 0;
      if (__builtin_mul_overflow(row[j], static_cast<std::uint64_t>(j), &scaled) ||
          __builtin_add_overflow(scaled, row[j - 1], &total))
        throw OverflowError("stirling2(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") exceeds 64-bit integer range");
      row[j] = total;
    }
    row[0] = 0;  // S(i>0, 0) = 0
  }
  return row[k];
}

std::uint64_t bell_number(std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::uint64_t v = stirling2(n, k);
    if (__builtin_add_overflow(total, v, &total))
      throw OverflowError("bell(" + std::to_string(n) + ") exceeds 64-bit integer range");
  }
  return total;
}

}  // namespace nmfclust
