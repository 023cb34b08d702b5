// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmfclust/matrix.hpp"
#include "nmfclust/partition.hpp"
#include "nmfclust/similarity.hpp"

namespace nmfclust {

/// Factorization model. All four approximate the similarity matrix with
/// non-negative factors; they differ in the internal loss and in the
/// reconstruction:
///   least_squares     pi ~ W H            squared error
///   kullback_leibler  pi ~ W H            generalized KL divergence
///   nonsmooth         pi ~ W S H          squared error, S = (1-t)I + (t/K)J
///   offset            pi ~ W H + b 1^T    squared error, non-negative b
struct NmfVariant {
  enum class Kind { least_squares, kullback_leibler, nonsmooth, offset };
  Kind kind = Kind::least_squares;
  double theta = 0.5;  // smoothing weight, nonsmooth only

  static NmfVariant least_squares() { return {Kind::least_squares, 0.0}; }
  static NmfVariant kullback_leibler() { return {Kind::kullback_leibler, 0.0}; }
  static NmfVariant nonsmooth(double theta = 0.5) { return {Kind::nonsmooth, theta}; }
  static NmfVariant offset() { return {Kind::offset, 0.0}; }
};

const char* variant_name(const NmfVariant& v);
std::optional<NmfVariant> parse_variant(const std::string& name, double theta = 0.5);

struct NmfConfig {
  int max_iters = 2000;
  double rel_tolerance = 1e-6;  // relative decrease over 10 iterations
  std::uint64_t seed = 0;
};

/// Result of one factorization run. objective_trace[0] is the loss of the
/// random initialization; one entry follows per full update step and is
/// non-increasing within 1e-10 per step.
struct NmfSolution {
  Matrix w;                    // n x k basis (centroid) matrix
  Matrix h;                    // k x n weight matrix
  NmfVariant variant;
  std::vector<double> offset;  // n-vector, offset variant only
  std::vector<double> objective_trace;
  int iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;

  std::size_t rank() const { return w.cols(); }
  double objective() const { return objective_trace.back(); }
};

/// n x K row-stochastic matrix of cluster membership probabilities.
struct SoftAssignment {
  Matrix probs;
};

/// One full multiplicative update: H first, then W against the updated H.
/// Entries are floored at 1e-12 after each update, which keeps every
/// denominator strictly positive.
void update_step_ls(const Matrix& pi, Matrix& w, Matrix& h);
void update_step_kl(const Matrix& pi, Matrix& w, Matrix& h);

/// Runs multiplicative updates from a seeded random initialization until
/// the relative objective decrease over 10 consecutive iterations falls
/// below config.rel_tolerance or max_iters is reached. Never throws on
/// non-convergence; the solution carries converged = false.
NmfSolution factorize(const SimilarityMatrix& pi, std::size_t k, const NmfVariant& variant,
                      const NmfConfig& config);

/// Runs factorize with seeds seed+0 .. seed+starts-1 and keeps the run
/// with the lowest internal objective (ties broken by smallest seed).
/// Starts may run concurrently; the selection is deterministic.
NmfSolution multi_start(const SimilarityMatrix& pi, std::size_t k, const NmfVariant& variant,
                        int starts, const NmfConfig& config);

/// Hard allocation: argmax over each column of H, ties to the lowest
/// component index. Empty components simply drop out of the partition.
Partition extract_hard(const NmfSolution& solution);

/// Column-normalized H as membership probabilities; each row sums to 1.
SoftAssignment extract_soft(const NmfSolution& solution);

/// The variant's approximation of pi (W H, W S H, or W H + b 1^T).
Matrix reconstruct(const NmfSolution& solution);

}  // namespace nmfclust
