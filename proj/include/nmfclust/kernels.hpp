// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <vector>

#include "nmfclust/matrix.hpp"

namespace nmfclust {

/// Caps the worker count for all parallel kernels (0 = hardware default).
void set_threads(int n);
int threads();

/// Data-parallel inner loops, each in two forms: the OpenMP kernel used by
/// the library (namespace kernels) and a plain serial reference
/// (kernels::reference) kept for testing and benchmarking.
///
/// Every kernel accumulates each output element in a fixed order, and
/// reductions sum fixed-order row partials, so results are bit-identical
/// across thread counts. Tests compare the two namespaces for exact
/// equality.
namespace kernels {

/// c = a * b
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
/// c = a^T * b
void matmul_ta(const Matrix& a, const Matrix& b, Matrix& c);
/// c = a * b^T
void matmul_tb(const Matrix& a, const Matrix& b, Matrix& c);

/// x[i] *= num[i] / den[i], then floored at `floor`.
void multiplicative_update(Matrix& x, const Matrix& num, const Matrix& den, double floor);

/// out = num / den elementwise (den must be strictly positive).
void elementwise_ratio(const Matrix& num, const Matrix& den, Matrix& out);

/// sum_ij (a_ij - b_ij)^2
double squared_distance(const Matrix& a, const Matrix& b);

/// sum_ij [p_ij log(p_ij / q_ij) - p_ij + q_ij], with 0 log 0 = 0.
double generalized_kl(const Matrix& p, const Matrix& q);

/// Pairwise co-assignment counts from label draws stored observation-major:
/// draws[i*m + t] is observation i's label in draw t. Writes an n x n count
/// matrix (diagonal = m).
void co_cluster_counts(const std::vector<int>& draws, std::size_t n, std::size_t m,
                       std::vector<std::uint32_t>& counts);

namespace reference {
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
void matmul_ta(const Matrix& a, const Matrix& b, Matrix& c);
void matmul_tb(const Matrix& a, const Matrix& b, Matrix& c);
void multiplicative_update(Matrix& x, const Matrix& num, const Matrix& den, double floor);
void elementwise_ratio(const Matrix& num, const Matrix& den, Matrix& out);
double squared_distance(const Matrix& a, const Matrix& b);
double generalized_kl(const Matrix& p, const Matrix& q);
void co_cluster_counts(const std::vector<int>& draws, std::size_t n, std::size_t m,
                       std::vector<std::uint32_t>& counts);
}  // namespace reference

}  // namespace kernels
}  // namespace nmfclust
