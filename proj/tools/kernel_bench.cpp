// Apache License, Version 2.0, refer to LICENSE.txt
//
// Times the OpenMP kernels against their serial reference implementations
// on the workloads that dominate this library: posterior-similarity
// counting, the dense products inside a multiplicative update, and the
// reduction used for the objective. Prints one row per (kernel, size).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "nmfclust/kernels.hpp"
#include "nmfclust/matrix.hpp"
#include "nmfclust/rng.hpp"

using nmfclust::Matrix;
using nmfclust::Rng;
namespace k = nmfclust::kernels;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform_pos();
  return m;
}

template <typename F>
double time_best_of(int repeats, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* kernel, std::size_t n, double serial, double parallel) {
  std::printf("%-18s n=%-5zu serial %10.6fs  openmp %10.6fs  speedup %5.2fx\n", kernel, n, serial,
              parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = 5;
  int threads = 0;
  if (argc > 1) threads = std::atoi(argv[1]);
  nmfclust::set_threads(threads);
  std::printf("threads: %d, best of %d repeats\n", nmfclust::threads(), repeats);

  Rng rng(20240917);
  for (std::size_t n : {200UL, 400UL, 800UL}) {
    const std::size_t rank = 8;
    const Matrix pi = random_matrix(n, n, rng);
    const Matrix w = random_matrix(n, rank, rng);
    const Matrix h = random_matrix(rank, n, rng);
    Matrix out;

    report("matmul_ta (WtPi)", n,
           time_best_of(repeats, [&] { k::reference::matmul_ta(w, pi, out); }),
           time_best_of(repeats, [&] { k::matmul_ta(w, pi, out); }));
    report("matmul_tb (PiHt)", n,
           time_best_of(repeats, [&] { k::reference::matmul_tb(pi, h, out); }),
           time_best_of(repeats, [&] { k::matmul_tb(pi, h, out); }));
    report("matmul (WH)", n, time_best_of(repeats, [&] { k::reference::matmul(w, h, out); }),
           time_best_of(repeats, [&] { k::matmul(w, h, out); }));

    Matrix recon;
    k::matmul(w, h, recon);
    report("squared_distance", n,
           time_best_of(repeats, [&] { (void)k::reference::squared_distance(pi, recon); }),
           time_best_of(repeats, [&] { (void)k::squared_distance(pi, recon); }));

    const std::size_t draws = 500;
    std::vector<int> labels(n * draws);
    for (auto& v : labels) v = static_cast<int>(rng.uniform_index(8));
    std::vector<std::uint32_t> counts;
    report("co_cluster_counts", n,
           time_best_of(repeats, [&] { k::reference::co_cluster_counts(labels, n, draws, counts); }),
           time_best_of(repeats, [&] { k::co_cluster_counts(labels, n, draws, counts); }));
  }
  return 0;
}
