// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/nmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nmfclust/errors.hpp"
#include "nmfclust/kernels.hpp"
#include "nmfclust/rng.hpp"

namespace nmfclust {

namespace {

// Floor applied to W, H, and the offset after every multiplicative update.
// Keeps factors strictly positive so no denominator can vanish and no
// entry gets absorbed at zero.
constexpr double kFloor = 1e-12;

double matrix_mean(const Matrix& m) {
  double total = 0.0;
  const double* d = m.data();
  for (std::size_t i = 0; i < m.size(); ++i) total += d[i];
  return total / static_cast<double>(m.size());
}

std::vector<double> row_sums(const Matrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += r[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> col_sums(const Matrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += r[j];
  }
  return out;
}

// W -> W S for S = (1-t) I + (t/K) J, computed without forming S:
// (W S)_ia = (1-t) W_ia + (t/K) rowsum_i(W). At t = 0 this reproduces W
// exactly, so the nonsmooth trajectory coincides with least squares.
Matrix smooth_basis(const Matrix& w, double theta) {
  const std::size_t n = w.rows(), k = w.cols();
  Matrix out(n, k);
  const double mix = theta / static_cast<double>(k);
  for (std::size_t i = 0; i < n; ++i) {
    const double* wi = w.row(i);
    double rs = 0.0;
    for (std::size_t a = 0; a < k; ++a) rs += wi[a];
    double* oi = out.row(i);
    for (std::size_t a = 0; a < k; ++a) oi[a] = (1.0 - theta) * wi[a] + mix * rs;
  }
  return out;
}

// H -> S H, by the same identity on columns.
Matrix smooth_weights(const Matrix& h, double theta) {
  const std::size_t k = h.rows(), n = h.cols();
  Matrix out(k, n);
  const double mix = theta / static_cast<double>(k);
  std::vector<double> cs = col_sums(h);
  for (std::size_t a = 0; a < k; ++a) {
    const double* ha = h.row(a);
    double* oa = out.row(a);
    for (std::size_t j = 0; j < n; ++j) oa[j] = (1.0 - theta) * ha[j] + mix * cs[j];
  }
  return out;
}

void add_offset_columns(Matrix& recon, const std::vector<double>& offset) {
  for (std::size_t i = 0; i < recon.rows(); ++i) {
    double* r = recon.row(i);
    const double b = offset[i];
    for (std::size_t j = 0; j < recon.cols(); ++j) r[j] += b;
  }
}

struct Workspace {
  Matrix num_h, den_h, gram;    // k x n, k x n, k x k
  Matrix num_w, den_w, hgram;   // n x k, n x k, k x k
  Matrix recon, ratio;          // n x n
};

void step_ls(const Matrix& pi, Matrix& w, Matrix& h, Workspace& ws) {
  // H_aj *= (W^T pi)_aj / (W^T W H)_aj
  kernels::matmul_ta(w, pi, ws.num_h);
  kernels::matmul_ta(w, w, ws.gram);
  kernels::matmul(ws.gram, h, ws.den_h);
  kernels::multiplicative_update(h, ws.num_h, ws.den_h, kFloor);
  // W_ia *= (pi H^T)_ia / (W H H^T)_ia, with the updated H.
  kernels::matmul_tb(pi, h, ws.num_w);
  kernels::matmul_tb(h, h, ws.hgram);
  kernels::matmul(w, ws.hgram, ws.den_w);
  kernels::multiplicative_update(w, ws.num_w, ws.den_w, kFloor);
}

void step_ns(const Matrix& pi, Matrix& w, Matrix& h, double theta, Workspace& ws) {
  const Matrix wb = smooth_basis(w, theta);
  kernels::matmul_ta(wb, pi, ws.num_h);
  kernels::matmul_ta(wb, wb, ws.gram);
  kernels::matmul(ws.gram, h, ws.den_h);
  kernels::multiplicative_update(h, ws.num_h, ws.den_h, kFloor);

  const Matrix hb = smooth_weights(h, theta);
  kernels::matmul_tb(pi, hb, ws.num_w);
  kernels::matmul_tb(hb, hb, ws.hgram);
  kernels::matmul(w, ws.hgram, ws.den_w);
  kernels::multiplicative_update(w, ws.num_w, ws.den_w, kFloor);
}

void step_kl(const Matrix& pi, Matrix& w, Matrix& h, Workspace& ws) {
  // H update: H_aj *= sum_i W_ia pi_ij / (WH)_ij / colsum_a(W).
  kernels::matmul(w, h, ws.recon);
  kernels::elementwise_ratio(pi, ws.recon, ws.ratio);
  kernels::matmul_ta(w, ws.ratio, ws.num_h);
  const std::vector<double> wcol = col_sums(w);
  for (std::size_t a = 0; a < h.rows(); ++a) {
    double* ha = h.row(a);
    const double* na = ws.num_h.row(a);
    const double inv = 1.0 / wcol[a];
    for (std::size_t j = 0; j < h.cols(); ++j)
      ha[j] = std::max(ha[j] * na[j] * inv, kFloor);
  }
  // W update against the updated H.
  kernels::matmul(w, h, ws.recon);
  kernels::elementwise_ratio(pi, ws.recon, ws.ratio);
  kernels::matmul_tb(ws.ratio, h, ws.num_w);
  const std::vector<double> hrow = row_sums(h);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    double* wi = w.row(i);
    const double* ni = ws.num_w.row(i);
    for (std::size_t a = 0; a < w.cols(); ++a)
      wi[a] = std::max(wi[a] * ni[a] / hrow[a], kFloor);
  }
}

void step_offset(const Matrix& pi, Matrix& w, Matrix& h, std::vector<double>& offset,
                 Workspace& ws) {
  // H update with the current reconstruction in the denominator.
  kernels::matmul(w, h, ws.recon);
  add_offset_columns(ws.recon, offset);
  kernels::matmul_ta(w, pi, ws.num_h);
  kernels::matmul_ta(w, ws.recon, ws.den_h);
  kernels::multiplicative_update(h, ws.num_h, ws.den_h, kFloor);

  // Joint (W, b) update from the reconstruction with the new H: this is a
  // single multiplicative step on the extended basis [W b] whose extra
  // weight row is pinned at one.
  kernels::matmul(w, h, ws.recon);
  add_offset_columns(ws.recon, offset);
  kernels::matmul_tb(pi, h, ws.num_w);
  kernels::matmul_tb(ws.recon, h, ws.den_w);
  const std::vector<double> pi_rows = row_sums(pi);
  const std::vector<double> recon_rows = row_sums(ws.recon);
  kernels::multiplicative_update(w, ws.num_w, ws.den_w, kFloor);
  for (std::size_t i = 0; i < offset.size(); ++i)
    offset[i] = std::max(offset[i] * (pi_rows[i] / recon_rows[i]), kFloor);
}

double objective_of(const Matrix& pi, const Matrix& w, const Matrix& h,
                    const NmfVariant& variant, const std::vector<double>& offset,
                    Workspace& ws) {
  switch (variant.kind) {
    case NmfVariant::Kind::least_squares:
      kernels::matmul(w, h, ws.recon);
      return kernels::squared_distance(pi, ws.recon);
    case NmfVariant::Kind::kullback_leibler:
      kernels::matmul(w, h, ws.recon);
      return kernels::generalized_kl(pi, ws.recon);
    case NmfVariant::Kind::nonsmooth: {
      const Matrix wb = smooth_basis(w, variant.theta);
      kernels::matmul(wb, h, ws.recon);
      return kernels::squared_distance(pi, ws.recon);
    }
    case NmfVariant::Kind::offset:
      kernels::matmul(w, h, ws.recon);
      add_offset_columns(ws.recon, offset);
      return kernels::squared_distance(pi, ws.recon);
  }
  return 0.0;
}

}  // namespace

const char* variant_name(const NmfVariant& v) {
  switch (v.kind) {
    case NmfVariant::Kind::least_squares: return "ls";
    case NmfVariant::Kind::kullback_leibler: return "kl";
    case NmfVariant::Kind::nonsmooth: return "ns";
    case NmfVariant::Kind::offset: return "offset";
  }
  return "?";
}

std::optional<NmfVariant> parse_variant(const std::string& name, double theta) {
  if (name == "ls") return NmfVariant::least_squares();
  if (name == "kl") return NmfVariant::kullback_leibler();
  if (name == "ns") return NmfVariant::nonsmooth(theta);
  if (name == "offset") return NmfVariant::offset();
  return std::nullopt;
}

void update_step_ls(const Matrix& pi, Matrix& w, Matrix& h) {
  Workspace ws;
  step_ls(pi, w, h, ws);
}

void update_step_kl(const Matrix& pi, Matrix& w, Matrix& h) {
  Workspace ws;
  step_kl(pi, w, h, ws);
}

NmfSolution factorize(const SimilarityMatrix& pi, std::size_t k, const NmfVariant& variant,
                      const NmfConfig& config) {
  const std::size_t n = pi.size();
  if (k < 1 || k > n)
    throw InputShapeError("rank must be in [1, n]; got k=" + std::to_string(k) +
                          " for n=" + std::to_string(n));
  const Matrix& target = pi.values();

  NmfSolution sol;
  sol.variant = variant;
  sol.seed = config.seed;
  sol.w = Matrix(n, k);
  sol.h = Matrix(k, n);

  // Uniform (0, 1] entries scaled so the initial reconstruction magnitude
  // is comparable to pi.
  Rng rng(config.seed);
  const double scale = std::sqrt(matrix_mean(target) / static_cast<double>(k));
  for (std::size_t i = 0; i < sol.w.size(); ++i) sol.w.data()[i] = rng.uniform_pos() * scale;
  for (std::size_t i = 0; i < sol.h.size(); ++i) sol.h.data()[i] = rng.uniform_pos() * scale;
  if (variant.kind == NmfVariant::Kind::offset) {
    sol.offset = row_sums(target);
    for (double& b : sol.offset) b *= 0.1 / static_cast<double>(n);
  }

  Workspace ws;
  sol.objective_trace.reserve(static_cast<std::size_t>(config.max_iters) + 1);
  sol.objective_trace.push_back(objective_of(target, sol.w, sol.h, variant, sol.offset, ws));

  for (int iter = 0; iter < config.max_iters; ++iter) {
    switch (variant.kind) {
      case NmfVariant::Kind::least_squares: step_ls(target, sol.w, sol.h, ws); break;
      case NmfVariant::Kind::kullback_leibler: step_kl(target, sol.w, sol.h, ws); break;
      case NmfVariant::Kind::nonsmooth: step_ns(target, sol.w, sol.h, variant.theta, ws); break;
      case NmfVariant::Kind::offset: step_offset(target, sol.w, sol.h, sol.offset, ws); break;
    }
    sol.objective_trace.push_back(objective_of(target, sol.w, sol.h, variant, sol.offset, ws));
    sol.iterations = iter + 1;

    const std::size_t t = sol.objective_trace.size();
    if (t > 10) {
      const double before = sol.objective_trace[t - 11];
      const double now = sol.objective_trace[t - 1];
      if (before - now < config.rel_tolerance * std::max(before, 1e-300)) {
        sol.converged = true;
        break;
      }
    }
  }
  return sol;
}

NmfSolution multi_start(const SimilarityMatrix& pi, std::size_t k, const NmfVariant& variant,
                        int starts, const NmfConfig& config) {
  if (starts < 1) throw InputShapeError("multi_start needs at least one start");
  std::vector<NmfSolution> runs(static_cast<std::size_t>(starts));
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < starts; ++s) {
    NmfConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(s);
    runs[static_cast<std::size_t>(s)] = factorize(pi, k, variant, c);
  }
  // Deterministic reduction: lowest objective, ties to the smallest seed.
  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s)
    if (runs[s].objective() < runs[best].objective()) best = s;
  return std::move(runs[best]);
}

Partition extract_hard(const NmfSolution& solution) {
  const std::size_t k = solution.h.rows(), n = solution.h.cols();
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t arg = 0;
    double best = solution.h(0, i);
    for (std::size_t a = 1; a < k; ++a)
      if (solution.h(a, i) > best) {
        best = solution.h(a, i);
        arg = a;
      }
    labels[i] = static_cast<int>(arg);
  }
  return Partition(std::move(labels));
}

SoftAssignment extract_soft(const NmfSolution& solution) {
  const std::size_t k = solution.h.rows(), n = solution.h.cols();
  SoftAssignment soft{Matrix(n, k)};
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) total += solution.h(a, i);
    for (std::size_t a = 0; a < k; ++a) soft.probs(i, a) = solution.h(a, i) / total;
  }
  return soft;
}

Matrix reconstruct(const NmfSolution& solution) {
  Matrix recon;
  if (solution.variant.kind == NmfVariant::Kind::nonsmooth) {
    const Matrix wb = smooth_basis(solution.w, solution.variant.theta);
    kernels::matmul(wb, solution.h, recon);
  } else {
    kernels::matmul(solution.w, solution.h, recon);
  }
  if (solution.variant.kind == NmfVariant::Kind::offset) add_offset_columns(recon, solution.offset);
  return recon;
}

}  // namespace nmfclust
