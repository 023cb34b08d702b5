// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace nmfclust {

namespace {
int g_threads = 0;
}

void set_threads(int n) {
  g_threads = n > 0 ? n : 0;
  if (n > 0) omp_set_num_threads(n);
}

int threads() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

namespace kernels {

// ---- serial reference ----------------------------------------------------

namespace reference {

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.cols() == b.rows());
  c = Matrix(a.rows(), b.cols(), 0.0);
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a(i, p);
      const double* bp = b.row(p);
      for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
    }
  }
}

void matmul_ta(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.rows() == b.rows());
  c = Matrix(a.cols(), b.cols(), 0.0);
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t p = 0; p < k; ++p) {
    double* cp = c.row(p);
    for (std::size_t i = 0; i < n; ++i) {
      const double aip = a(i, p);
      const double* bi = b.row(i);
      for (std::size_t j = 0; j < m; ++j) cp[j] += aip * bi[j];
    }
  }
}

void matmul_tb(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.cols() == b.cols());
  c = Matrix(a.rows(), b.rows(), 0.0);
  const std::size_t n = a.rows(), m = b.rows(), k = a.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t p = 0; p < m; ++p) {
      const double* bp = b.row(p);
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += ai[j] * bp[j];
      ci[p] = acc;
    }
  }
}

void multiplicative_update(Matrix& x, const Matrix& num, const Matrix& den, double floor) {
  assert(x.same_shape(num) && x.same_shape(den));
  double* xd = x.data();
  const double* nd = num.data();
  const double* dd = den.data();
  const std::size_t sz = x.size();
  for (std::size_t i = 0; i < sz; ++i) xd[i] = std::max(xd[i] * (nd[i] / dd[i]), floor);
}

void elementwise_ratio(const Matrix& num, const Matrix& den, Matrix& out) {
  assert(num.same_shape(den));
  out = Matrix(num.rows(), num.cols());
  const double* nd = num.data();
  const double* dd = den.data();
  double* od = out.data();
  const std::size_t sz = num.size();
  for (std::size_t i = 0; i < sz; ++i) od[i] = nd[i] / dd[i];
}

double squared_distance(const Matrix& a, const Matrix& b) {
  assert(a.same_shape(b));
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    const double* bi = b.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = ai[j] - bi[j];
      acc += d * d;
    }
    total += acc;
  }
  return total;
}

double generalized_kl(const Matrix& p, const Matrix& q) {
  assert(p.same_shape(q));
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const double* pi = p.row(i);
    const double* qi = q.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const double pv = pi[j], qv = qi[j];
      acc += (pv > 0.0 ? pv * std::log(pv / qv) - pv : 0.0) + qv;
    }
    total += acc;
  }
  return total;
}

void co_cluster_counts(const std::vector<int>& draws, std::size_t n, std::size_t m,
                       std::vector<std::uint32_t>& counts) {
  counts.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    counts[i * n + i] = static_cast<std::uint32_t>(m);
    const int* di = draws.data() + i * m;
    for (std::size_t j = i + 1; j < n; ++j) {
      const int* dj = draws.data() + j * m;
      std::uint32_t c = 0;
      for (std::size_t t = 0; t < m; ++t) c += (di[t] == dj[t]);
      counts[i * n + j] = c;
      counts[j * n + i] = c;
    }
  }
}

}  // namespace reference

// ---- OpenMP kernels --------------------------------------------------------

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.cols() == b.rows());
  c = Matrix(a.rows(), b.cols(), 0.0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t k = a.cols(), m = b.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double* ci = c.row(static_cast<std::size_t>(i));
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a(static_cast<std::size_t>(i), p);
      const double* bp = b.row(p);
      for (std::size_t j = 0; j < m; ++j) ci[j] += aip * bp[j];
    }
  }
}

void matmul_ta(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.rows() == b.rows());
  c = Matrix(a.cols(), b.cols(), 0.0);
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(a.cols());
  const std::size_t n = a.rows(), m = b.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < k; ++p) {
    double* cp = c.row(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < n; ++i) {
      const double aip = a(i, static_cast<std::size_t>(p));
      const double* bi = b.row(i);
      for (std::size_t j = 0; j < m; ++j) cp[j] += aip * bi[j];
    }
  }
}

void matmul_tb(const Matrix& a, const Matrix& b, Matrix& c) {
  assert(a.cols() == b.cols());
  c = Matrix(a.rows(), b.rows(), 0.0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
  const std::size_t m = b.rows(), k = a.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* ai = a.row(static_cast<std::size_t>(i));
    double* ci = c.row(static_cast<std::size_t>(i));
    for (std::size_t p = 0; p < m; ++p) {
      const double* bp = b.row(p);
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += ai[j] * bp[j];
      ci[p] = acc;
    }
  }
}

void multiplicative_update(Matrix& x, const Matrix& num, const Matrix& den, double floor) {
  assert(x.same_shape(num) && x.same_shape(den));
  double* xd = x.data();
  const double* nd = num.data();
  const double* dd = den.data();
  const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sz; ++i) xd[i] = std::max(xd[i] * (nd[i] / dd[i]), floor);
}

void elementwise_ratio(const Matrix& num, const Matrix& den, Matrix& out) {
  assert(num.same_shape(den));
  out = Matrix(num.rows(), num.cols());
  const double* nd = num.data();
  const double* dd = den.data();
  double* od = out.data();
  const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(num.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sz; ++i) od[i] = nd[i] / dd[i];
}

// Reductions collect per-row partials and sum them in row order afterwards,
// keeping the result independent of the thread count.

double squared_distance(const Matrix& a, const Matrix& b) {
  assert(a.same_shape(b));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
  std::vector<double> partial(a.rows(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* ai = a.row(static_cast<std::size_t>(i));
    const double* bi = b.row(static_cast<std::size_t>(i));
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = ai[j] - bi[j];
      acc += d * d;
    }
    partial[static_cast<std::size_t>(i)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

double generalized_kl(const Matrix& p, const Matrix& q) {
  assert(p.same_shape(q));
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.rows());
  std::vector<double> partial(p.rows(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* pi = p.row(static_cast<std::size_t>(i));
    const double* qi = q.row(static_cast<std::size_t>(i));
    double acc = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const double pv = pi[j], qv = qi[j];
      acc += (pv > 0.0 ? pv * std::log(pv / qv) - pv : 0.0) + qv;
    }
    partial[static_cast<std::size_t>(i)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void co_cluster_counts(const std::vector<int>& draws, std::size_t n, std::size_t m,
                       std::vector<std::uint32_t>& counts) {
  counts.assign(n * n, 0);
  const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
  // Row i owns pairs (i, j>i); dynamic schedule balances the shrinking rows.
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t ii = 0; ii < pn; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    counts[i * n + i] = static_cast<std::uint32_t>(m);
    const int* di = draws.data() + i * m;
    for (std::size_t j = i + 1; j < n; ++j) {
      const int* dj = draws.data() + j * m;
      std::uint32_t c = 0;
      for (std::size_t t = 0; t < m; ++t) c += (di[t] == dj[t]);
      counts[i * n + j] = c;
    }
  }
  // Mirror below the diagonal once the upper half is final.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ii = 0; ii < pn; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < i; ++j) counts[i * n + j] = counts[j * n + i];
  }
}

}  // namespace kernels
}  // namespace nmfclust
