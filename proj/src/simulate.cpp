// Apache License, Version 2.0, refer to LICENSE.txt

#include "nmfclust/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "nmfclust/baselines.hpp"
#include "nmfclust/errors.hpp"
#include "nmfclust/metrics.hpp"
#include "nmfclust/nmf.hpp"
#include "nmfclust/rng.hpp"
#include "nmfclust/selection.hpp"

namespace nmfclust {

namespace {

constexpr std::size_t kDim = 2;

// Lower-triangular Cholesky factor of a 2x2 SPD matrix (row-major).
std::array<double, 4> cholesky2(const std::array<double, 4>& s) {
  const double l00 = std::sqrt(s[0]);
  const double l10 = s[2] / l00;
  const double l11 = std::sqrt(s[3] - l10 * l10);
  return {l00, 0.0, l10, l11};
}

}  // namespace

MixtureConfig MixtureConfig::from_flags(bool separate, bool balanced, bool spherical) {
  MixtureConfig c;
  c.separate = separate;
  c.balanced = balanced;
  c.spherical = spherical;
  const double r = separate ? 3.0 : 1.5;
  c.means = {{{r, r}, {-r, r}, {-r, -r}, {r, -r}}};
  if (balanced) {
    c.sizes = {100, 100, 100, 100};
  } else {
    c.sizes = {150, 50, 100, 30};
  }
  if (spherical) {
    c.covariances = {{{1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}}};
  } else {
    c.covariances = {{{2, -0.8, -0.8, 1}, {1, 0.8, 0.8, 2}, {1, 0.4, 0.4, 1}, {2, 0, 0, 2}}};
  }
  return c;
}

std::optional<MixtureConfig> MixtureConfig::from_code(const std::string& code) {
  if (code.size() != 3) return std::nullopt;
  auto flag = [](char ch) -> std::optional<bool> {
    if (ch == 'T' || ch == 't') return true;
    if (ch == 'F' || ch == 'f') return false;
    return std::nullopt;
  };
  const auto s = flag(code[0]), b = flag(code[1]), p = flag(code[2]);
  if (!s || !b || !p) return std::nullopt;
  return from_flags(*s, *b, *p);
}

std::string MixtureConfig::code() const {
  std::string s;
  s += separate ? 'T' : 'F';
  s += balanced ? 'T' : 'F';
  s += spherical ? 'T' : 'F';
  return s;
}

std::size_t MixtureConfig::total_observations() const {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  return n;
}

Dataset generate(const MixtureConfig& config, std::uint64_t seed) {
  const std::size_t n = config.total_observations();
  Dataset ds{Matrix(n, kDim), Partition()};
  std::vector<int> truth(n);
  Rng rng(seed);
  std::size_t row = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto chol = cholesky2(config.covariances[k]);
    for (std::size_t t = 0; t < config.sizes[k]; ++t, ++row) {
      const double z0 = rng.normal();
      const double z1 = rng.normal();
      ds.data(row, 0) = config.means[k][0] + chol[0] * z0;
      ds.data(row, 1) = config.means[k][1] + chol[2] * z0 + chol[3] * z1;
      truth[row] = static_cast<int>(k);
    }
  }
  ds.truth = Partition(std::move(truth));
  return ds;
}

namespace {

// Per-component running sufficient statistics for the collapsed sampler:
// count, coordinate sums, and the sum of outer products.
struct ComponentStats {
  double count = 0.0;
  std::array<double, kDim> sum{};
  std::array<double, 4> outer{};  // row-major 2x2

  void add(const double* y) {
    count += 1.0;
    sum[0] += y[0];
    sum[1] += y[1];
    outer[0] += y[0] * y[0];
    outer[1] += y[0] * y[1];
    outer[2] += y[1] * y[0];
    outer[3] += y[1] * y[1];
  }
  void remove(const double* y) {
    count -= 1.0;
    sum[0] -= y[0];
    sum[1] -= y[1];
    outer[0] -= y[0] * y[0];
    outer[1] -= y[0] * y[1];
    outer[2] -= y[1] * y[0];
    outer[3] -= y[1] * y[1];
  }
};

// Normal-inverse-Wishart prior plus cached lgamma tables for the posterior
// predictive Student-t evaluations.
struct NiwPrior {
  std::array<double, kDim> mu0{};
  double kappa0 = 0.01;
  double nu0 = kDim + 2;
  std::array<double, 4> psi0{};

  std::vector<double> lg_half;       // lgamma(x/2) at half-integer grid
  std::vector<double> log_weight;    // log(m + dirichlet_weight)

  static NiwPrior from_data(const Matrix& data, double dirichlet_weight) {
    NiwPrior p;
    const std::size_t n = data.rows();
    for (std::size_t i = 0; i < n; ++i) {
      p.mu0[0] += data(i, 0);
      p.mu0[1] += data(i, 1);
    }
    p.mu0[0] /= static_cast<double>(n);
    p.mu0[1] /= static_cast<double>(n);

    // Empirical covariance, then psi0 = (1/2) its inverse.
    std::array<double, 4> cov{};
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = data(i, 0) - p.mu0[0];
      const double dy = data(i, 1) - p.mu0[1];
      cov[0] += dx * dx;
      cov[1] += dx * dy;
      cov[2] += dy * dx;
      cov[3] += dy * dy;
    }
    const double denom = static_cast<double>(n - 1);
    for (double& v : cov) v /= denom;
    const double det = cov[0] * cov[3] - cov[1] * cov[2];
    if (!(det > 0.0)) throw ValidationError("empirical covariance of the data is singular");
    p.psi0 = {0.5 * cov[3] / det, -0.5 * cov[1] / det, -0.5 * cov[2] / det, 0.5 * cov[0] / det};

    p.lg_half.resize(2 * (n + 16));
    for (std::size_t i = 1; i < p.lg_half.size(); ++i)
      p.lg_half[i] = std::lgamma(static_cast<double>(i) / 2.0);
    p.log_weight.resize(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
      p.log_weight[m] = std::log(static_cast<double>(m) + dirichlet_weight);
    return p;
  }
};

// Log posterior-predictive density of y under one component's Student-t.
double log_predictive(const NiwPrior& prior, const ComponentStats& st, const double* y) {
  const double m = st.count;
  const double kappa = prior.kappa0 + m;
  const double nu = prior.nu0 + m;

  std::array<double, kDim> mu;
  std::array<double, 4> psi = prior.psi0;
  if (m > 0.0) {
    const double inv_m = 1.0 / m;
    const std::array<double, kDim> ybar{st.sum[0] * inv_m, st.sum[1] * inv_m};
    // Scatter about the component mean.
    psi[0] += st.outer[0] - m * ybar[0] * ybar[0];
    psi[1] += st.outer[1] - m * ybar[0] * ybar[1];
    psi[2] += st.outer[2] - m * ybar[1] * ybar[0];
    psi[3] += st.outer[3] - m * ybar[1] * ybar[1];
    // Shrinkage toward the prior mean.
    const double w = prior.kappa0 * m / kappa;
    const double d0 = ybar[0] - prior.mu0[0];
    const double d1 = ybar[1] - prior.mu0[1];
    psi[0] += w * d0 * d0;
    psi[1] += w * d0 * d1;
    psi[2] += w * d1 * d0;
    psi[3] += w * d1 * d1;
    mu[0] = (prior.kappa0 * prior.mu0[0] + st.sum[0]) / kappa;
    mu[1] = (prior.kappa0 * prior.mu0[1] + st.sum[1]) / kappa;
  } else {
    mu = prior.mu0;
  }

  const double dof = nu - kDim + 1.0;
  const double scale = (kappa + 1.0) / (kappa * dof);
  // Scale matrix sigma = psi * scale; 2x2 determinant and quadratic form
  // in closed form.
  const double s00 = psi[0] * scale, s01 = psi[1] * scale, s11 = psi[3] * scale;
  const double det = s00 * s11 - s01 * s01;
  const double d0 = y[0] - mu[0];
  const double d1 = y[1] - mu[1];
  const double quad = (s11 * d0 * d0 - 2.0 * s01 * d0 * d1 + s00 * d1 * d1) / det;

  const auto half_index = [](double x) { return static_cast<std::size_t>(std::lround(2.0 * x)); };
  const double lg_num = prior.lg_half[half_index(dof + kDim)];
  const double lg_den = prior.lg_half[half_index(dof)];
  return lg_num - lg_den - 0.5 * kDim * std::log(dof * M_PI) - 0.5 * std::log(det) -
         0.5 * (dof + kDim) * std::log1p(quad / dof);
}

}  // namespace

LabelSampleSet gibbs_labels(const Matrix& data, const GibbsConfig& gc) {
  const std::size_t n = data.rows();
  if (data.cols() != kDim) throw InputShapeError("gibbs sampler expects bivariate data");
  if (n < gc.components) throw InputShapeError("fewer observations than mixture components");
  if (gc.kept < 1 || gc.thin < 1) throw InputShapeError("gibbs needs kept >= 1 and thin >= 1");
  for (std::size_t i = 0; i < data.size(); ++i)
    if (!std::isfinite(data.data()[i])) throw ValidationError("non-finite entry in data");

  const std::size_t kk = gc.components;
  const NiwPrior prior = NiwPrior::from_data(data, gc.dirichlet_weight);
  Rng rng(gc.seed);

  std::vector<int> labels(n);
  std::vector<ComponentStats> stats(kk);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(rng.uniform_index(kk));
    stats[static_cast<std::size_t>(labels[i])].add(data.row(i));
  }

  std::vector<std::vector<int>> draws;
  draws.reserve(gc.kept);
  std::vector<double> logp(kk);

  const std::size_t sweeps = gc.burn_in + gc.kept * gc.thin;
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* y = data.row(i);
      auto& own = stats[static_cast<std::size_t>(labels[i])];
      own.remove(y);
      double best = -1e300;
      for (std::size_t k = 0; k < kk; ++k) {
        const std::size_t m = static_cast<std::size_t>(stats[k].count);
        logp[k] = prior.log_weight[m] + log_predictive(prior, stats[k], y);
        best = std::max(best, logp[k]);
      }
      double total = 0.0;
      for (std::size_t k = 0; k < kk; ++k) {
        logp[k] = std::exp(logp[k] - best);
        total += logp[k];
      }
      const double u = rng.uniform() * total;
      double acc = 0.0;
      std::size_t pick = kk - 1;
      for (std::size_t k = 0; k < kk; ++k) {
        acc += logp[k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      labels[i] = static_cast<int>(pick);
      stats[pick].add(y);
    }
    if (sweep >= gc.burn_in && (sweep - gc.burn_in) % gc.thin == 0) draws.push_back(labels);
  }
  return LabelSampleSet(std::move(draws));
}

const char* method_name(Method m) {
  switch (m) {
    case Method::nmf_ls: return "nmf-ls";
    case Method::min_binder: return "minbinder";
    case Method::max_pear: return "maxpear";
    case Method::min_vi: return "minvi";
    case Method::medvedovic: return "medv";
    case Method::oracle: return "oracle";
    case Method::truth: return "truth";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  if (name == "nmf-ls" || name == "nmf") return Method::nmf_ls;
  if (name == "minbinder") return Method::min_binder;
  if (name == "maxpear") return Method::max_pear;
  if (name == "minvi") return Method::min_vi;
  if (name == "medv") return Method::medvedovic;
  if (name == "oracle") return Method::oracle;
  if (name == "truth") return Method::truth;
  return std::nullopt;
}

BenchmarkResult run_benchmark(const MixtureConfig& config, std::size_t reps,
                              const BenchmarkOptions& opts, const GibbsConfig& gc,
                              std::uint64_t seed) {
  if (reps < 1) throw InputShapeError("benchmark needs at least one replication");
  BenchmarkResult result;
  result.config = config;
  result.replications = reps;
  result.methods.reserve(opts.methods.size());
  for (Method m : opts.methods) result.methods.push_back(MethodScores{m, {}, {}, {}, {}});

  for (std::size_t rep = 0; rep < reps; ++rep) {
    const Dataset ds = generate(config, derive_seed(seed, 2 * rep));
    GibbsConfig chain = gc;
    chain.seed = derive_seed(seed, 2 * rep + 1);
    const LabelSampleSet samples = gibbs_labels(ds.data, chain);
    const SimilarityMatrix pi = build_similarity(samples);

    // The dendrogram search space is shared by the three conventional
    // estimators.
    CandidateSet dendro;
    const bool needs_dendro =
        std::any_of(opts.methods.begin(), opts.methods.end(), [](Method m) {
          return m == Method::min_binder || m == Method::max_pear || m == Method::min_vi;
        });
    if (needs_dendro) dendro = hclust_candidates(pi, Linkage::average);

    for (MethodScores& ms : result.methods) {
      Partition estimate;
      switch (ms.method) {
        case Method::nmf_ls: {
          NmfConfig nc;
          nc.seed = derive_seed(seed, 1000000 + rep);
          const std::size_t k_max = std::min(opts.k_max, pi.size());
          const auto report = select(pi, opts.k_min, k_max, NmfVariant::least_squares(),
                                     opts.nmf_penalty, opts.starts, nc);
          estimate = report.chosen_partition();
          break;
        }
        case Method::min_binder:
          estimate = best_in_set(pi, dendro, PenaltyKind::binder).first;
          break;
        case Method::max_pear:
          estimate = best_in_set(pi, dendro, PenaltyKind::pear).first;
          break;
        case Method::min_vi:
          estimate = best_in_set(pi, dendro, PenaltyKind::vi_lower_bound).first;
          break;
        case Method::medvedovic:
          estimate = medvedovic(pi);
          break;
        case Method::oracle:
          estimate = best_in_set(pi, enumerate_partitions(pi.size()), PenaltyKind::binder).first;
          break;
        case Method::truth:
          estimate = ds.truth;
          break;
      }
      ms.rand.push_back(rand_index(ds.truth, estimate));
      ms.adj_rand.push_back(adjusted_rand(ds.truth, estimate));
      ms.vi.push_back(variation_of_information(ds.truth, estimate));
      ms.chosen_k.push_back(estimate.num_clusters());
    }
  }
  return result;
}

double mean_of(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

double standard_error_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

double median_of(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return static_cast<double>(v[mid]);
  return 0.5 * static_cast<double>(v[mid - 1] + v[mid]);
}

}  // namespace nmfclust
