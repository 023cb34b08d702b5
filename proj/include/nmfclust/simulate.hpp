// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmfclust/matrix.hpp"
#include "nmfclust/partition.hpp"
#include "nmfclust/penalties.hpp"
#include "nmfclust/similarity.hpp"

namespace nmfclust {

/// One of the eight benchmark mixtures: four bivariate Gaussian components
/// whose means, sizes, and covariances are switched by the
/// (separateness, balancedness, sphericity) triplet.
struct MixtureConfig {
  bool separate = true;
  bool balanced = true;
  bool spherical = true;

  std::array<std::array<double, 2>, 4> means;
  std::array<std::size_t, 4> sizes;
  std::array<std::array<double, 4>, 4> covariances;  // row-major 2x2 each

  static MixtureConfig from_flags(bool separate, bool balanced, bool spherical);
  /// Three-letter code, e.g. "TTT" or "FTF".
  static std::optional<MixtureConfig> from_code(const std::string& code);
  std::string code() const;
  std::size_t total_observations() const;
};

/// Bivariate Gaussian mixture draw: data rows plus the generating labels.
struct Dataset {
  Matrix data;      // n x 2
  Partition truth;  // component of each row
};

Dataset generate(const MixtureConfig& config, std::uint64_t seed);

/// Collapsed Gibbs sampler settings for the finite Gaussian mixture with a
/// symmetric Dirichlet weight prior and a conjugate normal-inverse-Wishart
/// component prior. `components` caps the clusters; empty components are
/// allowed, so the effective cluster count varies across draws.
struct GibbsConfig {
  std::size_t components = 8;
  std::size_t burn_in = 500;
  std::size_t kept = 2000;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  double dirichlet_weight = 0.5;
};

/// Runs the sampler on (n x d) data and returns the retained label draws.
/// Deterministic given the seed.
LabelSampleSet gibbs_labels(const Matrix& data, const GibbsConfig& gc);

/// Partition estimators compared by the simulation benchmark.
enum class Method { nmf_ls, min_binder, max_pear, min_vi, medvedovic, oracle, truth };

const char* method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

/// Per-replication scores of one method against the generating labels.
struct MethodScores {
  Method method;
  std::vector<double> rand;
  std::vector<double> adj_rand;
  std::vector<double> vi;
  std::vector<std::size_t> chosen_k;
};

struct BenchmarkResult {
  MixtureConfig config;
  std::size_t replications = 0;
  std::vector<MethodScores> methods;
};

struct BenchmarkOptions {
  std::vector<Method> methods;
  std::size_t k_min = 2, k_max = 12;  // NMF selection range
  int starts = 10;
  PenaltyKind nmf_penalty = PenaltyKind::binder;
};

/// generate -> gibbs_labels -> similarity -> each method -> metrics, for
/// `reps` independent replications. Seeds are derived per replication, so
/// rerunning with the same arguments reproduces the table exactly.
BenchmarkResult run_benchmark(const MixtureConfig& config, std::size_t reps,
                              const BenchmarkOptions& opts, const GibbsConfig& gc,
                              std::uint64_t seed);

double mean_of(const std::vector<double>& v);
double standard_error_of(const std::vector<double>& v);
double median_of(std::vector<std::size_t> v);

}  // namespace nmfclust
