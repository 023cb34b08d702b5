// Apache License, Version 2.0, refer to LICENSE.txt
//
// Command-line front end: builds posterior similarity matrices from MCMC
// label draws, estimates hard/soft partitions by NMF, runs the
// conventional dendrogram-based estimators, scores partitions, and drives
// the simulation and timing benchmarks. Matrices and tables travel as
// CSV, structured reports as JSON, and every output gets a manifest
// recording the invocation and input digests.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nmfclust/baselines.hpp"
#include "nmfclust/csv.hpp"
#include "nmfclust/errors.hpp"
#include "nmfclust/kernels.hpp"
#include "nmfclust/metrics.hpp"
#include "nmfclust/nmf.hpp"
#include "nmfclust/penalties.hpp"
#include "nmfclust/rng.hpp"
#include "nmfclust/selection.hpp"
#include "nmfclust/similarity.hpp"
#include "nmfclust/simulate.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNotConverged = 3;

using nmfclust::Matrix;
using nmfclust::Partition;
using nmfclust::SimilarityMatrix;
using json = nlohmann::json;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::uint64_t h = 1469598103934665603ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)), in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return out;
}

// Every subcommand writes one of these next to its primary output so a run
// can be replayed bit-identically (timing columns excepted).
struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  void write(const std::string& path) const {
    json j;
    j["tool"] = "nmfclust";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["argv"] = argv;
    if (seed) j["seed"] = *seed;
    json in = json::object();
    for (const auto& p : inputs) in[p] = file_digest(p);
    j["inputs"] = in;
    j["outputs"] = outputs;
    std::ofstream out(path);
    if (!out) throw nmfclust::ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
  }
};

SimilarityMatrix load_psm(const std::string& path, double tolerance) {
  return nmfclust::validate_similarity(nmfclust::read_matrix_csv(path), tolerance);
}

// Accepts the single-row layout this tool writes and a single-column
// layout, both common in the wild.
Partition load_partition(const std::string& path) {
  const auto rows = nmfclust::read_labels_csv(path);
  if (rows.empty()) throw nmfclust::InputShapeError(path + ": no labels");
  std::vector<int> labels;
  if (rows.size() == 1) {
    labels = rows.front();
  } else {
    for (const auto& r : rows) {
      if (r.size() != 1)
        throw nmfclust::InputShapeError(path + ": expected a single row or single column of labels");
      labels.push_back(r.front());
    }
  }
  return Partition(std::move(labels));
}

std::vector<int> one_based(const std::vector<int>& canonical) {
  std::vector<int> out(canonical.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = canonical[i] + 1;
  return out;
}

json soft_to_json(const nmfclust::SoftAssignment& soft) {
  json rows = json::array();
  for (std::size_t i = 0; i < soft.probs.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < soft.probs.cols(); ++k) row.push_back(soft.probs(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_soft_csv(const std::string& path, const nmfclust::SoftAssignment& soft) {
  nmfclust::write_matrix_csv(path, soft.probs);
}

struct CommonNmfFlags {
  std::string variant = "ls";
  double theta = 0.5;
  int starts = 10;
  std::uint64_t seed = 0;
  int max_iters = 2000;
  double rel_tolerance = 1e-6;

  nmfclust::NmfVariant parse() const {
    auto v = nmfclust::parse_variant(variant, theta);
    if (!v) throw nmfclust::ValidationError("unknown NMF variant '" + variant + "'");
    return *v;
  }
  nmfclust::NmfConfig config() const { return {max_iters, rel_tolerance, seed}; }
};

void add_nmf_flags(CLI::App* cmd, CommonNmfFlags& f) {
  cmd->add_option("--variant", f.variant, "NMF model: ls|kl|ns|offset")->default_val("ls");
  cmd->add_option("--theta", f.theta, "smoothing weight for the ns variant")->default_val(0.5);
  cmd->add_option("--starts", f.starts, "random restarts per rank")->default_val(10);
  cmd->add_option("--seed", f.seed, "base RNG seed")->default_val(0);
  cmd->add_option("--max-iters", f.max_iters, "update-step cap per run")->default_val(2000);
  cmd->add_option("--rel-tol", f.rel_tolerance, "relative decrease over 10 iterations")
      ->default_val(1e-6);
}

nmfclust::PenaltyKind parse_loss_or_throw(const std::string& name) {
  auto k = nmfclust::parse_penalty(name);
  if (!k) throw nmfclust::ValidationError("unknown loss '" + name + "'");
  return *k;
}

SimilarityMatrix random_psm(std::size_t n, nmfclust::Rng& rng) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return nmfclust::validate_similarity(m, 0.0);
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_psm(const std::string& labels_path, bool header, const std::string& out,
            Manifest manifest) {
  const auto draws = nmfclust::read_labels_csv(labels_path, header);
  if (draws.empty()) throw nmfclust::InputShapeError(labels_path + ": no draws");
  const nmfclust::LabelSampleSet samples(draws);
  const SimilarityMatrix pi = nmfclust::build_similarity(samples);
  nmfclust::write_matrix_csv(out, pi.values());
  manifest.inputs = {labels_path};
  manifest.outputs = {out};
  manifest.write(out + ".manifest.json");
  return kExitOk;
}

int cmd_nmf(const std::string& psm_path, double psm_tol, std::size_t rank,
            const CommonNmfFlags& flags, const std::string& out, Manifest manifest) {
  const SimilarityMatrix pi = load_psm(psm_path, psm_tol);
  const auto solution =
      nmfclust::multi_start(pi, rank, flags.parse(), flags.starts, flags.config());
  const Partition hard = nmfclust::extract_hard(solution);
  const auto soft = nmfclust::extract_soft(solution);

  json j;
  j["labels"] = one_based(hard.canonical());
  j["soft_matrix"] = soft_to_json(soft);
  j["objective"] = solution.objective();
  j["iterations"] = solution.iterations;
  j["converged"] = solution.converged;
  j["rank"] = rank;
  j["clusters"] = hard.num_clusters();
  j["variant"] = nmfclust::variant_name(solution.variant);
  j["seed"] = solution.seed;
  std::ofstream o(out);
  if (!o) throw nmfclust::ValidationError("cannot write " + out);
  o << j.dump(2) << "\n";

  manifest.inputs = {psm_path};
  manifest.outputs = {out};
  manifest.write(out + ".manifest.json");
  return solution.converged ? kExitOk : kExitNotConverged;
}

int cmd_select(const std::string& psm_path, double psm_tol, std::size_t k_min, std::size_t k_max,
               const std::string& loss, const CommonNmfFlags& flags, bool keep_all_soft,
               const std::string& prefix, Manifest manifest) {
  const SimilarityMatrix pi = load_psm(psm_path, psm_tol);
  const auto penalty = parse_loss_or_throw(loss);
  const auto report =
      nmfclust::select(pi, k_min, k_max, flags.parse(), penalty, flags.starts, flags.config());

  json j;
  j["loss"] = loss;
  j["chosen_k"] = report.chosen_k();
  j["chosen_clusters"] = report.chosen().realized_clusters;
  j["chosen_penalty"] = report.chosen().penalty;
  j["labels"] = one_based(report.chosen_partition().canonical());
  j["converged"] = report.chosen().solution.converged;
  json rows = json::array();
  for (const auto& row : report.per_k) {
    json r;
    r["k"] = row.rank;
    r["clusters"] = row.realized_clusters;
    r["penalty"] = row.penalty;
    r["penalty_degenerate"] = row.penalty_degenerate;
    r["objective"] = row.solution.objective();
    r["iterations"] = row.solution.iterations;
    r["converged"] = row.solution.converged;
    if (keep_all_soft) r["soft_matrix"] = soft_to_json(nmfclust::extract_soft(row.solution));
    rows.push_back(std::move(r));
  }
  j["per_k"] = rows;

  const std::string report_path = prefix + ".report.json";
  const std::string curve_path = prefix + ".curve.csv";
  const std::string labels_path = prefix + ".labels.csv";
  const std::string soft_path = prefix + ".soft.csv";
  {
    std::ofstream o(report_path);
    if (!o) throw nmfclust::ValidationError("cannot write " + report_path);
    o << j.dump(2) << "\n";
  }
  std::vector<std::vector<std::string>> curve{{"k", "penalty"}};
  for (const auto& [k, p] : nmfclust::penalty_curve(report))
    curve.push_back({std::to_string(k), nmfclust::format_double(p)});
  nmfclust::write_table_csv(curve_path, curve);
  nmfclust::write_labels_csv(labels_path, one_based(report.chosen_partition().canonical()));
  write_soft_csv(soft_path, nmfclust::extract_soft(report.chosen().solution));

  manifest.inputs = {psm_path};
  manifest.outputs = {report_path, curve_path, labels_path, soft_path};
  manifest.write(prefix + ".manifest.json");
  return report.chosen().solution.converged ? kExitOk : kExitNotConverged;
}

int cmd_baseline(const std::string& psm_path, double psm_tol, const std::string& method,
                 double cut, const std::string& loss, const std::string& prefix,
                 Manifest manifest) {
  const SimilarityMatrix pi = load_psm(psm_path, psm_tol);
  Partition estimate;
  double penalty_value = 0.0;
  std::string penalty_used = loss;
  if (method == "medv") {
    estimate = nmfclust::medvedovic(pi, cut);
    penalty_used = "";
  } else if (method == "oracle") {
    auto [part, value] =
        nmfclust::best_in_set(pi, nmfclust::enumerate_partitions(pi.size()),
                              parse_loss_or_throw(loss));
    estimate = std::move(part);
    penalty_value = value;
  } else {
    nmfclust::PenaltyKind kind;
    if (method == "minbinder") kind = nmfclust::PenaltyKind::binder;
    else if (method == "maxpear") kind = nmfclust::PenaltyKind::pear;
    else if (method == "minvi") kind = nmfclust::PenaltyKind::vi_lower_bound;
    else throw nmfclust::ValidationError("unknown baseline method '" + method + "'");
    penalty_used = nmfclust::penalty_name(kind);
    auto [part, value] =
        nmfclust::best_in_set(pi, nmfclust::hclust_candidates(pi, nmfclust::Linkage::average), kind);
    estimate = std::move(part);
    penalty_value = value;
  }

  json j;
  j["method"] = method;
  j["labels"] = one_based(estimate.canonical());
  j["clusters"] = estimate.num_clusters();
  if (!penalty_used.empty()) {
    j["loss"] = penalty_used;
    j["penalty"] = penalty_value;
  }
  if (method == "medv") j["cut"] = cut;
  const std::string json_path = prefix + ".json";
  const std::string labels_path = prefix + ".labels.csv";
  {
    std::ofstream o(json_path);
    if (!o) throw nmfclust::ValidationError("cannot write " + json_path);
    o << j.dump(2) << "\n";
  }
  nmfclust::write_labels_csv(labels_path, one_based(estimate.canonical()));

  manifest.inputs = {psm_path};
  manifest.outputs = {json_path, labels_path};
  manifest.write(prefix + ".manifest.json");
  return kExitOk;
}

int cmd_evaluate(const std::string& truth_path, const std::string& estimate_path,
                 const std::string& out, Manifest manifest) {
  const Partition truth = load_partition(truth_path);
  const Partition estimate = load_partition(estimate_path);
  json j;
  j["rand"] = nmfclust::rand_index(truth, estimate);
  j["adjusted_rand"] = nmfclust::adjusted_rand(truth, estimate);
  j["vi"] = nmfclust::variation_of_information(truth, estimate);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw nmfclust::ValidationError("cannot write " + out);
    o << j.dump(2) << "\n";
    manifest.inputs = {truth_path, estimate_path};
    manifest.outputs = {out};
    manifest.write(out + ".manifest.json");
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_code, std::size_t reps,
                 const nmfclust::GibbsConfig& gc, const nmfclust::BenchmarkOptions& opts,
                 std::uint64_t seed, const std::string& prefix, Manifest manifest) {
  const auto config = nmfclust::MixtureConfig::from_code(config_code);
  if (!config)
    throw nmfclust::ValidationError("unknown configuration '" + config_code +
                                    "' (expected a T/F triplet like TTT or FTF)");
  const auto result = nmfclust::run_benchmark(*config, reps, opts, gc, seed);

  std::vector<std::vector<std::string>> table{
      {"method", "rand_mean", "rand_se", "ar_mean", "ar_se", "vi_mean", "vi_se"}};
  for (const auto& ms : result.methods) {
    table.push_back({nmfclust::method_name(ms.method),
                     nmfclust::format_double(nmfclust::mean_of(ms.rand)),
                     nmfclust::format_double(nmfclust::standard_error_of(ms.rand)),
                     nmfclust::format_double(nmfclust::mean_of(ms.adj_rand)),
                     nmfclust::format_double(nmfclust::standard_error_of(ms.adj_rand)),
                     nmfclust::format_double(nmfclust::mean_of(ms.vi)),
                     nmfclust::format_double(nmfclust::standard_error_of(ms.vi))});
  }
  // Chosen-K counts with everything above 8 truncated to 8.
  std::vector<std::vector<std::string>> kdist{{"method", "k1", "k2", "k3", "k4", "k5", "k6", "k7",
                                               "k8plus"}};
  for (const auto& ms : result.methods) {
    std::vector<std::size_t> counts(8, 0);
    for (std::size_t k : ms.chosen_k) ++counts[std::min<std::size_t>(k, 8) - 1];
    std::vector<std::string> row{nmfclust::method_name(ms.method)};
    for (std::size_t c : counts) row.push_back(std::to_string(c));
    kdist.push_back(std::move(row));
  }

  const std::string table_path = prefix + ".table.csv";
  const std::string kdist_path = prefix + ".kdist.csv";
  nmfclust::write_table_csv(table_path, table);
  nmfclust::write_table_csv(kdist_path, kdist);
  manifest.outputs = {table_path, kdist_path};
  manifest.write(prefix + ".manifest.json");
  return kExitOk;
}

int cmd_timing(const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& ranks,
               const std::string& variant_name, double theta, int iters, int repeats,
               std::uint64_t seed, const std::string& out, Manifest manifest) {
  if (sizes.empty() || ranks.empty())
    throw nmfclust::ValidationError("timing needs at least one size and one rank");
  auto variant = nmfclust::parse_variant(variant_name, theta);
  if (!variant) throw nmfclust::ValidationError("unknown NMF variant '" + variant_name + "'");

  std::vector<std::vector<std::string>> rows{
      {"n", "k", "variant", "iters", "seconds_total", "seconds_per_iter"}};
  for (std::size_t n : sizes) {
    nmfclust::Rng rng(nmfclust::derive_seed(seed, n));
    const SimilarityMatrix pi = random_psm(n, rng);
    for (std::size_t k : ranks) {
      nmfclust::NmfConfig config;
      config.max_iters = iters;
      config.rel_tolerance = 0.0;  // fixed iteration count
      config.seed = nmfclust::derive_seed(seed, n * 1000 + k);
      double best = 1e300;
      for (int rep = 0; rep < repeats; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const auto sol = nmfclust::factorize(pi, k, *variant, config);
        const auto stop = std::chrono::steady_clock::now();
        (void)sol;
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
      }
      rows.push_back({std::to_string(n), std::to_string(k), variant_name, std::to_string(iters),
                      nmfclust::format_double(best),
                      nmfclust::format_double(best / static_cast<double>(iters))});
    }
  }
  nmfclust::write_table_csv(out, rows);
  manifest.outputs = {out};
  manifest.write(out + ".manifest.json");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Bayesian clustering from posterior similarity matrices via NMF"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for parallel kernels (0 = all available)")
      ->default_val(0);

  Manifest manifest;
  for (int i = 0; i < argc; ++i) manifest.argv.push_back(argv[i]);

  // psm
  auto* psm = app.add_subcommand("psm", "build a posterior similarity matrix from label draws");
  std::string psm_labels, psm_out;
  bool psm_header = false;
  psm->add_option("--labels", psm_labels, "CSV of label draws, one MCMC draw per row")->required();
  psm->add_flag("--header", psm_header, "skip the first row");
  psm->add_option("--out", psm_out, "output similarity CSV")->required();

  // nmf
  auto* nmf = app.add_subcommand("nmf", "factorize a similarity matrix at a fixed rank");
  std::string nmf_psm, nmf_out;
  double nmf_psm_tol = 1e-8;
  std::size_t nmf_rank = 0;
  CommonNmfFlags nmf_flags;
  nmf->add_option("--psm", nmf_psm, "similarity CSV")->required();
  nmf->add_option("--psm-tol", nmf_psm_tol, "validation tolerance for the input matrix")
      ->default_val(1e-8);
  nmf->add_option("--rank", nmf_rank, "factorization rank K")->required();
  add_nmf_flags(nmf, nmf_flags);
  nmf->add_option("--out", nmf_out, "output JSON")->required();

  // select
  auto* sel = app.add_subcommand("select", "choose the rank and partition under a penalty");
  std::string sel_psm, sel_loss = "binder", sel_prefix;
  double sel_psm_tol = 1e-8;
  std::size_t sel_kmin = 2, sel_kmax = 12;
  bool sel_keep_soft = false;
  CommonNmfFlags sel_flags;
  sel->add_option("--psm", sel_psm, "similarity CSV")->required();
  sel->add_option("--psm-tol", sel_psm_tol, "validation tolerance")->default_val(1e-8);
  sel->add_option("--loss", sel_loss, "penalty: binder|dahl|pear|vi")->default_val("binder");
  sel->add_option("--kmin", sel_kmin, "smallest rank")->default_val(2);
  sel->add_option("--kmax", sel_kmax, "largest rank")->default_val(12);
  add_nmf_flags(sel, sel_flags);
  sel->add_flag("--keep-all-soft", sel_keep_soft, "retain every rank's soft matrix in the report");
  sel->add_option("--out-prefix", sel_prefix, "prefix for report/curve/labels/soft files")
      ->required();

  // baseline
  auto* base = app.add_subcommand("baseline", "conventional partition estimators");
  std::string base_psm, base_method, base_loss = "binder", base_prefix;
  double base_psm_tol = 1e-8, base_cut = 0.99;
  base->add_option("--psm", base_psm, "similarity CSV")->required();
  base->add_option("--psm-tol", base_psm_tol, "validation tolerance")->default_val(1e-8);
  base->add_option("--method", base_method, "minbinder|maxpear|minvi|medv|oracle")->required();
  base->add_option("--cut", base_cut, "dendrogram cut height for medv")->default_val(0.99);
  base->add_option("--loss", base_loss, "penalty for the oracle search")->default_val("binder");
  base->add_option("--out-prefix", base_prefix, "prefix for json/labels files")->required();

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "score an estimated partition against a reference");
  std::string eval_truth, eval_estimate, eval_out;
  eval->add_option("--truth", eval_truth, "reference labels CSV")->required();
  eval->add_option("--estimate", eval_estimate, "estimated labels CSV")->required();
  eval->add_option("--out", eval_out, "optional output JSON (also printed to stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Gaussian-mixture benchmark harness");
  std::string sim_config = "TTT", sim_methods = "nmf-ls,minbinder,maxpear,minvi,medv";
  std::string sim_prefix, sim_nmf_loss = "binder";
  std::size_t sim_reps = 10;
  nmfclust::GibbsConfig sim_gc;
  nmfclust::BenchmarkOptions sim_opts;
  std::uint64_t sim_seed = 0;
  sim->add_option("--config", sim_config, "T/F triplet: separateness, balancedness, sphericity")
      ->default_val("TTT");
  sim->add_option("--reps", sim_reps, "replications")->default_val(10);
  sim->add_option("--burnin", sim_gc.burn_in, "discarded Gibbs sweeps")->default_val(500);
  sim->add_option("--kept", sim_gc.kept, "retained label draws")->default_val(2000);
  sim->add_option("--thin", sim_gc.thin, "thinning stride")->default_val(1);
  sim->add_option("--components", sim_gc.components, "sampler component cap")->default_val(8);
  sim->add_option("--dirichlet-weight", sim_gc.dirichlet_weight,
                  "symmetric Dirichlet weight prior")
      ->default_val(0.5);
  sim->add_option("--methods", sim_methods, "comma-separated estimator list");
  sim->add_option("--nmf-loss", sim_nmf_loss, "penalty driving the NMF rank selection")
      ->default_val("binder");
  sim->add_option("--kmin", sim_opts.k_min, "NMF selection: smallest rank")->default_val(2);
  sim->add_option("--kmax", sim_opts.k_max, "NMF selection: largest rank")->default_val(12);
  sim->add_option("--starts", sim_opts.starts, "NMF restarts per rank")->default_val(10);
  sim->add_option("--seed", sim_seed, "base seed")->default_val(0);
  sim->add_option("--out-prefix", sim_prefix, "prefix for table/kdist CSVs")->required();

  // timing
  auto* tim = app.add_subcommand("timing", "NMF wall-time scaling on random matrices");
  std::vector<std::size_t> tim_sizes{200, 400, 600, 800};
  std::vector<std::size_t> tim_ranks{3, 6, 9, 12};
  std::string tim_variant = "ls", tim_out;
  double tim_theta = 0.5;
  int tim_iters = 30, tim_repeats = 3;
  std::uint64_t tim_seed = 0;
  tim->add_option("--sizes", tim_sizes, "matrix sizes")->delimiter(',');
  tim->add_option("--ranks", tim_ranks, "factorization ranks")->delimiter(',');
  tim->add_option("--variant", tim_variant, "NMF model")->default_val("ls");
  tim->add_option("--theta", tim_theta, "ns smoothing weight")->default_val(0.5);
  tim->add_option("--iters", tim_iters, "fixed update steps per cell")->default_val(30);
  tim->add_option("--repeats", tim_repeats, "repeats per cell (fastest kept)")->default_val(3);
  tim->add_option("--seed", tim_seed, "base seed")->default_val(0);
  tim->add_option("--out", tim_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  nmfclust::set_threads(threads);

  try {
    if (psm->parsed()) {
      manifest.subcommand = "psm";
      return cmd_psm(psm_labels, psm_header, psm_out, manifest);
    }
    if (nmf->parsed()) {
      manifest.subcommand = "nmf";
      manifest.seed = nmf_flags.seed;
      return cmd_nmf(nmf_psm, nmf_psm_tol, nmf_rank, nmf_flags, nmf_out, manifest);
    }
    if (sel->parsed()) {
      manifest.subcommand = "select";
      manifest.seed = sel_flags.seed;
      return cmd_select(sel_psm, sel_psm_tol, sel_kmin, sel_kmax, sel_loss, sel_flags,
                        sel_keep_soft, sel_prefix, manifest);
    }
    if (base->parsed()) {
      manifest.subcommand = "baseline";
      return cmd_baseline(base_psm, base_psm_tol, base_method, base_cut, base_loss, base_prefix,
                          manifest);
    }
    if (eval->parsed()) {
      manifest.subcommand = "evaluate";
      return cmd_evaluate(eval_truth, eval_estimate, eval_out, manifest);
    }
    if (sim->parsed()) {
      manifest.subcommand = "simulate";
      manifest.seed = sim_seed;
      sim_opts.nmf_penalty = parse_loss_or_throw(sim_nmf_loss);
      sim_opts.methods.clear();
      std::stringstream ss(sim_methods);
      std::string token;
      while (std::getline(ss, token, ',')) {
        auto m = nmfclust::parse_method(token);
        if (!m) throw nmfclust::ValidationError("unknown method '" + token + "'");
        sim_opts.methods.push_back(*m);
      }
      if (sim_opts.methods.empty())
        throw nmfclust::ValidationError("--methods list is empty");
      return cmd_simulate(sim_config, sim_reps, sim_gc, sim_opts, sim_seed, sim_prefix, manifest);
    }
    if (tim->parsed()) {
      manifest.subcommand = "timing";
      manifest.seed = tim_seed;
      return cmd_timing(tim_sizes, tim_ranks, tim_variant, tim_theta, tim_iters, tim_repeats,
                        tim_seed, tim_out, manifest);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
