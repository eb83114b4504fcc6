#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "episource/estimators.hpp"
#include "episource/graph.hpp"

namespace episource {

// Estimator ids: algo1, sct, rc (epidemic centrality), bfs-rc, jordan, distance.
const std::vector<std::string>& known_estimators();

enum class IrregularRule {
  underlying_leaves,  // infected vertices of degree 1 in G
  infected_leaves,    // degree-1 vertices of G_n (G unknown)
};

struct EstimatorOutcome {
  std::string estimator;
  bool skipped = false;
  std::string skip_reason;
  EstimatorResult result;  // ids of the graph the estimator ran on
  std::int64_t micros = 0;
};

struct EstimateOptions {
  std::vector<std::string> estimators;
  // Irregular set for algo1; defaults to the leaves of the input graph.
  std::optional<std::vector<vertex_t>> irregular;
  // When algo1 ran, score baselines return their top-|kappa| instead of the
  // best tie group.
  bool pair_with_algo1 = true;
  bool per_component = true;
  bool timing = false;
};

/// Runs each requested estimator on g, in the requested order. Estimators
/// that do not apply to the topology are marked skipped; unknown ids throw
/// std::invalid_argument.
std::vector<EstimatorOutcome> run_estimators(const Graph& g, const EstimateOptions& opts);

struct ExperimentConfig {
  std::string generator;
  std::size_t n_infected = 0;
  std::size_t trials = 1;
  std::vector<std::string> estimators;
  std::uint64_t seed = 0;
  std::uint32_t cap_k = 0;
  IrregularRule irregular = IrregularRule::underlying_leaves;
  bool regenerate_graph = false;  // fresh G per trial instead of one shared G
  bool timing = false;            // fill the micros column; breaks byte-identity
  std::size_t threads = 0;        // 0: hardware concurrency
  std::string output;             // CSV path; empty for none

  /// Throws std::invalid_argument when a constraint is violated.
  void validate() const;
  nlohmann::json to_json() const;
};

/// key=value lines, `#` comments. Keys: generator, n, trials, estimators
/// (comma list), seed, cap_k, irregular (g-leaves|gn-leaves), regenerate,
/// timing, threads, output. Unknown keys throw std::invalid_argument.
ExperimentConfig parse_experiment_config(std::istream& in);
void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct TrialEstimate {
  std::string estimator;
  bool skipped = false;
  std::vector<vertex_t> candidates;  // underlying-graph ids
  std::uint32_t error = 0;
  std::int64_t micros = 0;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  vertex_t source = no_vertex;
  std::string source_label;
  std::size_t infected = 0;
  std::vector<TrialEstimate> estimates;
};

struct EstimatorSummary {
  std::string estimator;
  std::size_t runs = 0;
  std::size_t skipped = 0;
  double mean_error = 0;
  double ci95_low = 0, ci95_high = 0;
  double mean_candidates = 0;
  double zero_error_rate = 0;
  std::vector<std::size_t> histogram;  // runs per hop error
};

// One-sided paired test of mean(error_a) < mean(error_b) over trials where
// both ran, normal approximation.
struct PairedComparison {
  std::string a, b;
  std::size_t pairs = 0;
  double mean_difference = 0;  // a - b
  double z = 0;
  double p_value = 1;
};

struct ExperimentSummary {
  std::vector<EstimatorSummary> estimators;
  std::vector<PairedComparison> comparisons;

  const EstimatorSummary& at(const std::string& estimator) const;
  const PairedComparison& compare(const std::string& a, const std::string& b) const;
  nlohmann::json to_json() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  ExperimentSummary summary;
};

/// Per trial: v* uniform on G, SI spread to n_infected, every estimator on
/// G_n, hop error inside G_n. Trials run on a worker pool with seeds derived
/// from cfg.seed and the trial index, so output is independent of threads.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentSummary summarize(const std::vector<TrialRecord>& records);

/// `trial,seed,source,estimator,k,error,micros`; skipped runs have k = 0 and
/// an empty error.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

struct ReplayReport {
  std::string source_label;
  std::vector<EstimatorOutcome> outcomes;
  std::vector<std::optional<std::uint32_t>> errors;  // per outcome; empty when skipped

  nlohmann::json to_json(const Graph& g) const;
};

/// Runs the estimators on an observed graph with a known first case.
ReplayReport replay(const Graph& g, vertex_t true_source, const EstimateOptions& opts);

}  // namespace episource
