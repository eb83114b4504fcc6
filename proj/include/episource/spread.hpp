#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "episource/graph.hpp"
#include "episource/numeric.hpp"

namespace episource {

/// Per-vertex infection (R_i) and spreading (R_s) rates. Empty vectors mean
/// every vertex has rate 1.
struct NodeRates {
  std::vector<double> infect;
  std::vector<double> spread;

  bool unit() const { return infect.empty() && spread.empty(); }
  double infect_rate(vertex_t v) const { return infect.empty() ? 1.0 : infect[v]; }
  double spread_rate(vertex_t v) const { return spread.empty() ? 1.0 : spread[v]; }
  /// Throws std::invalid_argument unless sizes match and every rate is > 0.
  void validate(std::size_t vertex_count) const;
};

struct FrontierStep {
  double chosen_weight;  // R_i(v) * sum of R_s over v's infected neighbors
  double total_weight;   // same, summed over the susceptible boundary
};

struct InfectionSnapshot {
  const Graph* underlying = nullptr;
  std::vector<vertex_t> order;  // order[0] is the source
  vertex_t source = no_vertex;
  std::uint64_t seed = 0;
  bool exhausted = false;  // boundary emptied before reaching n
  bool capped = false;     // stopped by the irregular-vertex cap
  std::vector<FrontierStep> frontier_history;  // one entry per infection after the source

  std::size_t size() const { return order.size(); }
  /// G_n with vertex i = order[i]; labels of the underlying graph are kept.
  Graph infected_subgraph() const;
};

struct SimulationOptions {
  std::size_t n = 0;
  NodeRates rates;
  // Stop once ceil(n / cap_k) irregular vertices are infected; 0 disables.
  std::uint32_t cap_k = 0;
  // Degree a regular vertex has; defaults to the modal degree of g.
  std::optional<std::size_t> regular_degree;
  bool record_frontier = true;
};

/// Runs the SI process from `source` until n vertices are infected. Throws
/// std::domain_error for an unknown source or n > |g|.
InfectionSnapshot simulate(const Graph& g, vertex_t source, const SimulationOptions& opts, std::uint64_t seed);

/// Exact probability of the recorded infection order under unit rates,
/// recomputed from the graph. Throws std::invalid_argument if the order is
/// not a valid spreading order.
Rational realized_order_probability(const Graph& g, std::span<const vertex_t> order);
Rational realized_order_probability(const InfectionSnapshot& snapshot);

nlohmann::json snapshot_to_json(const InfectionSnapshot& snapshot, nlohmann::json params = nlohmann::json::object());
/// Resolves labels against `g`; throws std::invalid_argument on unknown labels.
InfectionSnapshot snapshot_from_json(const nlohmann::json& j, const Graph& g);

}  // namespace episource
