#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "episource/centrality.hpp"
#include "episource/graph.hpp"
#include "episource/numeric.hpp"

namespace episource {

struct EstimatorResult {
  std::string estimator;
  // Nonempty, no duplicates. Algorithm 1 lists v_c first.
  std::vector<vertex_t> candidates;
  // One per vertex of the input graph; empty when the estimator has no score.
  std::vector<Rational> scores;
  // Algorithm 1: t_ML vertices, v_c first, then in BFS order.
  std::vector<vertex_t> t_ml;
  // Algorithm 1: irregular-vertex count of every branch (the upward messages).
  std::vector<std::uint32_t> irregular_below;
  std::vector<std::string> warnings;

  nlohmann::json to_json(const Graph& g) const;
};

/// Algorithm 1 on a tree: epidemic center v_c (smallest id on ties), upward
/// irregular counts, greedy descent along all max-count children while the
/// max is positive. Returns kappa = parents of t_ML leaves plus v_c. Throws
/// topology_error for non-trees.
EstimatorResult algo1_kappa(const Graph& tree, std::span<const vertex_t> irregular);

/// Degree-one vertices of g_n, the default irregular set when G is unknown.
std::vector<vertex_t> leaf_vertices(const Graph& g);

/// argmin of SDC, the whole tie group. Disconnected input is handled per
/// component (one argmin group each, with a warning) unless `per_component`
/// is false, in which case topology_error is thrown.
EstimatorResult sct(const Graph& g, bool per_component = true);

/// Best k vertices by score, ties broken by ascending id. k > n is clamped
/// with a warning; k == 0 throws std::invalid_argument.
EstimatorResult topk_wrapper(const CentralityScores& scores, std::size_t k, std::string name = {});

/// The full best-score tie group of `scores`.
EstimatorResult argbest_result(const CentralityScores& scores, std::string name = {});

/// min over candidates of d(candidate, source) in g. Throws
/// std::invalid_argument for empty candidates or vertices outside g, and
/// topology_error when no candidate reaches the source.
std::uint32_t hop_error(const Graph& g, std::span<const vertex_t> candidates, vertex_t source);

}  // namespace episource
