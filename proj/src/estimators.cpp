#include "episource/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "episource/errors.hpp"

namespace episource {

nlohmann::json EstimatorResult::to_json(const Graph& g) const {
  nlohmann::json j;
  j["estimator"] = estimator;
  auto& cands = j["candidates"] = nlohmann::json::array();
  for (vertex_t v : candidates) cands.push_back(g.label(v));
  auto& sc = j["scores"] = nlohmann::json::object();
  for (vertex_t v = 0; v < scores.size(); ++v) sc[g.label(v)] = to_display(scores[v]);
  if (!t_ml.empty()) {
    auto& t = j["t_ml"] = nlohmann::json::array();
    for (vertex_t v : t_ml) t.push_back(g.label(v));
  }
  if (!warnings.empty()) j["warnings"] = warnings;
  return j;
}

std::vector<vertex_t> leaf_vertices(const Graph& g) {
  std::vector<vertex_t> out;
  for (vertex_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) out.push_back(v);
  return out;
}

EstimatorResult algo1_kappa(const Graph& tree, std::span<const vertex_t> irregular) {
  if (!tree.is_tree()) throw topology_error("Algorithm 1 needs a tree");
  const auto n = tree.vertex_count();

  EstimatorResult res;
  res.estimator = "algo1";

  // step 1
  auto ec = epidemic_centrality_tree(tree);
  const vertex_t vc = ec.argbest.front();
  res.scores = std::move(ec.score);

  // step 2: upward counts
  auto rooted = bfs_rooted(tree, vc);
  std::vector<std::uint32_t> below(n, 0);
  for (vertex_t v : irregular) {
    if (!tree.contains(v)) throw std::invalid_argument("irregular vertex outside the graph");
    below[v] = 1;
  }
  for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it)
    if (rooted.parent[*it] != no_vertex) below[rooted.parent[*it]] += below[*it];

  // step 3: downward max, keep children whose count equals it
  std::vector<vertex_t> parents_of_leaves;
  std::vector<vertex_t> frontier{vc};
  res.t_ml.push_back(vc);
  while (!frontier.empty()) {
    std::vector<vertex_t> next;
    for (vertex_t v : frontier) {
      auto kids = rooted.children(tree, v);
      std::uint32_t best = 0;
      for (vertex_t c : kids) best = std::max(best, below[c]);
      if (best == 0) continue;
      for (vertex_t c : kids) {
        if (below[c] != best) continue;
        next.push_back(c);
        std::uint32_t grand = 0;
        for (vertex_t w : rooted.children(tree, c)) grand = std::max(grand, below[w]);
        if (grand == 0) parents_of_leaves.push_back(v);
      }
    }
    res.t_ml.insert(res.t_ml.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  res.candidates.push_back(vc);
  std::sort(parents_of_leaves.begin(), parents_of_leaves.end());
  parents_of_leaves.erase(std::unique(parents_of_leaves.begin(), parents_of_leaves.end()), parents_of_leaves.end());
  for (vertex_t p : parents_of_leaves)
    if (p != vc) res.candidates.push_back(p);
  res.irregular_below = std::move(below);
  return res;
}

namespace {

EstimatorResult sct_connected(const Graph& g) {
  auto cycles = minimum_cycle_sizes(g);
  auto scores = statistical_distance_centrality(g, sdc_weights(g, cycles));
  EstimatorResult res;
  res.estimator = "sct";
  res.candidates = scores.argbest;
  res.scores = std::move(scores.score);
  return res;
}

}  // namespace

EstimatorResult sct(const Graph& g, bool per_component) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  auto comps = connected_components(g);
  if (comps.size() == 1) return sct_connected(g);
  if (!per_component)
    throw topology_error("graph has " + std::to_string(comps.size()) + " connected components");

  EstimatorResult res;
  res.estimator = "sct";
  res.scores.assign(g.vertex_count(), Rational(0));
  for (const auto& comp : comps) {
    auto part = sct_connected(g.induced_subgraph(comp));
    for (vertex_t i = 0; i < comp.size(); ++i) res.scores[comp[i]] = part.scores[i];
    for (vertex_t c : part.candidates) res.candidates.push_back(comp[c]);
  }
  res.warnings.push_back("disconnected input: " + std::to_string(comps.size()) +
                         " components, one argmin group per component");
  return res;
}

EstimatorResult topk_wrapper(const CentralityScores& scores, std::size_t k, std::string name) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const auto n = scores.score.size();
  EstimatorResult res;
  res.estimator = name.empty() ? to_string(scores.kind) : std::move(name);
  if (k > n) {
    res.warnings.push_back("k=" + std::to_string(k) + " clamped to " + std::to_string(n));
    k = n;
  }
  std::vector<vertex_t> idx(n);
  std::iota(idx.begin(), idx.end(), vertex_t{0});
  const bool high = scores.higher_is_better();
  std::stable_sort(idx.begin(), idx.end(), [&](vertex_t a, vertex_t b) {
    return high ? scores.score[a] > scores.score[b] : scores.score[a] < scores.score[b];
  });
  res.candidates.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
  res.scores = scores.score;
  return res;
}

EstimatorResult argbest_result(const CentralityScores& scores, std::string name) {
  EstimatorResult res;
  res.estimator = name.empty() ? to_string(scores.kind) : std::move(name);
  res.candidates = scores.argbest;
  res.scores = scores.score;
  return res;
}

std::uint32_t hop_error(const Graph& g, std::span<const vertex_t> candidates, vertex_t source) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate set");
  if (!g.contains(source)) throw std::invalid_argument("true source outside the graph");
  for (vertex_t c : candidates)
    if (!g.contains(c)) throw std::invalid_argument("candidate outside the graph");
  auto dist = bfs_distances(g, source);
  std::uint32_t best = unreachable;
  for (vertex_t c : candidates) best = std::min(best, dist[c]);
  if (best == unreachable) throw topology_error("no candidate reaches the true source");
  return best;
}

}  // namespace episource
