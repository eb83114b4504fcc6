#pragma once

// Small random graphs for property tests.

#include <algorithm>
#include <vector>

#include "episource/graph.hpp"
#include "episource/random.hpp"

namespace testgraphs {

using episource::Edge;
using episource::Graph;
using episource::vertex_t;

// Random tree on n vertices with every degree at most max_degree (>= 2).
inline Graph random_tree(std::uint32_t n, std::size_t max_degree, episource::SplitMix64& rng) {
  std::vector<Edge> edges;
  std::vector<std::size_t> deg(n, 0);
  for (vertex_t v = 1; v < n; ++v) {
    vertex_t p;
    do p = vertex_t(rng() % v);
    while (deg[p] >= max_degree);
    edges.emplace_back(p, v);
    ++deg[p];
    ++deg[v];
  }
  return Graph::from_edges(n, edges);
}

// Random connected unicyclic graph on n >= 3 vertices, degrees <= max_degree (>= 3).
inline Graph random_unicyclic(std::uint32_t n, std::size_t max_degree, episource::SplitMix64& rng) {
  const std::uint32_t h = 3 + std::uint32_t(rng() % (n - 2));
  std::vector<Edge> edges;
  std::vector<std::size_t> deg(n, 0);
  for (vertex_t v = 0; v < h; ++v) {
    vertex_t w = (v + 1) % h;
    edges.emplace_back(std::min(v, w), std::max(v, w));
    deg[v] += 1;
    deg[w] += 1;
  }
  for (vertex_t v = h; v < n; ++v) {
    vertex_t p;
    do p = vertex_t(rng() % v);
    while (deg[p] >= max_degree);
    edges.emplace_back(p, v);
    ++deg[p];
    ++deg[v];
  }
  // Shuffle ids so the cycle is not always 0..h-1.
  std::vector<vertex_t> perm(n);
  for (vertex_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [a, b] : edges) {
    a = perm[a];
    b = perm[b];
    if (a > b) std::swap(a, b);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace testgraphs
