#pragma once

#include <string>
#include <vector>

#include "episource/graph.hpp"
#include "episource/numeric.hpp"

namespace fixtures {

using episource::Edge;
using episource::Graph;

// Canonical a/b; mpq_class(a, b) leaves the fraction unreduced.
inline episource::Rational q(long a, long b) {
  episource::Rational r(a, b);
  r.canonicalize();
  return r;
}

inline Graph labeled(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
  return Graph::from_edges(n, edges, names);
}

// Six-vertex infected tree: v1-v2, v1-v5, v5-v6, v2-v3, v2-v4 (ids are label - 1).
// In the underlying graph v5 has degree 2 and every other vertex degree 3.
inline Graph six_vertex_tree() { return labeled(6, {{0, 1}, {0, 4}, {4, 5}, {1, 2}, {1, 3}}); }
inline std::vector<std::size_t> six_vertex_tree_degrees() { return {3, 3, 3, 3, 2, 3}; }

// Unicyclic G_n: triangle v1 v2 v3, branch v1-v4-v7 and pendant v2-v5, in a 3-regular graph.
// Vertex v6 is absent from the infected set, so ids are v1..v5 -> 0..4 and v7 -> 5.
inline Graph triangle_with_branches() {
  std::vector<std::string> names{"v1", "v2", "v3", "v4", "v5", "v7"};
  return Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 5}, {1, 4}}, names);
}

// Ten infected vertices holding a triangle {v1, v10, v2} and a square
// {v3, v4, v5, v8} joined by the edge v10-v8, in a 3-regular graph.
// v10 and v8 have equal epidemic centrality; v10 sits on the smaller cycle.
inline Graph two_cycle_graph() {
  std::vector<std::string> names{"v1", "v10", "v2", "v3", "v4", "v5", "v8", "v6", "v7", "v9"};
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 9}, {1, 2}, {1, 6}, {3, 4}, {3, 6}, {4, 5}, {5, 6}, {5, 8}, {7, 9}};
  return Graph::from_edges(10, e, names);
}

// 19-vertex tree around vc with branches of 8, 6 and 4 vertices holding 3, 2
// and 1 irregular leaves. In the largest branch a -> vt -> {l1, l2}.
struct IrregularTree {
  Graph tree;
  std::vector<episource::vertex_t> irregular;
};

inline IrregularTree nineteen_vertex_tree() {
  std::vector<std::string> names{"vc", "a",  "vt", "l1", "l2", "x",  "l3", "y",  "z",  "b1",
                                 "b2", "b3", "b4", "b5", "b6", "c1", "c2", "c3", "c4"};
  std::vector<Edge> e{{0, 1},  {1, 2},  {2, 3},  {2, 4},   {1, 5},   {5, 6},   {1, 7},   {7, 8},   {0, 9},
                      {9, 10}, {10, 11}, {9, 12}, {12, 13}, {9, 14}, {0, 15}, {15, 16}, {16, 17}, {17, 18}};
  return {Graph::from_edges(19, e, names), {3, 4, 6, 11, 13, 18}};
}

// Four places on a cycle WTG - STL - PA - PB with infected people attached as
// leaves: 6 at WTG, 3 at STL, 2 at PA and PB. Counts are illustrative.
inline Graph places_cycle() {
  std::vector<std::string> names{"WTG", "STL", "PA", "PB"};
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const int counts[4] = {6, 3, 2, 2};
  episource::vertex_t next = 4;
  for (episource::vertex_t p = 0; p < 4; ++p)
    for (int i = 0; i < counts[p]; ++i) {
      names.push_back(names[p] + "-case" + std::to_string(i + 1));
      e.emplace_back(p, next++);
    }
  return Graph::from_edges(next, e, names);
}

}  // namespace fixtures
