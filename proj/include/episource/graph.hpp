#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace episource {

using vertex_t = std::uint32_t;
inline constexpr vertex_t no_vertex = std::numeric_limits<vertex_t>::max();

using Edge = std::pair<vertex_t, vertex_t>;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending so every traversal in the library
/// visits vertices in a deterministic order. Vertices may carry external
/// labels (case numbers, place names); unlabeled vertices print as their
/// index.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints. `labels` is either empty or one per vertex.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool contains(vertex_t v) const { return v < vertex_count(); }

  std::span<const vertex_t> neighbors(vertex_t v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(vertex_t v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(vertex_t u, vertex_t v) const;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::string label(vertex_t v) const;
  bool has_labels() const { return !labels_.empty(); }
  std::optional<vertex_t> find_label(std::string_view label) const;

  /// Subgraph induced by `vertices`; vertex i of the result is vertices[i]
  /// and keeps its label.
  Graph induced_subgraph(std::span<const vertex_t> vertices) const;
  Graph without_edge(vertex_t u, vertex_t v) const;

  bool is_connected() const;
  bool is_tree() const { return is_connected() && edge_count() + 1 == vertex_count(); }
  bool is_unicyclic() const { return is_connected() && edge_count() == vertex_count() && vertex_count() >= 3; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<vertex_t> targets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, vertex_t> label_index_;
};

/// BFS tree of a connected graph, ties broken by ascending vertex id.
struct RootedTreeView {
  vertex_t root = no_vertex;
  std::vector<vertex_t> parent;          // no_vertex at the root
  std::vector<std::uint32_t> level;      // hops from root
  std::vector<std::uint32_t> subtree_size;
  std::vector<vertex_t> order;           // BFS visiting order, root first

  std::vector<vertex_t> children(const Graph& g, vertex_t v) const;
};

RootedTreeView bfs_rooted(const Graph& g, vertex_t root);

inline constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();

/// Hop distances from `source`; unreachable vertices get `unreachable`.
std::vector<std::uint32_t> bfs_distances(const Graph& g, vertex_t source);

/// All-pairs hop distances. Rows are materialized up front when the graph
/// has at most `materialize_cap` vertices; above that each query runs a BFS
/// (the last row is cached).
class DistanceTable {
 public:
  DistanceTable(const Graph& g, std::size_t materialize_cap = 20'000);

  std::uint32_t operator()(vertex_t u, vertex_t v) const;
  std::span<const std::uint32_t> row(vertex_t u) const;
  bool materialized() const { return materialized_; }
  std::size_t size() const { return n_; }

 private:
  const Graph* graph_;
  std::size_t n_;
  bool materialized_;
  std::vector<std::uint32_t> table_;
  mutable vertex_t cached_source_ = no_vertex;
  mutable std::vector<std::uint32_t> cached_row_;
};

/// Throws topology_error when g is disconnected.
DistanceTable all_pairs_distance(const Graph& g, std::size_t materialize_cap = 20'000);

/// Size of the smallest cycle through a vertex. Degree <= 1 vertices count
/// as a cycle of size 1; other vertices on no cycle are `acyclic`.
class CycleSize {
 public:
  static CycleSize acyclic() { return CycleSize{}; }
  static CycleSize of(std::uint32_t size) { return CycleSize{size}; }

  bool is_acyclic() const { return !size_.has_value(); }
  std::uint32_t size() const { return *size_; }

  friend bool operator==(const CycleSize&, const CycleSize&) = default;

 private:
  CycleSize() = default;
  explicit CycleSize(std::uint32_t s) : size_(s) {}
  std::optional<std::uint32_t> size_;
};

struct CycleInfo {
  std::vector<CycleSize> min_cycle_size;
  // The cycle v_1..v_h in traversal order; filled only for unicyclic graphs.
  std::vector<vertex_t> cycle_vertices;
};

CycleInfo minimum_cycle_sizes(const Graph& g);

/// The unique cycle of a connected unicyclic graph, starting at its smallest
/// vertex and heading towards the smaller of that vertex's two cycle
/// neighbors. Throws topology_error otherwise.
std::vector<vertex_t> unique_cycle(const Graph& g);

/// d(v, C_h): hops from v to the nearest cycle vertex.
std::uint32_t cycle_distance(const Graph& g, vertex_t v, const CycleInfo& cycle);
std::vector<std::uint32_t> cycle_distances(const Graph& g, const CycleInfo& cycle);

struct SpanningTree {
  Graph tree;
  Edge removed;
};

/// The h spanning trees T_j = g minus (v_j, v_{j+1}), in cycle order.
std::vector<SpanningTree> unicyclic_spanning_trees(const Graph& g);

/// Vertices on the shortest path from `from` to `to` (inclusive), following
/// BFS parents with ascending-id tie-breaking.
std::vector<vertex_t> shortest_path(const Graph& g, vertex_t from, vertex_t to);

/// Connected components, each sorted ascending, ordered by smallest member.
std::vector<std::vector<vertex_t>> connected_components(const Graph& g);

/// Adds fresh pendant vertices until vertex v has degree target[v]; used to
/// build an explicit underlying graph around an observed G_n. Pendants are
/// labeled "~<n>" when g is labeled. Throws std::invalid_argument when a
/// target is below the current degree.
Graph pad_to_degrees(const Graph& g, std::span<const std::size_t> target);

/// Most common vertex degree (smallest on ties).
std::size_t modal_degree(const Graph& g);

}  // namespace episource
