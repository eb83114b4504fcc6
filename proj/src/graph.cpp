#include "episource/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <stdexcept>

#include "episource/errors.hpp"

namespace episource {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count) {
    throw std::invalid_argument("label count does not match vertex count");
  }
  std::vector<std::size_t> deg(vertex_count, 0);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    ++deg[u];
    ++deg[v];
  }
  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
    }
  }
  g.labels_ = std::move(labels);
  for (std::size_t v = 0; v < g.labels_.size(); ++v) {
    if (!g.label_index_.emplace(g.labels_[v], static_cast<vertex_t>(v)).second) {
      throw std::invalid_argument("duplicate vertex label '" + g.labels_[v] + "'");
    }
  }
  return g;
}

bool Graph::has_edge(vertex_t u, vertex_t v) const {
  if (!contains(u) || !contains(v)) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (vertex_t u = 0; u < vertex_count(); ++u) {
    for (vertex_t v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string Graph::label(vertex_t v) const {
  if (labels_.empty()) return std::to_string(v);
  return labels_[v];
}

std::optional<vertex_t> Graph::find_label(std::string_view label) const {
  if (!labels_.empty()) {
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
  }
  vertex_t v = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), v);
  if (ec != std::errc{} || ptr != label.data() + label.size() || !contains(v)) return std::nullopt;
  return v;
}

Graph Graph::induced_subgraph(std::span<const vertex_t> vertices) const {
  std::unordered_map<vertex_t, vertex_t> local;
  local.reserve(vertices.size() * 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!contains(vertices[i])) throw std::invalid_argument("induced_subgraph: vertex out of range");
    if (!local.emplace(vertices[i], static_cast<vertex_t>(i)).second) {
      throw std::invalid_argument("induced_subgraph: repeated vertex");
    }
  }
  std::vector<Edge> sub;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (vertex_t w : neighbors(vertices[i])) {
      auto it = local.find(w);
      if (it != local.end() && i < it->second) sub.emplace_back(static_cast<vertex_t>(i), it->second);
    }
  }
  std::vector<std::string> names;
  names.reserve(vertices.size());
  for (vertex_t v : vertices) names.push_back(label(v));
  return from_edges(vertices.size(), sub, std::move(names));
}

Graph Graph::without_edge(vertex_t u, vertex_t v) const {
  if (!has_edge(u, v)) throw std::invalid_argument("without_edge: no such edge");
  auto all = edges();
  Edge drop{std::min(u, v), std::max(u, v)};
  all.erase(std::find(all.begin(), all.end(), drop));
  return from_edges(vertex_count(), all, labels_);
}

bool Graph::is_connected() const {
  if (vertex_count() == 0) return true;
  auto dist = bfs_distances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](auto d) { return d == unreachable; });
}

std::vector<vertex_t> RootedTreeView::children(const Graph& g, vertex_t v) const {
  std::vector<vertex_t> out;
  for (vertex_t w : g.neighbors(v)) {
    if (parent[w] == v) out.push_back(w);
  }
  return out;
}

RootedTreeView bfs_rooted(const Graph& g, vertex_t root) {
  if (!g.contains(root)) throw std::domain_error("bfs_rooted: root " + std::to_string(root) + " not in graph");
  const auto n = g.vertex_count();
  RootedTreeView view;
  view.root = root;
  view.parent.assign(n, no_vertex);
  view.level.assign(n, unreachable);
  view.subtree_size.assign(n, 1);
  view.order.reserve(n);
  view.level[root] = 0;
  view.order.push_back(root);
  for (std::size_t head = 0; head < view.order.size(); ++head) {
    vertex_t u = view.order[head];
    for (vertex_t w : g.neighbors(u)) {
      if (view.level[w] != unreachable) continue;
      view.level[w] = view.level[u] + 1;
      view.parent[w] = u;
      view.order.push_back(w);
    }
  }
  if (view.order.size() != n) {
    for (vertex_t v = 0; v < n; ++v) {
      if (view.level[v] == unreachable) {
        throw topology_error("graph is disconnected: vertex " + g.label(v) + " unreachable from " + g.label(root));
      }
    }
  }
  for (auto it = view.order.rbegin(); it != view.order.rend(); ++it) {
    if (view.parent[*it] != no_vertex) view.subtree_size[view.parent[*it]] += view.subtree_size[*it];
  }
  return view;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, vertex_t source) {
  std::vector<std::uint32_t> dist(g.vertex_count(), unreachable);
  std::vector<vertex_t> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    vertex_t u = queue[head];
    for (vertex_t w : g.neighbors(u)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceTable::DistanceTable(const Graph& g, std::size_t materialize_cap)
    : graph_(&g), n_(g.vertex_count()), materialized_(g.vertex_count() <= materialize_cap) {
  if (!materialized_) return;
  table_.resize(n_ * n_);
  for (vertex_t u = 0; u < n_; ++u) {
    auto d = bfs_distances(g, u);
    std::copy(d.begin(), d.end(), table_.begin() + static_cast<std::ptrdiff_t>(u * n_));
  }
}

std::span<const std::uint32_t> DistanceTable::row(vertex_t u) const {
  if (materialized_) return {table_.data() + u * n_, n_};
  if (cached_source_ != u) {
    cached_row_ = bfs_distances(*graph_, u);
    cached_source_ = u;
  }
  return cached_row_;
}

std::uint32_t DistanceTable::operator()(vertex_t u, vertex_t v) const { return row(u)[v]; }

DistanceTable all_pairs_distance(const Graph& g, std::size_t materialize_cap) {
  if (!g.is_connected()) throw topology_error("all_pairs_distance: graph is disconnected");
  return DistanceTable(g, materialize_cap);
}

namespace {

// Shortest cycle through `v`: BFS labelled by the first edge taken out of v;
// a non-tree edge joining two different labels closes a cycle through v.
std::optional<std::uint32_t> shortest_cycle_through(const Graph& g, vertex_t v, std::vector<std::uint32_t>& dist,
                                                    std::vector<vertex_t>& branch, std::vector<vertex_t>& touched) {
  std::optional<std::uint32_t> best;
  touched.clear();
  dist[v] = 0;
  branch[v] = v;
  touched.push_back(v);
  for (std::size_t head = 0; head < touched.size(); ++head) {
    vertex_t u = touched[head];
    if (best && 2 * dist[u] >= *best) break;
    for (vertex_t w : g.neighbors(u)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[u] + 1;
        branch[w] = (u == v) ? w : branch[u];
        touched.push_back(w);
      } else if (u != v && w != v && branch[w] != branch[u]) {
        std::uint32_t len = dist[u] + dist[w] + 1;
        if (!best || len < *best) best = len;
      }
    }
  }
  for (vertex_t t : touched) {
    dist[t] = unreachable;
    branch[t] = no_vertex;
  }
  return best;
}

}  // namespace

CycleInfo minimum_cycle_sizes(const Graph& g) {
  const auto n = g.vertex_count();
  CycleInfo info;
  info.min_cycle_size.reserve(n);
  std::vector<std::uint32_t> dist(n, unreachable);
  std::vector<vertex_t> branch(n, no_vertex);
  std::vector<vertex_t> touched;
  for (vertex_t v = 0; v < n; ++v) {
    if (g.degree(v) <= 1) {
      info.min_cycle_size.push_back(CycleSize::of(1));
      continue;
    }
    auto c = shortest_cycle_through(g, v, dist, branch, touched);
    info.min_cycle_size.push_back(c ? CycleSize::of(*c) : CycleSize::acyclic());
  }
  if (g.is_unicyclic()) info.cycle_vertices = unique_cycle(g);
  return info;
}

std::vector<vertex_t> unique_cycle(const Graph& g) {
  if (!g.is_unicyclic()) throw topology_error("graph is not unicyclic");
  // Peel leaves; what remains is the cycle.
  const auto n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::vector<vertex_t> stack;
  for (vertex_t v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] == 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    vertex_t v = stack.back();
    stack.pop_back();
    removed[v] = true;
    for (vertex_t w : g.neighbors(v)) {
      if (!removed[w] && --deg[w] == 1) stack.push_back(w);
    }
  }
  vertex_t start = no_vertex;
  for (vertex_t v = 0; v < n; ++v) {
    if (!removed[v]) {
      start = v;
      break;
    }
  }
  std::vector<vertex_t> cycle{start};
  vertex_t prev = no_vertex;
  vertex_t cur = start;
  while (true) {
    vertex_t next = no_vertex;
    for (vertex_t w : g.neighbors(cur)) {  // ascending, so the first pick at `start` is the smaller neighbor
      if (!removed[w] && w != prev) {
        next = w;
        break;
      }
    }
    if (next == start) break;
    prev = cur;
    cur = next;
    cycle.push_back(cur);
  }
  return cycle;
}

std::vector<std::uint32_t> cycle_distances(const Graph& g, const CycleInfo& cycle) {
  if (cycle.cycle_vertices.empty()) throw topology_error("cycle_distance: graph has no identified cycle");
  std::vector<std::uint32_t> dist(g.vertex_count(), unreachable);
  std::deque<vertex_t> queue;
  for (vertex_t c : cycle.cycle_vertices) {
    dist[c] = 0;
    queue.push_back(c);
  }
  while (!queue.empty()) {
    vertex_t u = queue.front();
    queue.pop_front();
    for (vertex_t w : g.neighbors(u)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::uint32_t cycle_distance(const Graph& g, vertex_t v, const CycleInfo& cycle) {
  if (!g.contains(v)) throw std::domain_error("cycle_distance: vertex not in graph");
  return cycle_distances(g, cycle)[v];
}

std::vector<SpanningTree> unicyclic_spanning_trees(const Graph& g) {
  auto cycle = unique_cycle(g);
  std::vector<SpanningTree> out;
  out.reserve(cycle.size());
  for (std::size_t j = 0; j < cycle.size(); ++j) {
    vertex_t a = cycle[j];
    vertex_t b = cycle[(j + 1) % cycle.size()];
    out.push_back({g.without_edge(a, b), Edge{a, b}});
  }
  return out;
}

std::vector<vertex_t> shortest_path(const Graph& g, vertex_t from, vertex_t to) {
  auto view = bfs_rooted(g, from);
  std::vector<vertex_t> path;
  for (vertex_t v = to; v != no_vertex; v = view.parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::vector<vertex_t>> connected_components(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<vertex_t>> out;
  for (vertex_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<vertex_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (vertex_t w : g.neighbors(comp[head])) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Graph pad_to_degrees(const Graph& g, std::span<const std::size_t> target) {
  if (target.size() != g.vertex_count()) throw std::invalid_argument("one target degree per vertex required");
  std::vector<Edge> edges = g.edges();
  std::vector<std::string> labels;
  if (g.has_labels())
    for (vertex_t v = 0; v < g.vertex_count(); ++v) labels.push_back(g.label(v));
  auto next = static_cast<vertex_t>(g.vertex_count());
  for (vertex_t v = 0; v < g.vertex_count(); ++v) {
    if (target[v] < g.degree(v))
      throw std::invalid_argument("target degree of " + g.label(v) + " is below its degree in G_n");
    for (std::size_t i = g.degree(v); i < target[v]; ++i) {
      if (g.has_labels()) labels.push_back("~" + std::to_string(next));
      edges.emplace_back(v, next++);
    }
  }
  return Graph::from_edges(next, edges, std::move(labels));
}

std::size_t modal_degree(const Graph& g) {
  std::unordered_map<std::size_t, std::size_t> freq;
  for (vertex_t v = 0; v < g.vertex_count(); ++v) ++freq[g.degree(v)];
  std::size_t best = 0;
  std::size_t best_count = 0;
  for (auto [deg, count] : freq) {
    if (count > best_count || (count == best_count && deg < best)) {
      best = deg;
      best_count = count;
    }
  }
  return best;
}

}  // namespace episource
