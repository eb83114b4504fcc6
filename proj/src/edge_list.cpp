#include "episource/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace episource {

Graph read_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, vertex_t> index;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<vertex_t>(labels.size()));
    if (fresh) labels.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (a == "%n") {
      std::size_t count = 0;
      if (!(fields >> count) || (fields >> extra))
        throw std::invalid_argument("line " + std::to_string(lineno) + ": header must be '%n <count>'");
      for (std::size_t i = 0; i < count; ++i) intern(std::to_string(i));
      continue;
    }
    if (!(fields >> b) || (fields >> extra))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected '<label> <label>'");
    if (a == b) throw std::invalid_argument("line " + std::to_string(lineno) + ": self-loop on '" + a + "'");
    vertex_t u = intern(a), v = intern(b);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  // Labels that are exactly 0..n-1 become plain vertex ids.
  std::vector<vertex_t> numeric(labels.size(), no_vertex);
  bool plain = true;
  for (std::size_t i = 0; i < labels.size() && plain; ++i) {
    const auto& s = labels[i];
    vertex_t id = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
    plain = ec == std::errc{} && ptr == s.data() + s.size() && id < labels.size() &&
            (s.size() == 1 || s[0] != '0');
    if (plain) numeric[i] = id;
  }
  if (plain) {
    for (auto& [u, v] : edges) {
      u = numeric[u];
      v = numeric[v];
      if (u > v) std::swap(u, v);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const std::size_t n = labels.size();
  if (plain) return Graph::from_edges(n, edges);
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  bool isolated = false;
  for (vertex_t v = 0; v < g.vertex_count(); ++v) isolated = isolated || g.degree(v) == 0;
  if (isolated && !g.has_labels()) out << "%n " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace episource
