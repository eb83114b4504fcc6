#include "episource/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "episource/random.hpp"

namespace episource {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint32_t to_uint(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("generator spec: bad value for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

// Parses `key=value` fields after the kind; a bare value binds to `positional`.
struct Fields {
  std::vector<std::pair<std::string, std::string>> kv;

  std::optional<std::string_view> get(std::string_view key) const {
    for (const auto& [k, v] : kv)
      if (k == key) return std::string_view(v);
    return std::nullopt;
  }
  std::uint32_t need(std::string_view key) const {
    auto v = get(key);
    if (!v) throw std::invalid_argument("generator spec: missing '" + std::string(key) + "'");
    return to_uint(*v, key);
  }
};

Fields parse_fields(const std::vector<std::string_view>& parts, std::size_t from,
                    std::vector<std::string_view> positional) {
  Fields f;
  std::size_t next_pos = 0;
  for (std::size_t i = from; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      if (next_pos >= positional.size())
        throw std::invalid_argument("generator spec: unexpected field '" + std::string(parts[i]) + "'");
      f.kv.emplace_back(std::string(positional[next_pos++]), std::string(parts[i]));
    } else {
      f.kv.emplace_back(std::string(parts[i].substr(0, eq)), std::string(parts[i].substr(eq + 1)));
    }
  }
  return f;
}

class EdgeSink {
 public:
  explicit EdgeSink(std::size_t n) : n_(n) {}
  void add(vertex_t u, vertex_t v) { edges_.emplace_back(std::min(u, v), std::max(u, v)); }
  Graph finish() {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    return Graph::from_edges(n_, edges_);
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

Graph make(const gen::RegularTree& s, SplitMix64&) {
  if (s.degree < 2) throw std::invalid_argument("regular tree needs degree >= 2");
  std::vector<Edge> edges;
  std::vector<vertex_t> frontier{0};
  vertex_t next = 1;
  for (std::uint32_t level = 0; level < s.depth; ++level) {
    std::vector<vertex_t> nf;
    for (vertex_t v : frontier) {
      std::uint32_t kids = v == 0 ? s.degree : s.degree - 1;
      for (std::uint32_t c = 0; c < kids; ++c) {
        edges.emplace_back(v, next);
        nf.push_back(next++);
      }
    }
    frontier = std::move(nf);
  }
  return Graph::from_edges(next, edges);
}

Graph make(const gen::BranchingTree& s, SplitMix64& rng) {
  if (s.max_degree < 2) throw std::invalid_argument("branching tree needs dmax >= 2");
  if (s.vertices == 0) throw std::invalid_argument("branching tree needs n >= 1");
  std::vector<Edge> edges;
  std::uniform_int_distribution<std::uint32_t> kids(1, s.max_degree - 1);
  vertex_t next = 1;
  for (vertex_t v = 0; v < next && next < s.vertices; ++v) {
    std::uint32_t c = kids(rng);
    for (std::uint32_t i = 0; i < c && next < s.vertices; ++i) edges.emplace_back(v, next++);
  }
  return Graph::from_edges(s.vertices, edges);
}

Graph make(const gen::Grid& s, SplitMix64&) {
  if (s.width == 0 || s.height == 0) throw std::invalid_argument("grid needs positive dimensions");
  std::vector<Edge> edges;
  auto id = [&](std::uint32_t x, std::uint32_t y) { return y * s.width + x; };
  for (std::uint32_t y = 0; y < s.height; ++y)
    for (std::uint32_t x = 0; x < s.width; ++x) {
      if (x + 1 < s.width) edges.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < s.height) edges.emplace_back(id(x, y), id(x, y + 1));
    }
  return Graph::from_edges(std::size_t(s.width) * s.height, edges);
}

Graph circulant_from(std::uint32_t n, const std::vector<std::uint32_t>& jumps) {
  EdgeSink sink(n);
  for (std::uint32_t s : jumps)
    for (std::uint32_t i = 0; i < n; ++i) sink.add(i, (i + s) % n);
  return sink.finish();
}

Graph make(const gen::Circulant& s, SplitMix64& rng) {
  const std::uint32_t n = s.vertices;
  if (n < 3) throw std::invalid_argument("circulant needs N >= 3");
  if (!s.jumps.empty()) {
    for (std::uint32_t j : s.jumps)
      if (j == 0 || 2 * j > n) throw std::invalid_argument("circulant jumps must lie in [1, N/2]");
    if (!jumps_generate_group(n, s.jumps)) throw std::invalid_argument("circulant jumps do not generate Z_N");
    return circulant_from(n, s.jumps);
  }
  // Draw from [1, N/2) so the graph is exactly 2|S|-regular.
  const std::uint32_t hi = (n - 1) / 2;
  if (s.random_jumps == 0 || s.random_jumps > hi)
    throw std::invalid_argument("circulant: need 1 <= s <= " + std::to_string(hi));
  std::uniform_int_distribution<std::uint32_t> pick(1, hi);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    std::set<std::uint32_t> chosen;
    while (chosen.size() < s.random_jumps) chosen.insert(pick(rng));
    std::vector<std::uint32_t> jumps(chosen.begin(), chosen.end());
    if (jumps_generate_group(n, jumps)) return circulant_from(n, jumps);
  }
  throw std::invalid_argument("circulant: no generating jump set found");
}

Graph make(const gen::RandomRegular& s, SplitMix64& rng) {
  const std::uint64_t n = s.vertices, d = s.degree;
  if (d >= n || (n * d) % 2 != 0) throw std::invalid_argument("random regular graph needs d < n and n*d even");
  std::vector<vertex_t> stubs;
  stubs.reserve(n * d);
  for (int attempt = 0; attempt < 100'000; ++attempt) {
    stubs.clear();
    for (vertex_t v = 0; v < n; ++v)
      for (std::uint64_t i = 0; i < d; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      vertex_t a = stubs[i], b = stubs[i + 1];
      if (a == b) { ok = false; break; }
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph::from_edges(n, edges);
  }
  throw std::invalid_argument("random regular graph: pairing model did not converge");
}

// Seeded with a star on m+1 vertices; each newcomer attaches to m distinct
// targets drawn proportionally to degree.
Graph make(const gen::PreferentialAttachment& s, SplitMix64& rng) {
  const std::uint32_t m = s.edges_per_vertex, n = s.vertices;
  if (m < 1 || m >= n) throw std::invalid_argument("preferential attachment needs 1 <= m < n");
  std::vector<Edge> edges;
  std::vector<vertex_t> repeated;
  for (vertex_t v = 1; v <= m; ++v) {
    edges.emplace_back(0, v);
    repeated.push_back(0);
    repeated.push_back(v);
  }
  for (vertex_t v = m + 1; v < n; ++v) {
    std::set<vertex_t> targets;
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (targets.size() < m) targets.insert(repeated[pick(rng)]);
    for (vertex_t t : targets) {
      edges.emplace_back(t, v);
      repeated.push_back(t);
      repeated.push_back(v);
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, edges);
}

Graph make(const gen::Path& s, SplitMix64&) {
  if (s.vertices == 0) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> edges;
  for (vertex_t v = 0; v + 1 < s.vertices; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(s.vertices, edges);
}

Graph make(const gen::Star& s, SplitMix64&) {
  std::vector<Edge> edges;
  for (vertex_t v = 1; v <= s.leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(s.leaves + 1, edges);
}

Graph make(const gen::Cycle& s, SplitMix64&) {
  if (s.vertices < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (vertex_t v = 0; v < s.vertices; ++v) edges.emplace_back(v, (v + 1) % s.vertices);
  return Graph::from_edges(s.vertices, edges);
}

Graph make(const gen::Broom& s, SplitMix64&) {
  if (s.half_length == 0) throw std::invalid_argument("broom needs t >= 1");
  const std::uint32_t handle = 2 * s.half_length;
  std::vector<Edge> edges;
  for (vertex_t v = 0; v + 1 < handle; ++v) edges.emplace_back(v, v + 1);
  for (std::uint32_t i = 0; i < s.leaves; ++i) edges.emplace_back(handle - 1, handle + i);
  return Graph::from_edges(handle + s.leaves, edges);
}

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

}  // namespace

bool jumps_generate_group(std::uint32_t n, const std::vector<std::uint32_t>& jumps) {
  std::uint32_t g = n;
  for (std::uint32_t j : jumps) g = std::gcd(g, j);
  return g == 1;
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  auto parts = split(text, ':');
  std::string_view kind = parts[0];
  if (kind == "grid") {
    if (parts.size() != 2) throw std::invalid_argument("grid spec is grid:WxH");
    auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw std::invalid_argument("grid spec is grid:WxH");
    return gen::Grid{to_uint(dims[0], "width"), to_uint(dims[1], "height")};
  }
  if (kind == "circulant") {
    auto f = parse_fields(parts, 1, {"n"});
    gen::Circulant c{f.need("n"), {}, 0};
    if (auto j = f.get("jumps")) {
      for (auto tok : split(*j, ',')) c.jumps.push_back(to_uint(tok, "jumps"));
    } else if (auto s = f.get("s")) {
      c.random_jumps = to_uint(*s, "s");
    } else if (auto d = f.get("d")) {
      std::uint32_t deg = to_uint(*d, "d");
      if (deg % 2 != 0) throw std::invalid_argument("circulant degree must be even");
      c.random_jumps = deg / 2;
    } else {
      throw std::invalid_argument("circulant spec needs s=, d= or jumps=");
    }
    return c;
  }
  if (kind == "rbt") {
    auto f = parse_fields(parts, 1, {});
    return gen::BranchingTree{f.need("dmax"), f.need("n")};
  }
  if (kind == "tree") {
    auto f = parse_fields(parts, 1, {});
    return gen::RegularTree{f.need("d"), f.need("depth")};
  }
  if (kind == "rr") {
    auto f = parse_fields(parts, 1, {});
    return gen::RandomRegular{f.need("n"), f.need("d")};
  }
  if (kind == "ba") {
    auto f = parse_fields(parts, 1, {});
    return gen::PreferentialAttachment{f.need("n"), f.need("m")};
  }
  if (kind == "path") return gen::Path{parse_fields(parts, 1, {"n"}).need("n")};
  if (kind == "star") return gen::Star{parse_fields(parts, 1, {"k"}).need("k")};
  if (kind == "cycle") return gen::Cycle{parse_fields(parts, 1, {"n"}).need("n")};
  if (kind == "broom") {
    auto f = parse_fields(parts, 1, {});
    return gen::Broom{f.need("t"), f.need("k")};
  }
  throw std::invalid_argument("unknown generator kind '" + std::string(kind) + "'");
}

std::string to_string(const GeneratorSpec& spec) {
  struct Printer {
    std::string operator()(const gen::RegularTree& s) const {
      return "tree:d=" + std::to_string(s.degree) + ":depth=" + std::to_string(s.depth);
    }
    std::string operator()(const gen::BranchingTree& s) const {
      return "rbt:dmax=" + std::to_string(s.max_degree) + ":n=" + std::to_string(s.vertices);
    }
    std::string operator()(const gen::Grid& s) const {
      return "grid:" + std::to_string(s.width) + "x" + std::to_string(s.height);
    }
    std::string operator()(const gen::Circulant& s) const {
      if (!s.jumps.empty()) return "circulant:" + std::to_string(s.vertices) + ":jumps=" + join(s.jumps);
      return "circulant:" + std::to_string(s.vertices) + ":s=" + std::to_string(s.random_jumps);
    }
    std::string operator()(const gen::RandomRegular& s) const {
      return "rr:n=" + std::to_string(s.vertices) + ":d=" + std::to_string(s.degree);
    }
    std::string operator()(const gen::PreferentialAttachment& s) const {
      return "ba:n=" + std::to_string(s.vertices) + ":m=" + std::to_string(s.edges_per_vertex);
    }
    std::string operator()(const gen::Path& s) const { return "path:" + std::to_string(s.vertices); }
    std::string operator()(const gen::Star& s) const { return "star:" + std::to_string(s.leaves); }
    std::string operator()(const gen::Cycle& s) const { return "cycle:" + std::to_string(s.vertices); }
    std::string operator()(const gen::Broom& s) const {
      return "broom:t=" + std::to_string(s.half_length) + ":k=" + std::to_string(s.leaves);
    }
  };
  return std::visit(Printer{}, spec);
}

Graph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return std::visit([&](const auto& s) { return make(s, rng); }, spec);
}

}  // namespace episource
