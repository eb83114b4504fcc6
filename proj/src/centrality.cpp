#include "episource/centrality.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "episource/errors.hpp"

namespace episource {

std::string to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::epidemic: return "epidemic";
    case CentralityKind::distance: return "distance";
    case CentralityKind::jordan: return "jordan";
    case CentralityKind::sdc: return "sdc";
    case CentralityKind::bfs_rumor: return "bfs-rumor";
  }
  return "unknown";
}

namespace {

void fill_argbest(CentralityScores& s) {
  s.argbest.clear();
  const bool maximize = s.higher_is_better();
  for (vertex_t v = 0; v < s.score.size(); ++v) {
    if (s.argbest.empty()) {
      s.argbest.push_back(v);
      continue;
    }
    const Rational& best = s.score[s.argbest.front()];
    if (s.score[v] == best) {
      s.argbest.push_back(v);
    } else if (maximize ? s.score[v] > best : s.score[v] < best) {
      s.argbest = {v};
    }
  }
}

BigInt subtree_product(const RootedTreeView& view) {
  std::vector<std::uint64_t> sizes(view.subtree_size.begin(), view.subtree_size.end());
  return product(sizes);
}

BigInt exact_quotient(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

CentralityScores epidemic_centrality_tree(const Graph& tree) {
  if (!tree.is_tree()) throw topology_error("epidemic centrality on a tree needs a tree");
  const std::size_t n = tree.vertex_count();
  RootedTreeView view = bfs_rooted(tree, 0);
  std::vector<BigInt> m(n);
  m[0] = exact_quotient(factorial(static_cast<unsigned>(n)), subtree_product(view));
  // Moving the root from parent p to child c multiplies by t_c / (n - t_c).
  for (std::size_t i = 1; i < view.order.size(); ++i) {
    const vertex_t c = view.order[i];
    const unsigned long t = view.subtree_size[c];
    m[c] = exact_quotient(m[view.parent[c]] * t, BigInt(static_cast<unsigned long>(n - t)));
  }
  CentralityScores s;
  s.kind = CentralityKind::epidemic;
  s.score.reserve(n);
  for (auto& x : m) s.score.emplace_back(x);
  fill_argbest(s);
  return s;
}

CentralityScores epidemic_centrality_unicyclic(const Graph& g) {
  if (!g.is_unicyclic()) throw topology_error("graph is not unicyclic");
  CentralityScores s;
  s.kind = CentralityKind::epidemic;
  s.score.assign(g.vertex_count(), Rational(0));
  for (const auto& t : unicyclic_spanning_trees(g)) {
    auto part = epidemic_centrality_tree(t.tree);
    for (vertex_t v = 0; v < g.vertex_count(); ++v) s.score[v] += part.score[v];
  }
  fill_argbest(s);
  return s;
}

EpidemicCenter locate_epidemic_center_unicyclic(const Graph& g) {
  if (!g.is_unicyclic()) throw topology_error("graph is not unicyclic");
  const std::size_t n = g.vertex_count();
  const std::vector<vertex_t> cycle = unique_cycle(g);
  const std::size_t h = cycle.size();
  std::vector<char> on_cycle(n, 0);
  for (vertex_t c : cycle) on_cycle[c] = 1;

  // Hanging trees: parent points towards the cycle; sub[v] counts v and the
  // vertices beyond it. sub[c_i] = t_i.
  std::vector<vertex_t> parent(n, no_vertex);
  std::vector<std::size_t> sub(n, 1);
  std::vector<vertex_t> order;
  order.reserve(n);
  for (vertex_t c : cycle) order.push_back(c);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (vertex_t w : g.neighbors(order[i])) {
      if (on_cycle[w] || w == parent[order[i]]) continue;
      parent[w] = order[i];
      order.push_back(w);
    }
  }
  for (std::size_t i = order.size(); i-- > h;) sub[parent[order[i]]] += sub[order[i]];

  // Condition 1: every component of G_n minus v has at most n/2 vertices.
  for (vertex_t v = 0; v < n; ++v) {
    std::size_t largest = n - sub[v];  // the part containing the cycle (or the rest of it)
    for (vertex_t w : g.neighbors(v))
      if (!on_cycle[w] && parent[w] == v) largest = std::max(largest, sub[w]);
    if (2 * largest <= n) return {v, CenterCertificate::component_condition, {}, {}};
  }

  // Ratio table. T_q drops the edge (c_q, c_{q+1}); its cycle part is the
  // path c_{q+1}, ..., c_q. Moving the root one step along it multiplies by
  // (n - A) / A, with A the prefix sum of t up to the old root.
  std::vector<unsigned long> t(h);
  for (std::size_t i = 0; i < h; ++i) t[i] = sub[cycle[i]];

  auto path_prefix = [&](std::size_t q) {
    std::vector<unsigned long> a(h);
    unsigned long acc = 0;
    for (std::size_t s = 0; s < h; ++s) a[s] = acc += t[(q + 1 + s) % h];
    return a;
  };
  // Product over the cycle vertices other than c_0 of their subtree sizes in
  // T_q rooted at c_0.
  auto anchor_product = [&](std::size_t q) {
    auto a = path_prefix(q);
    const std::size_t s0 = (h - (q + 1) % h) % h;  // position of c_0 on the path
    std::vector<std::uint64_t> f;
    for (std::size_t r = 0; r < h; ++r) {
      if (r == s0) continue;
      f.push_back(r > s0 ? n - a[r - 1] : a[r]);
    }
    return product(f);
  };

  // r = |M(c_0, T_0)| computed once on the real spanning tree.
  const Graph t0 = g.without_edge(cycle[0], cycle[1 % h]);
  const Rational r(exact_quotient(factorial(static_cast<unsigned>(n)), subtree_product(bfs_rooted(t0, cycle[0]))));
  const BigInt base = anchor_product(0);

  std::vector<Rational> column(h, Rational(0));
  for (std::size_t q = 0; q < h; ++q) {
    auto a = path_prefix(q);
    const std::size_t s0 = (h - (q + 1) % h) % h;
    std::vector<Rational> row(h);
    Rational anchor = r * Rational(base) / Rational(anchor_product(q));
    anchor.canonicalize();
    row[s0] = anchor;
    for (std::size_t s = s0; s + 1 < h; ++s)
      row[s + 1] = row[s] * Rational(static_cast<long>(n - a[s]), static_cast<long>(a[s]));
    for (std::size_t s = s0; s-- > 0;)
      row[s] = row[s + 1] * Rational(static_cast<long>(a[s]), static_cast<long>(n - a[s]));
    for (std::size_t s = 0; s < h; ++s) {
      row[s].canonicalize();
      column[(q + 1 + s) % h] += row[s];
    }
  }

  EpidemicCenter out;
  out.certificate = CenterCertificate::cycle_ratio;
  out.cycle = cycle;
  out.cycle_scores = column;
  std::size_t best = 0;
  for (std::size_t i = 1; i < h; ++i) {
    if (column[i] > column[best] || (column[i] == column[best] && cycle[i] < cycle[best])) best = i;
  }
  out.vertex = cycle[best];
  return out;
}

namespace {

template <class Reduce>
CentralityScores per_source_bfs(const Graph& g, CentralityKind kind, Reduce reduce) {
  CentralityScores s;
  s.kind = kind;
  s.score.reserve(g.vertex_count());
  for (vertex_t v = 0; v < g.vertex_count(); ++v) {
    auto dist = bfs_distances(g, v);
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
      if (dist[u] == unreachable) throw topology_error("graph is disconnected");
    }
    s.score.emplace_back(reduce(dist));
  }
  fill_argbest(s);
  return s;
}

}  // namespace

CentralityScores distance_centrality(const Graph& g) {
  return per_source_bfs(g, CentralityKind::distance, [](const std::vector<std::uint32_t>& d) {
    return static_cast<unsigned long>(std::accumulate(d.begin(), d.end(), std::uint64_t{0}));
  });
}

CentralityScores jordan_centrality(const Graph& g) {
  return per_source_bfs(g, CentralityKind::jordan, [](const std::vector<std::uint32_t>& d) {
    return static_cast<unsigned long>(d.empty() ? 0 : *std::max_element(d.begin(), d.end()));
  });
}

std::vector<Rational> sdc_weights(const Graph& g, const CycleInfo& cycles) {
  std::vector<Rational> w(g.vertex_count());
  for (vertex_t v = 0; v < g.vertex_count(); ++v) {
    const CycleSize& c = cycles.min_cycle_size[v];
    if (c.is_acyclic()) {
      w[v] = 1;
    } else {
      w[v] = Rational(static_cast<long>(c.size()), static_cast<long>(c.size()) + 1);
      w[v].canonicalize();
    }
  }
  return w;
}

CentralityScores statistical_distance_centrality(const Graph& g, const std::vector<Rational>& weights) {
  const std::size_t n = g.vertex_count();
  if (weights.size() != n) throw std::invalid_argument("one weight per vertex required");
  for (const auto& w : weights)
    if (w <= 0) throw std::invalid_argument("SDC weights must be positive");

  // Scale every weight to an integer by the lcm of the denominators.
  BigInt scale = 1;
  for (const auto& w : weights) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), w.get_den_mpz_t());
  std::vector<BigInt> big(n);
  bool small = true;
  for (vertex_t v = 0; v < n; ++v) {
    big[v] = weights[v].get_num() * (scale / weights[v].get_den());
    small = small && big[v].fits_ulong_p() && big[v] < (BigInt(1) << 40);
  }
  std::vector<std::uint64_t> fast;
  if (small)
    for (const auto& b : big) fast.push_back(b.get_ui());

  CentralityScores s;
  s.kind = CentralityKind::sdc;
  s.score.reserve(n);
  std::vector<std::uint32_t> level(n);
  std::vector<vertex_t> queue(n);
  // BFS from each vertex; every vertex contributes w_u * level(u), which is
  // the total the upward messages of a BFS tree deliver to its root.
  for (vertex_t v = 0; v < n; ++v) {
    std::fill(level.begin(), level.end(), unreachable);
    std::size_t head = 0, tail = 0;
    queue[tail++] = v;
    level[v] = 0;
    while (head < tail) {
      vertex_t x = queue[head++];
      for (vertex_t y : g.neighbors(x)) {
        if (level[y] != unreachable) continue;
        level[y] = level[x] + 1;
        queue[tail++] = y;
      }
    }
    if (tail != n) throw topology_error("graph is disconnected");
    Rational score;
    if (small) {
      __extension__ typedef unsigned __int128 u128;
      u128 acc = 0;
      for (vertex_t u = 0; u < n; ++u) acc += static_cast<u128>(fast[u]) * level[u];
      BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(acc >> 64));
      BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(acc));
      score = Rational((hi << 64) + lo, scale);
    } else {
      BigInt acc = 0;
      for (vertex_t u = 0; u < n; ++u) acc += big[u] * static_cast<unsigned long>(level[u]);
      score = Rational(acc, scale);
    }
    score.canonicalize();
    s.score.push_back(std::move(score));
  }
  fill_argbest(s);
  return s;
}

CentralityScores bfs_rumor_centrality(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  CentralityScores s;
  s.kind = CentralityKind::bfs_rumor;
  s.score.reserve(n);
  std::vector<vertex_t> parent(n), queue(n);
  std::vector<std::uint64_t> size(n);
  for (vertex_t v = 0; v < n; ++v) {
    std::fill(parent.begin(), parent.end(), no_vertex);
    std::size_t head = 0, tail = 0;
    queue[tail++] = v;
    parent[v] = v;
    while (head < tail) {
      vertex_t x = queue[head++];
      for (vertex_t y : g.neighbors(x)) {
        if (parent[y] != no_vertex) continue;
        parent[y] = x;
        queue[tail++] = y;
      }
    }
    if (tail != n) throw topology_error("graph is disconnected");
    std::fill(size.begin(), size.end(), 1);
    for (std::size_t i = n; i-- > 1;) size[parent[queue[i]]] += size[queue[i]];
    s.score.emplace_back(exact_quotient(nfact, product(size)));
  }
  fill_argbest(s);
  return s;
}

void write_scores_csv(std::ostream& out, const Graph& g, const CentralityScores& scores) {
  std::vector<char> best(scores.score.size(), 0);
  for (vertex_t v : scores.argbest) best[v] = 1;
  out << "vertex,score,is_argbest\n";
  for (vertex_t v = 0; v < scores.score.size(); ++v)
    out << g.label(v) << ',' << to_display(scores.score[v]) << ',' << (best[v] ? 1 : 0) << '\n';
}

}  // namespace episource
