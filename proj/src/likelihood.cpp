#include "episource/likelihood.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "episource/errors.hpp"

namespace episource {

std::string to_string(LikelihoodMethod m) {
  switch (m) {
    case LikelihoodMethod::oracle: return "oracle";
    case LikelihoodMethod::line_closed_form: return "line-closed-form";
    case LikelihoodMethod::broom_closed_form: return "broom-closed-form";
    case LikelihoodMethod::cyclic_decomposition: return "cyclic-decomposition";
  }
  return "unknown";
}

std::vector<std::size_t> LikelihoodProfile::argmax() const {
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < likelihood.size(); ++i) {
    if (best.empty() || likelihood[i] > likelihood[best.front()]) {
      best = {i};
    } else if (likelihood[i] == likelihood[best.front()]) {
      best.push_back(i);
    }
  }
  return best;
}

nlohmann::json LikelihoodProfile::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < likelihood.size(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    if (i < decomposition.size()) {
      for (const auto& [k, term] : decomposition[i]) {
        terms.push_back({{"k", k}, {"count", term.count.get_str()}, {"per_order", to_decimal(term.per_order)}});
      }
    }
    rows.push_back({{"vertex", vertices[i]},
                    {"likelihood", to_decimal(likelihood[i])},
                    {"numerator", likelihood[i].get_num().get_str()},
                    {"denominator", likelihood[i].get_den().get_str()},
                    {"decomposition", std::move(terms)}});
  }
  nlohmann::json best = nlohmann::json::array();
  for (std::size_t i : argmax()) best.push_back(vertices[i]);
  return {{"method", to_string(method)}, {"vertices", std::move(rows)}, {"argmax", std::move(best)}};
}

// ---- enumeration oracle ----------------------------------------------------

namespace {

__extension__ typedef unsigned __int128 u128;

struct Overflow {};

inline void mul(u128& a, std::uint64_t b) {
  if (__builtin_mul_overflow(a, static_cast<u128>(b), &a)) throw Overflow{};
}
inline void mul(BigInt& a, std::uint64_t b) { a *= static_cast<unsigned long>(b); }
inline void add(u128& a, const u128& b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
inline void add(BigInt& a, const BigInt& b) { a += b; }

BigInt to_big(u128 x) {
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return (hi << 64) + lo;
}
const BigInt& to_big(const BigInt& x) { return x; }

Rational ratio(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Depth-first walk over spreading orders. Probabilities are carried as an
// integer numerator/denominator pair and summed per distinct denominator,
// so the common case never touches GMP.
template <class Int>
class Enumerator {
 public:
  Enumerator(const Graph& gn, std::span<const std::size_t> degrees, const OracleOptions& opts)
      : n_(gn.vertex_count()), deg_(degrees.begin(), degrees.end()), rule_(opts.rule), keep_(opts.keep_orders) {
    adj_.assign(n_, 0);
    for (vertex_t v = 0; v < n_; ++v)
      for (vertex_t w : gn.neighbors(v)) adj_[v] |= std::uint64_t{1} << w;
    for (vertex_t m : opts.marked) marked_ |= std::uint64_t{1} << m;
    order_.reserve(n_);
  }

  void run(vertex_t source) {
    std::uint64_t key = marked_ >> source & 1 ? 1 : 0;
    order_.push_back(source);
    walk(std::uint64_t{1} << source, deg_[source], Int(1), Int(1), key);
  }

  OracleResult result() const {
    OracleResult out;
    out.likelihood = 0;
    out.order_count = 0;
    for (const auto& [key, bucket] : buckets_) {
      Rational total = 0;
      for (const auto& [den, num] : bucket.sums) total += ratio(to_big(num), to_big(den));
      BigInt count = static_cast<unsigned long>(bucket.count);
      out.likelihood += total;
      out.order_count += count;
      if (marked_) out.decomposition[key] = PositionTerm{count, total / Rational(count)};
    }
    out.orders = orders_;
    return out;
  }

 private:
  struct Bucket {
    std::uint64_t count = 0;
    std::map<Int, Int> sums;  // denominator -> summed numerators
  };

  void walk(std::uint64_t mask, std::uint64_t boundary, Int num, Int den, std::uint64_t key) {
    const std::size_t depth = order_.size();
    if (depth == n_) {
      auto& bucket = buckets_[key];
      ++bucket.count;
      auto [it, fresh] = bucket.sums.try_emplace(den, num);
      if (!fresh) add(it->second, num);
      if (keep_) orders_.push_back({order_, ratio(to_big(num), to_big(den))});
      return;
    }
    for (vertex_t x = 0; x < n_; ++x) {
      if (mask >> x & 1) continue;
      const auto links = static_cast<std::uint64_t>(std::popcount(adj_[x] & mask));
      if (links == 0) continue;
      Int n2 = num, d2 = den;
      mul(n2, links);
      mul(d2, boundary);
      std::uint64_t k2 = key;
      if (marked_ >> x & 1) k2 = (rule_ == MarkRule::last || key == 0) ? depth + 1 : key;
      order_.push_back(x);
      walk(mask | std::uint64_t{1} << x, boundary + deg_[x] - 2 * links, std::move(n2), std::move(d2), k2);
      order_.pop_back();
    }
  }

  std::size_t n_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::size_t> deg_;
  std::uint64_t marked_ = 0;
  MarkRule rule_;
  bool keep_;
  std::vector<vertex_t> order_;
  std::map<std::uint64_t, Bucket> buckets_;
  std::vector<OrderRecord> orders_;
};

}  // namespace

OracleResult oracle_enumerate(const Graph& gn, std::span<const std::size_t> degrees, vertex_t source,
                              const OracleOptions& opts) {
  const std::size_t n = gn.vertex_count();
  if (opts.cap > 20) throw std::invalid_argument("enumeration cap above 20 is not supported");
  if (n > opts.cap) {
    throw cap_exceeded_error("G_n has " + std::to_string(n) + " vertices, above the enumeration cap of " +
                             std::to_string(opts.cap) + " (up to " + factorial(static_cast<unsigned>(n)).get_str() +
                             " orders)");
  }
  if (!gn.contains(source)) throw std::invalid_argument("source is not a vertex of G_n");
  if (degrees.size() != n) throw std::invalid_argument("one underlying degree per G_n vertex required");
  for (vertex_t v = 0; v < n; ++v) {
    if (degrees[v] < gn.degree(v))
      throw std::invalid_argument("underlying degree of " + gn.label(v) + " is below its degree in G_n");
  }
  for (vertex_t m : opts.marked)
    if (!gn.contains(m)) throw std::invalid_argument("marked vertex is not in G_n");
  if (!gn.is_connected()) throw topology_error("infected subgraph is disconnected");

  try {
    Enumerator<u128> e(gn, degrees, opts);
    e.run(source);
    return e.result();
  } catch (const Overflow&) {
    Enumerator<BigInt> e(gn, degrees, opts);
    e.run(source);
    return e.result();
  }
}

OracleResult oracle_enumerate(const Graph& underlying, std::span<const vertex_t> infected, vertex_t source,
                              const OracleOptions& opts) {
  std::vector<vertex_t> local(underlying.vertex_count(), no_vertex);
  for (std::size_t i = 0; i < infected.size(); ++i) {
    if (!underlying.contains(infected[i])) throw std::invalid_argument("infected vertex not in the underlying graph");
    local[infected[i]] = static_cast<vertex_t>(i);
  }
  if (!underlying.contains(source) || local[source] == no_vertex)
    throw std::invalid_argument("source is not an infected vertex");
  Graph gn = underlying.induced_subgraph(infected);
  std::vector<std::size_t> degrees;
  for (vertex_t v : infected) degrees.push_back(underlying.degree(v));
  OracleOptions local_opts = opts;
  for (auto& m : local_opts.marked) {
    if (!underlying.contains(m) || local[m] == no_vertex) throw std::invalid_argument("marked vertex is not infected");
    m = local[m];
  }
  OracleResult r = oracle_enumerate(gn, degrees, local[source], local_opts);
  for (auto& rec : r.orders)
    for (auto& v : rec.order) v = infected[v];
  return r;
}

LikelihoodProfile oracle_profile(const Graph& gn, std::span<const std::size_t> degrees, const OracleOptions& opts) {
  LikelihoodProfile p;
  p.method = LikelihoodMethod::oracle;
  for (vertex_t v = 0; v < gn.vertex_count(); ++v) {
    OracleResult r = oracle_enumerate(gn, degrees, v, opts);
    p.vertices.push_back(gn.label(v));
    p.likelihood.push_back(r.likelihood);
    p.decomposition.push_back(std::move(r.decomposition));
  }
  return p;
}

// ---- closed forms ----------------------------------------------------------

namespace {

// prod of 1/x over the given denominators; throws if any is not positive.
Rational reciprocal_product(const std::vector<long>& dens) {
  BigInt den = 1;
  for (long x : dens) {
    if (x <= 0) throw std::domain_error("non-positive boundary weight");
    den *= x;
  }
  return Rational(BigInt(1), den);
}

std::vector<std::string> numbered(const char* prefix, long from, long to) {
  std::vector<std::string> out;
  for (long i = from; i <= to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Rational regular_tree_order_probability(long d, long n) {
  if (d < 2 || n < 1) throw std::domain_error("need d >= 2 and n >= 1");
  std::vector<long> dens;
  for (long k = 1; k < n; ++k) dens.push_back(d * k - 2 * (k - 1));
  return reciprocal_product(dens);
}

Rational irregular_position_probability(long d, long d_prime, long n, long k) {
  if (k < 2 || k > n) throw std::domain_error("irregular position k must satisfy 2 <= k <= n");
  if (d < 2 || d_prime < 1) throw std::domain_error("need d >= 2 and d' >= 1");
  std::vector<long> dens;
  for (long i = 1; i <= k - 1; ++i) dens.push_back(d + z_shift(d, i));
  for (long i = k - 1; i <= n - 2; ++i) dens.push_back(d + z_shift(d, i) + d_prime - 2);
  return reciprocal_product(dens);
}

LikelihoodProfile line_likelihood(long d, long n) {
  if (d <= 2) throw std::domain_error("line likelihood needs an underlying degree d > 2");
  if (n < 2) throw std::domain_error("line likelihood needs n >= 2");
  LikelihoodProfile p;
  p.method = LikelihoodMethod::line_closed_form;
  p.vertices = numbered("v", 1, n);
  for (long i = 1; i < n; ++i) {
    Decomposition dec;
    Rational total = 0;
    for (long k = n - i + 1; k <= n; ++k) {
      BigInt m = binomial(k - 2, k - n + i - 1);
      if (m == 0) continue;
      Rational per = irregular_position_probability(d, 1, n, k);
      total += Rational(m) * per;
      dec[static_cast<std::size_t>(k)] = PositionTerm{m, per};
    }
    p.likelihood.push_back(total);
    p.decomposition.push_back(std::move(dec));
  }
  // Source at the irregular end: one order, boundary z_d(l) + 1 after l steps.
  std::vector<long> dens;
  for (long l = 1; l <= n - 1; ++l) dens.push_back(z_shift(d, l) + 1);
  Rational end = reciprocal_product(dens);
  p.likelihood.push_back(end);
  p.decomposition.push_back({{1, PositionTerm{1, end}}});
  return p;
}

namespace {

// Sum over placements of the leaves with the first leaf at h1 of the order
// probability. Position 1 is the source; `leaves_before` leaves are already
// infected before position `start` with running weight `w0`.
Rational broom_placements(long d, long n, long k, long h1, long start, long leaves_before, const Rational& w0) {
  std::vector<Rational> cur(static_cast<std::size_t>(k + 1), Rational(0));
  cur[static_cast<std::size_t>(leaves_before)] = w0;
  for (long pos = start; pos <= n; ++pos) {
    std::vector<Rational> next(cur.size(), Rational(0));
    for (long c = 0; c <= k; ++c) {
      const Rational& w = cur[static_cast<std::size_t>(c)];
      if (w == 0) continue;
      const long boundary = d + z_shift(d, pos - 1) - (d - 1) * c;
      if (boundary <= 0) continue;
      Rational w2 = w / Rational(boundary);
      const bool leaf_allowed = pos == h1 || (pos > h1 && c < k);
      const bool path_allowed = pos != h1;
      if (path_allowed) next[static_cast<std::size_t>(c)] += w2;
      if (leaf_allowed && c < k) next[static_cast<std::size_t>(c + 1)] += w2;
    }
    cur = std::move(next);
  }
  return cur[static_cast<std::size_t>(k)];
}

}  // namespace

LikelihoodProfile broom_likelihood(long d, long t, long k) {
  if (t < 1) throw std::domain_error("broom needs t >= 1");
  if (k < 1 || k >= d) throw std::domain_error("broom needs 1 <= k < d leaves");
  const long handle = 2 * t;
  const long n = handle + k;
  const BigInt kfact = factorial(static_cast<unsigned>(k));

  LikelihoodProfile p;
  p.method = LikelihoodMethod::broom_closed_form;
  p.vertices = numbered("v", 1, handle);
  for (auto& s : numbered("u", 1, k)) p.vertices.push_back(s);

  for (long i = 1; i <= handle; ++i) {
    Decomposition dec;
    Rational total = 0;
    for (long h1 = 2; h1 <= n - k + 1; ++h1) {
      // Orders of the path with v_{2t} infected before position h1, times k!.
      BigInt count = kfact;
      if (i < handle) {
        BigInt paths = 0;
        for (long j = handle - i; j <= h1 - 2; ++j) paths += binomial(j - 1, handle - i - 1);
        count *= paths;
      }
      if (count == 0) continue;
      Rational s = broom_placements(d, n, k, h1, 2, 0, Rational(1));
      if (s == 0) continue;
      BigInt placements = binomial(n - h1, k - 1);
      total += Rational(count) * s;
      dec[static_cast<std::size_t>(h1)] = PositionTerm{count * placements, s / Rational(placements)};
    }
    p.likelihood.push_back(total);
    p.decomposition.push_back(std::move(dec));
  }

  // A leaf source forces v_{2t} second (boundary 1); the other k-1 leaves are
  // interchangeable and the path beyond v_{2t} is forced.
  const Rational w2 = Rational(1) / Rational(d + z_shift(d, 1) - (d - 1));
  Rational s = broom_placements(d, n, k, 1, 3, 1, w2);
  BigInt count = factorial(static_cast<unsigned>(k - 1));
  Rational leaf = Rational(count) * s;
  BigInt orders = count * binomial(n - 2, k - 1);
  for (long u = 0; u < k; ++u) {
    p.likelihood.push_back(leaf);
    p.decomposition.push_back({{1, PositionTerm{orders, leaf / Rational(orders)}}});
  }
  return p;
}

Rational cyclic_position_probability(long d, long n, long k) {
  if (k < 3 || k > n) throw std::domain_error("last cycle vertex position must satisfy 3 <= k <= n");
  std::vector<long> dens;
  for (long j = 1; j <= k - 1; ++j) dens.push_back(d + z_shift(d, j));
  for (long j = k; j <= n - 1; ++j) dens.push_back(d + z_shift(d, j) - 2);
  return 2 * reciprocal_product(dens);
}

std::pair<std::size_t, std::size_t> cyclic_position_range(const Graph& gn, vertex_t v, vertex_t last_cycle_vertex) {
  CycleInfo info = minimum_cycle_sizes(gn);
  const auto& cycle = info.cycle_vertices;
  if (cycle.empty()) throw topology_error("G_n is not unicyclic");
  if (std::find(cycle.begin(), cycle.end(), last_cycle_vertex) == cycle.end())
    throw std::invalid_argument("v_l is not on the cycle");
  std::vector<char> on_cycle(gn.vertex_count(), 0);
  for (vertex_t c : cycle) on_cycle[c] = 1;

  // t_{v_l}: v_l plus everything hanging off it.
  std::vector<char> seen(gn.vertex_count(), 0);
  std::vector<vertex_t> stack{last_cycle_vertex};
  seen[last_cycle_vertex] = 1;
  std::size_t hanging = 0;
  bool source_hangs = false;
  while (!stack.empty()) {
    vertex_t x = stack.back();
    stack.pop_back();
    ++hanging;
    source_hangs = source_hangs || x == v;
    for (vertex_t w : gn.neighbors(x)) {
      if (seen[w] || on_cycle[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  const std::size_t lo = cycle_distance(gn, v, info) + cycle.size();
  const std::size_t hi = gn.vertex_count() - hanging + 1;
  if (source_hangs) return {lo, lo - 1};  // v_l is the first cycle vertex reached
  return {lo, hi};
}

std::vector<BigInt> last_marked_position_counts(const Graph& tree, vertex_t root, std::span<const vertex_t> marked) {
  if (!tree.is_tree()) throw topology_error("expected a tree");
  std::vector<char> is_marked(tree.vertex_count(), 0);
  for (vertex_t m : marked) {
    if (!tree.contains(m)) throw std::invalid_argument("marked vertex is not in the tree");
    is_marked[m] = 1;
  }
  RootedTreeView view = bfs_rooted(tree, root);

  // dist[v][p]: orders of v's subtree whose last marked vertex sits at p.
  std::vector<std::vector<BigInt>> dist(tree.vertex_count());
  for (auto it = view.order.rbegin(); it != view.order.rend(); ++it) {
    const vertex_t v = *it;
    std::vector<BigInt> acc{BigInt(1)};
    for (vertex_t c : view.children(tree, v)) {
      const std::vector<BigInt>& b = dist[c];
      const long na = static_cast<long>(acc.size()) - 1, nb = static_cast<long>(b.size()) - 1;
      std::vector<BigInt> merged(static_cast<std::size_t>(na + nb + 1), BigInt(0));
      merged[0] = acc[0] * b[0] * binomial(na + nb, na);
      // x's marked element (at px) lands at K and is the last marked overall.
      auto spread = [&](const std::vector<BigInt>& x, long nx, const std::vector<BigInt>& y, long ny) {
        std::vector<BigInt> prefix(static_cast<std::size_t>(ny + 1));
        BigInt run = 0;
        for (long p = 0; p <= ny; ++p) prefix[static_cast<std::size_t>(p)] = run += y[static_cast<std::size_t>(p)];
        for (long px = 1; px <= nx; ++px) {
          const BigInt& here = x[static_cast<std::size_t>(px)];
          if (here == 0) continue;
          for (long K = px; K <= px + ny; ++K) {
            const BigInt& below = prefix[static_cast<std::size_t>(K - px)];
            if (below == 0) continue;
            merged[static_cast<std::size_t>(K)] +=
                here * below * binomial(K - 1, px - 1) * binomial(nx + ny - K, nx - px);
          }
        }
      };
      spread(acc, na, b, nb);
      spread(b, nb, acc, na);
      acc = std::move(merged);
      dist[c].clear();
    }
    std::vector<BigInt> with_root(acc.size() + 1, BigInt(0));
    with_root[0] = is_marked[v] ? BigInt(0) : acc[0];
    if (is_marked[v]) with_root[1] = acc[0];
    for (std::size_t p = 1; p < acc.size(); ++p) with_root[p + 1] = acc[p];
    dist[v] = std::move(with_root);
  }
  return dist[root];
}

LikelihoodProfile unicyclic_likelihood(const Graph& gn, long d) {
  if (!gn.is_unicyclic()) throw topology_error("G_n is not unicyclic");
  for (vertex_t v = 0; v < gn.vertex_count(); ++v) {
    if (static_cast<long>(gn.degree(v)) > d)
      throw std::invalid_argument("vertex " + gn.label(v) + " has more than d neighbors in G_n");
  }
  const long n = static_cast<long>(gn.vertex_count());
  const std::vector<vertex_t> cycle = unique_cycle(gn);
  const std::vector<SpanningTree> trees = unicyclic_spanning_trees(gn);

  LikelihoodProfile p;
  p.method = LikelihoodMethod::cyclic_decomposition;
  for (vertex_t v = 0; v < gn.vertex_count(); ++v) {
    // Each order of G_n is an order of exactly the two spanning trees that
    // drop a cycle edge at its last cycle vertex.
    std::vector<BigInt> twice(gn.vertex_count() + 1, BigInt(0));
    for (const auto& t : trees) {
      auto f = last_marked_position_counts(t.tree, v, cycle);
      for (std::size_t k = 0; k < f.size(); ++k) twice[k] += f[k];
    }
    Decomposition dec;
    Rational total = 0;
    for (long k = 3; k <= n; ++k) {
      const BigInt& c2 = twice[static_cast<std::size_t>(k)];
      if (c2 == 0) continue;
      BigInt m = c2 / 2;
      Rational per = cyclic_position_probability(d, n, k);
      total += Rational(m) * per;
      dec[static_cast<std::size_t>(k)] = PositionTerm{m, per};
    }
    p.vertices.push_back(gn.label(v));
    p.likelihood.push_back(total);
    p.decomposition.push_back(std::move(dec));
  }
  return p;
}

LikelihoodProfile unicyclic_likelihood(const Graph& underlying, std::span<const vertex_t> infected) {
  if (infected.empty()) throw std::invalid_argument("empty infected set");
  for (vertex_t v : infected)
    if (!underlying.contains(v)) throw std::invalid_argument("infected vertex not in the underlying graph");
  const std::size_t d = underlying.degree(infected.front());
  for (vertex_t v : infected) {
    if (underlying.degree(v) != d)
      throw topology_error("underlying graph is not degree-regular on G_n (vertex " + underlying.label(v) + ")");
  }
  return unicyclic_likelihood(underlying.induced_subgraph(infected), static_cast<long>(d));
}

}  // namespace episource
