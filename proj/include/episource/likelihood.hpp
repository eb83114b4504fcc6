#pragma once

// Exact likelihoods P(G_n | v) of an infected subgraph G_n under the SI
// model: a brute-force enumeration oracle plus closed forms for lines,
// brooms and unicyclic graphs inside a degree-regular underlying graph.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "episource/graph.hpp"
#include "episource/numeric.hpp"

namespace episource {

/// m orders share the key position k; `per_order` is their mean
/// probability, so count * per_order is the exact contribution. For the
/// closed forms every such order has exactly this probability.
struct PositionTerm {
  BigInt count;
  Rational per_order;
};

using Decomposition = std::map<std::size_t, PositionTerm>;  // key: 1-based position

enum class LikelihoodMethod { oracle, line_closed_form, broom_closed_form, cyclic_decomposition };

std::string to_string(LikelihoodMethod m);

struct LikelihoodProfile {
  LikelihoodMethod method = LikelihoodMethod::oracle;
  std::vector<std::string> vertices;  // label per row
  std::vector<Rational> likelihood;
  std::vector<Decomposition> decomposition;

  /// Rows attaining the maximum likelihood, ascending.
  std::vector<std::size_t> argmax() const;
  nlohmann::json to_json() const;
};

// ---- enumeration oracle ----------------------------------------------------

enum class MarkRule { first, last };

struct OracleOptions {
  std::size_t cap = 10;  // at most 20
  bool keep_orders = false;
  // When non-empty, orders are grouped by the position of the first or last
  // marked vertex; orders with no marked vertex go under key 0.
  std::vector<vertex_t> marked;
  MarkRule rule = MarkRule::last;
};

struct OrderRecord {
  std::vector<vertex_t> order;
  Rational probability;
};

struct OracleResult {
  Rational likelihood;  // P(G_n | source)
  BigInt order_count;   // |M(source, G_n)|
  Decomposition decomposition;
  std::vector<OrderRecord> orders;  // only with keep_orders
};

/// Sums P(sigma | source) over every spreading order of G_n. `degrees[v]` is
/// the degree of G_n's vertex v in the underlying graph. Vertex ids in the
/// options and the result are G_n ids. Throws cap_exceeded_error when
/// |G_n| > cap, topology_error when G_n is disconnected and
/// std::invalid_argument when a degree is below the degree inside G_n.
OracleResult oracle_enumerate(const Graph& gn, std::span<const std::size_t> degrees, vertex_t source,
                              const OracleOptions& opts = {});

/// Same, with G_n given as a vertex set of an explicit underlying graph.
/// Ids in the options and the result are underlying-graph ids.
OracleResult oracle_enumerate(const Graph& underlying, std::span<const vertex_t> infected, vertex_t source,
                              const OracleOptions& opts = {});

/// Oracle likelihood of every vertex of G_n.
LikelihoodProfile oracle_profile(const Graph& gn, std::span<const std::size_t> degrees, const OracleOptions& opts = {});

// ---- closed forms ----------------------------------------------------------

/// z_d(i) = (i - 1)(d - 2).
inline long z_shift(long d, long i) { return (i - 1) * (d - 2); }

/// Probability of one order of n vertices in the interior of a d-regular
/// tree: prod_{k=1}^{n-1} 1 / (dk - 2(k-1)).
Rational regular_tree_order_probability(long d, long n);

/// Probability of one order in which a single irregular vertex of
/// underlying degree d_prime is the k-th infection (2 <= k <= n).
Rational irregular_position_probability(long d, long d_prime, long n, long k);

/// Path v_1..v_n in a d-regular graph with v_n the only degree-1 vertex.
/// Rows are v_1..v_n. Throws std::domain_error for d <= 2 or n < 2.
LikelihoodProfile line_likelihood(long d, long n);

/// Path v_1..v_{2t} with k leaves of underlying degree 1 hanging from
/// v_{2t}; every path vertex has underlying degree d. Rows are v_1..v_{2t}
/// then the leaves u_1..u_k. Decomposition keys are the position of the
/// first infected leaf. Throws std::domain_error unless 1 <= k < d, t >= 1.
LikelihoodProfile broom_likelihood(long d, long t, long k);

/// Probability of one order of a unicyclic G_n in a d-regular graph whose
/// last cycle vertex is infected k-th:
/// 2 * prod_{j<k} 1/(d + z_d(j)) * prod_{k<=j<n} 1/(d + z_d(j) - 2).
Rational cyclic_position_probability(long d, long n, long k);

/// Admissible positions [d(v, C) + h, n - t_{v_l} + 1] for the last cycle
/// vertex v_l when the source is v; t_{v_l} counts v_l and the trees hanging
/// off it.
std::pair<std::size_t, std::size_t> cyclic_position_range(const Graph& gn, vertex_t v, vertex_t last_cycle_vertex);

/// Likelihood of every vertex of a unicyclic G_n whose vertices all have
/// degree d in the underlying graph. Decomposition keys are positions of
/// the last cycle vertex. Throws topology_error unless G_n is unicyclic and
/// std::invalid_argument when a G_n degree exceeds d.
LikelihoodProfile unicyclic_likelihood(const Graph& gn, long d);
LikelihoodProfile unicyclic_likelihood(const Graph& underlying, std::span<const vertex_t> infected);

/// Counts orders of the tree rooted at `root` (parents before children) by
/// the position of their last marked vertex; index 0 counts orders with no
/// marked vertex. The result has |tree| + 1 entries.
std::vector<BigInt> last_marked_position_counts(const Graph& tree, vertex_t root, std::span<const vertex_t> marked);

}  // namespace episource
