#include <algorithm>
#include <set>

#include "doctest.h"
#include "episource/estimators.hpp"
#include "episource/errors.hpp"
#include "episource/generators.hpp"
#include "episource/likelihood.hpp"
#include "fixtures.hpp"
#include "properties.hpp"
#include "random_graphs.hpp"

using namespace episource;

namespace {

std::vector<std::string> names(const Graph& g, const std::vector<vertex_t>& vs) {
  std::vector<std::string> out;
  for (vertex_t v : vs) out.push_back(g.label(v));
  return out;
}

}  // namespace

TEST_CASE("algorithm 1 on the 19-vertex tree") {
  auto [tree, irregular] = fixtures::nineteen_vertex_tree();
  auto res = algo1_kappa(tree, irregular);
  CHECK(names(tree, res.t_ml) == std::vector<std::string>{"vc", "a", "vt", "l1", "l2"});
  CHECK(names(tree, res.candidates) == std::vector<std::string>{"vc", "vt"});
  // upward messages into vc
  CHECK(res.irregular_below[*tree.find_label("a")] == 3);
  CHECK(res.irregular_below[*tree.find_label("b1")] == 2);
  CHECK(res.irregular_below[*tree.find_label("c1")] == 1);
  CHECK(res.irregular_below[*tree.find_label("vc")] == 6);
}

TEST_CASE("algorithm 1 edge cases") {
  Graph star = generate(gen::Star{5}, 0);
  auto leaves = leaf_vertices(star);
  CHECK(leaves.size() == 5);
  auto res = algo1_kappa(star, leaves);
  CHECK(res.candidates == std::vector<vertex_t>{0});
  CHECK(res.t_ml.size() == 6);

  Graph path = generate(gen::Path{7}, 0);
  auto none = algo1_kappa(path, {});
  CHECK(none.candidates == std::vector<vertex_t>{3});
  CHECK(none.t_ml == std::vector<vertex_t>{3});

  // single irregular end: kappa stays on the center-to-end path
  std::vector<vertex_t> end{6};
  auto one = algo1_kappa(path, end);
  for (vertex_t v : one.candidates) CHECK(v >= 3);
  CHECK(one.t_ml == std::vector<vertex_t>{3, 4, 5, 6});
  CHECK(one.candidates == std::vector<vertex_t>{3, 5});

  CHECK_THROWS_AS(algo1_kappa(generate(gen::Cycle{5}, 0), end), topology_error);
}

TEST_CASE("algorithm 1: t_ML is connected and kappa sits inside it") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    auto tree = testgraphs::random_tree(5 + std::uint32_t(rng() % 40), 4, rng);
    std::vector<vertex_t> irr;
    for (vertex_t v = 0; v < tree.vertex_count(); ++v)
      if (rng() % 4 == 0) irr.push_back(v);
    auto res = algo1_kappa(tree, irr);
    REQUIRE(!res.candidates.empty());
    CHECK(std::set<vertex_t>(res.candidates.begin(), res.candidates.end()).size() == res.candidates.size());
    CHECK(tree.induced_subgraph(res.t_ml).is_connected());
    for (vertex_t c : res.candidates) CHECK(std::find(res.t_ml.begin(), res.t_ml.end(), c) != res.t_ml.end());
  }
}

TEST_CASE("sct on the two-cycle graph picks v10") {
  Graph g = fixtures::two_cycle_graph();
  const vertex_t v10 = *g.find_label("v10"), v8 = *g.find_label("v8");
  auto res = sct(g);
  CHECK(names(g, res.candidates) == std::vector<std::string>{"v10"});

  std::vector<std::size_t> deg(10, 3);
  auto a = oracle_enumerate(g, deg, v10);
  auto b = oracle_enumerate(g, deg, v8);
  CHECK(a.order_count == b.order_count);
  CHECK(a.likelihood > b.likelihood);
  CHECK(oracle_profile(g, deg).argmax() == std::vector<std::size_t>{v10});
}

TEST_CASE("sct on the places cycle picks WTG") {
  Graph g = fixtures::places_cycle();
  auto res = sct(g);
  CHECK(names(g, res.candidates) == std::vector<std::string>{"WTG"});
}

TEST_CASE("sct on the six-vertex tree contains v1") {
  Graph g = fixtures::six_vertex_tree();
  auto res = sct(g);
  CHECK(std::find(res.candidates.begin(), res.candidates.end(), 0) != res.candidates.end());
}

TEST_CASE("sct with uniform weights on trees is the distance center") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto tree = testgraphs::random_tree(3 + std::uint32_t(rng() % 30), 4, rng);
    std::vector<Rational> ones(tree.vertex_count(), Rational(1));
    CHECK(statistical_distance_centrality(tree, ones).argbest == distance_centrality(tree).argbest);
  }
}

TEST_CASE("sct on disconnected input") {
  Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  auto res = sct(g);
  CHECK(res.candidates == std::vector<vertex_t>{1, 4});
  CHECK(res.warnings.size() == 1);
  CHECK_THROWS_AS(sct(g, false), topology_error);
}

TEST_CASE("top-k wrapper") {
  Graph path = generate(gen::Path{5}, 0);
  auto ec = epidemic_centrality_tree(path);
  CHECK(topk_wrapper(ec, 1).candidates == std::vector<vertex_t>{2});
  CHECK(topk_wrapper(ec, 3).candidates == std::vector<vertex_t>{2, 1, 3});
  auto all = topk_wrapper(ec, 9);
  CHECK(all.candidates.size() == 5);
  CHECK(all.warnings.size() == 1);
  CHECK_THROWS_AS(topk_wrapper(ec, 0), std::invalid_argument);

  auto dc = distance_centrality(path);  // lower is better
  CHECK(topk_wrapper(dc, 2).candidates == std::vector<vertex_t>{2, 1});
}

TEST_CASE("hop error") {
  Graph path = generate(gen::Path{6}, 0);
  std::vector<vertex_t> c{1, 4};
  CHECK(hop_error(path, c, 4) == 0);
  CHECK(hop_error(path, c, 5) == 1);
  CHECK(hop_error(path, c, 2) == 1);
  CHECK_THROWS_AS(hop_error(path, c, 9), std::invalid_argument);
  CHECK_THROWS_AS(hop_error(path, {}, 0), std::invalid_argument);
}

TEST_CASE("estimator json") {
  Graph g = fixtures::places_cycle();
  auto j = sct(g).to_json(g);
  CHECK(j["estimator"] == "sct");
  CHECK(j["candidates"] == nlohmann::json::array({"WTG"}));
  CHECK(j["scores"].size() == g.vertex_count());
}

TEST_CASE("full infection: every vertex equally likely") {
  // G_n = G is certain from any source, so the posterior is uniform 1/n.
  auto check = [](const Graph& g, const std::vector<std::size_t>& deg) {
    auto prof = oracle_profile(g, deg);
    Rational total = 0;
    for (const auto& p : prof.likelihood) {
      CHECK(p == 1);
      total += p;
    }
    for (const auto& p : prof.likelihood) CHECK(p / total == fixtures::q(1, long(g.vertex_count())));
    CHECK(prof.argmax().size() == g.vertex_count());
  };
  for (std::uint32_t h = 3; h <= 7; ++h) check(generate(gen::Cycle{h}, 0), std::vector<std::size_t>(h, 2));
  check(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), {3, 3, 3, 3});
  check(generate(gen::Star{4}, 0), {4, 1, 1, 1, 1});
  Graph grid = generate(gen::Grid{2, 4}, 0);
  std::vector<std::size_t> own;
  for (vertex_t v = 0; v < grid.vertex_count(); ++v) own.push_back(grid.degree(v));
  check(grid, own);
}

TEST_CASE("single irregular vertex: oracle maximum on the center-to-irregular path") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto tree = testgraphs::random_tree(3 + std::uint32_t(rng() % 6), 3, rng);
    vertex_t vir = vertex_t(rng() % tree.vertex_count());
    CHECK(props::argmax_on_center_path(tree, vir, 3 + rng() % 3));
  }
}

TEST_CASE("unicyclic: oracle maximum on the cycle or the center-to-cycle path") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = testgraphs::random_unicyclic(3 + std::uint32_t(rng() % 5), 3, rng);
    CHECK(props::argmax_on_cycle_or_center_path(g, 3 + rng() % 3));
  }
}

TEST_CASE("partial-sum dominance when the closer vertex has at least as many orders") {
  SplitMix64 rng(13);
  std::size_t bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto tree = testgraphs::random_tree(2 + std::uint32_t(rng() % 9), 4, rng);
    bad += props::partial_sum_violations(tree, vertex_t(rng() % tree.vertex_count()), 1);
  }
  CHECK(bad == 0);
}

TEST_CASE("partial-sum dominance fails for equidistant vertices in different branches") {
  // vir = 0; vertices 2 and 7 are both two hops away, |M(2)| = 448 > |M(7)| = 432,
  // yet 7 puts vir at position 3 in 336 orders against 280 for vertex 2.
  Graph tree = Graph::from_edges(10, std::vector<Edge>{{0, 1}, {0, 3}, {0, 5}, {1, 2}, {1, 4}, {3, 7}, {4, 6}, {4, 8}, {7, 9}});
  std::vector<vertex_t> marked{0};
  auto m2 = last_marked_position_counts(tree, 2, marked);
  auto m7 = last_marked_position_counts(tree, 7, marked);
  auto ec = epidemic_centrality_tree(tree);
  CHECK(ec.score[2] == 448);
  CHECK(ec.score[7] == 432);
  CHECK(m2[3] == 280);
  CHECK(m7[3] == 336);
  CHECK(props::partial_sum_violations(tree, 0, 1) == 0);
  CHECK(props::partial_sum_violations(tree, 0, 2) == 1);
}

TEST_CASE("order-count identity: m over positions sums to epidemic centrality") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    auto tree = testgraphs::random_tree(2 + std::uint32_t(rng() % 12), 4, rng);
    auto ec = epidemic_centrality_tree(tree);
    std::vector<vertex_t> marked{vertex_t(rng() % tree.vertex_count())};
    for (vertex_t v = 0; v < tree.vertex_count(); ++v) {
      auto m = last_marked_position_counts(tree, v, marked);
      BigInt total = 0;
      for (const auto& x : m) total += x;
      CHECK(Rational(total) == ec.score[v]);
    }
  }
}
