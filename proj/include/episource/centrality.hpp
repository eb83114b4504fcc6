#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "episource/graph.hpp"
#include "episource/numeric.hpp"

namespace episource {

enum class CentralityKind { epidemic, distance, jordan, sdc, bfs_rumor };

std::string to_string(CentralityKind kind);

struct CentralityScores {
  CentralityKind kind = CentralityKind::epidemic;
  std::vector<Rational> score;
  // Every vertex attaining the best score: the maximum for epidemic and BFS
  // rumor centrality, the minimum otherwise. Ascending ids.
  std::vector<vertex_t> argbest;

  bool higher_is_better() const { return kind == CentralityKind::epidemic || kind == CentralityKind::bfs_rumor; }
};

/// |M(v, T)| = n! / prod of subtree sizes, for every vertex of a tree, by
/// one rooted pass and a root shift. Throws topology_error for non-trees.
CentralityScores epidemic_centrality_tree(const Graph& tree);

/// |M(v, G_n)| summed over the h spanning trees of a unicyclic graph.
CentralityScores epidemic_centrality_unicyclic(const Graph& g);

enum class CenterCertificate { component_condition, cycle_ratio };

struct EpidemicCenter {
  vertex_t vertex = no_vertex;
  CenterCertificate certificate = CenterCertificate::component_condition;
  // cycle_ratio only: |M(v_i, G_n)| for the cycle vertices, in cycle order.
  std::vector<vertex_t> cycle;
  std::vector<Rational> cycle_scores;
};

/// Epidemic center of a unicyclic graph. First looks for a vertex whose
/// removal leaves components of size <= n/2; otherwise compares the cycle
/// vertices through the spanning-tree ratio table anchored at one computed
/// |M(v_1, T_1)|. Ties go to the smallest id.
EpidemicCenter locate_epidemic_center_unicyclic(const Graph& g);

/// Sum of hop distances. Throws topology_error when disconnected.
CentralityScores distance_centrality(const Graph& g);

/// Eccentricity. Throws topology_error when disconnected.
CentralityScores jordan_centrality(const Graph& g);

/// w_v = C(v) / (C(v) + 1) with C(v) the size of the smallest cycle through
/// v: leaves get 1/2, vertices on no cycle get 1.
std::vector<Rational> sdc_weights(const Graph& g, const CycleInfo& cycles);

/// SDC(v) = sum_u w_u d(v, u). Exact; minimum is best. Throws
/// topology_error when disconnected and std::invalid_argument for
/// non-positive weights.
CentralityScores statistical_distance_centrality(const Graph& g, const std::vector<Rational>& weights);

/// Epidemic centrality of each vertex on the BFS tree rooted at it.
CentralityScores bfs_rumor_centrality(const Graph& g);

/// `vertex,score,is_argbest` rows; scores print exactly when integral.
void write_scores_csv(std::ostream& out, const Graph& g, const CentralityScores& scores);

}  // namespace episource
