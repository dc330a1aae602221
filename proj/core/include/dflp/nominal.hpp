#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dflp/lp.hpp"

namespace dflp {

enum class ProblemKind { ShortestPathGrid, BipartiteMatching, Custom };

/// A nominal decision problem: the feasible polytope plus the graph metadata
/// that fixes the coordinate order of decision and cost vectors. The
/// polytope's objective is left at zero; costs arrive per sample.
struct NominalProblem {
  ProblemKind kind = ProblemKind::Custom;
  LPProblem polytope;
  std::vector<std::pair<int, int>> edges;  // (tail, head); right nodes offset by n_left
  int n_nodes = 0;
  bool negated_weights = false;  // max-weight problems store costs negated

  int grid_rows = 0, grid_cols = 0;
  int n_left = 0, n_right = 0;
  std::uint64_t seed = 0;

  int n_arcs() const { return static_cast<int>(edges.size()); }
  int n_costs() const { return polytope.n_vars; }
};

/// Directed acyclic grid with east and south arcs, unit flow from the
/// north-west corner to the south-east corner. Conservation rows are emitted
/// as >= rows: they sum to zero against the supply vector, so every feasible
/// point satisfies them with equality and the polytope is the exact unit-flow
/// polytope with one dual per node.
NominalProblem grid_shortest_path(int rows, int cols);

/// Degree-constrained bipartite relaxation with n_edges edges sampled
/// uniformly without replacement. Weights are handled as negated costs so the
/// maximum-weight matching is the minimizer; negated_weights records this.
NominalProblem bipartite_matching(int n_left, int n_right, int n_edges,
                                  std::uint64_t seed);

}  // namespace dflp
