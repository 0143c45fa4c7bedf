#pragma once

#include <string>
#include <vector>

#include "sparsegraph/graph.hpp"

namespace sg {

// Induced subgraph within graph distance `radius` of a root, in local ids.
// Local id 0 is always the root and `dist` is the distance from it.
struct Ball {
  std::vector<std::vector<int>> adj;
  std::vector<int> vertex;  // local id -> original vertex
  std::vector<int> dist;
  int radius = 0;
};

Ball extract_ball(const std::vector<std::vector<int>>& adj, int root, int radius);

// Canonical code of a rooted tree: "(" label children ")" with the child
// codes sorted.  Labels must not contain parentheses; an empty label vector
// means unlabeled.  Equal codes iff label-preserving rooted isomorphism.
std::string rooted_tree_code(const std::vector<std::vector<int>>& adj, int root,
                             const std::vector<std::string>* labels = nullptr);

// Canonical code of a small connected rooted graph ("g!..." form), computed
// by colour refinement plus individualization backtracking.  When the stable
// colouring leaves too many symmetric orderings the code degrades to an
// isomorphism-invariant certificate ("w!..." form); the choice depends only
// on the isomorphism class, so equal inputs always yield equal codes.
std::string rooted_graph_code(const std::vector<std::vector<int>>& adj, int root,
                              const std::vector<std::string>* labels = nullptr);

// Tree code when the ball is a tree, graph canonical form otherwise.
std::string ball_code(const Ball& ball, const std::vector<std::string>* labels = nullptr);

// Canonical code of an unrooted tree: rooted code at the tree's centre (or
// the smaller of the two codes when the centre is an edge).
std::string free_tree_code(const std::vector<std::vector<int>>& adj);

}  // namespace sg
