#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sg {

// Simple undirected graph on vertices 0..n-1; edges are stored as ordered
// pairs (u < v), sorted and duplicate-free.  `types` is empty or one small
// integer annotation per vertex (planted parts, sampled kernel types, ...).
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> types;
};

Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<int> types = {});

std::vector<std::vector<int>> adjacency_lists(const Graph& g);

Graph disjoint_union(const Graph& a, const Graph& b);

// Component id per vertex, ids numbered by first vertex seen.
std::vector<int> components(const Graph& g);

std::size_t largest_component_size(const Graph& g);

// Intermediate multigraph state (loops u==v and parallel edges allowed).
struct Multigraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Drops loops and collapses parallel edges.
Graph simplified(const Multigraph& m);

// Text format: first line the vertex count, one "u v" line per edge, and an
// optional trailing "#types: t0 t1 ..." line carrying the annotations.
std::string write_edge_list(const Graph& g);
Graph read_edge_list(const std::string& text);

}  // namespace sg
