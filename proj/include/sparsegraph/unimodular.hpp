#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sparsegraph/graph.hpp"
#include "sparsegraph/rational.hpp"

namespace sg {

// Quasi-transitive tree description: a[i][j] = number of type-j neighbours of
// a type-i vertex.
struct QtSpec {
  std::vector<std::vector<int>> a;
};

QtSpec make_qt_spec(std::vector<std::vector<int>> a);

// Collapse equivalent types by partition refinement; the map sends old type
// indices to rows of the canonical spec.
std::pair<QtSpec, std::vector<int>> canonical_qt_spec(const QtSpec& spec);
bool qt_spec_equal(const QtSpec& s1, const QtSpec& s2);

struct RootedGraph {
  Graph graph;
  int root = 0;
  std::vector<int> parent;  // tree annotation, -1 when absent
  int horizon = -1;         // balls trusted to this radius; -1 = complete
};

RootedGraph build_qt_tree(const QtSpec& spec, int root_type, int depth);
RootedGraph grandmother_graph(int depth);

// One support point of a law over rooted graphs: either a quasi-transitive
// tree given by (spec, root type) or an explicit finite rooted graph.
struct LawAtom {
  bool is_qt = false;
  QtSpec spec;
  int root_type = 0;
  Graph graph;
  int root = 0;
  std::vector<int> parent;
  int horizon = -1;
  bool coloured = false;  // graph.types feed the canonical codes when set
};

LawAtom make_atom(const RootedGraph& rg);

struct FiniteSupportLaw {
  std::vector<LawAtom> support;
  std::vector<Rat> weights;
};

FiniteSupportLaw point_mass(LawAtom atom);
FiniteSupportLaw qt_law(const QtSpec& spec, const std::vector<Rat>& weights);
FiniteSupportLaw law_from_unrooted_tree(const Graph& tree);
FiniteSupportLaw empirical_ball_law(const Graph& g, int depth,
                                    const std::vector<int>* colouring = nullptr);

bool laws_equal(const FiniteSupportLaw& a, const FiniteSupportLaw& b);

// Isomorphism-invariant indicator rule over doubly-rooted balls, keyed on
// canonical codes.
struct LocalRule {
  int radius = 1;
  bool accept_all = false;
  std::set<std::string> accepted;
};

std::string doubly_rooted_code(const std::vector<std::vector<int>>& adj,
                               const std::vector<int>* colours, int x, int y,
                               int radius);

// Predicate sees the materialized support graph with its annotations.
using PairPredicate = std::function<bool(
    const Graph& g, const std::vector<int>& parent, int x, int y)>;

LocalRule rule_from_predicate(const FiniteSupportLaw& pi, int radius,
                              const PairPredicate& pred);

struct InvolutionResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool invariant = false;
};

InvolutionResult involution_check(const FiniteSupportLaw& pi,
                                  const LocalRule& rule, double tol = 1e-9);

struct Violation {
  LocalRule rule;
  double lhs = 0.0;
  double rhs = 0.0;
};

std::vector<Violation> scan_violations(const FiniteSupportLaw& pi,
                                       int max_radius, double tol = 1e-9);

// Root-size-biased law and the uniform-neighbour re-rooting of it.
std::pair<FiniteSupportLaw, FiniteSupportLaw> size_biased_shift(
    const FiniteSupportLaw& pi);

}  // namespace sg
