#include "sparsegraph/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sg {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges, std::vector<int> types) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  if (!types.empty() && static_cast<int>(types.size()) != n)
    throw std::invalid_argument("graph: wrong number of type annotations");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: loop edge");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.types = std::move(types);
  return g;
}

std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::pair<int, int>> edges = a.edges;
  for (auto [u, v] : b.edges) edges.push_back({u + a.n, v + a.n});
  std::vector<int> types;
  if (!a.types.empty() || !b.types.empty()) {
    types = a.types.empty() ? std::vector<int>(a.n, 0) : a.types;
    auto bt = b.types.empty() ? std::vector<int>(b.n, 0) : b.types;
    types.insert(types.end(), bt.begin(), bt.end());
  }
  return make_graph(a.n + b.n, std::move(edges), std::move(types));
}

std::vector<int> components(const Graph& g) {
  auto adj = adjacency_lists(g);
  std::vector<int> comp(g.n, -1);
  std::vector<int> stack;
  int next = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

std::size_t largest_component_size(const Graph& g) {
  auto comp = components(g);
  std::vector<std::size_t> count;
  for (int c : comp) {
    if (c >= static_cast<int>(count.size())) count.resize(c + 1, 0);
    ++count[c];
  }
  std::size_t best = 0;
  for (auto c : count) best = std::max(best, c);
  return best;
}

Graph simplified(const Multigraph& m) {
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : m.edges) {
    if (u == v) continue;
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return make_graph(m.n, std::move(edges));
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.n << "\n";
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
  if (!g.types.empty()) {
    os << "#types:";
    for (int t : g.types) os << " " << t;
    os << "\n";
  }
  return os.str();
}

Graph read_edge_list(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> types;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#types:", 0) == 0) {
        std::istringstream ts(line.substr(7));
        int t;
        while (ts >> t) types.push_back(t);
      }
      continue;
    }
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n)) throw std::invalid_argument("edge list: bad header line");
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad edge line: " + line);
    edges.push_back({u, v});
  }
  if (n < 0) throw std::invalid_argument("edge list: missing vertex count");
  return make_graph(n, std::move(edges), std::move(types));
}

}  // namespace sg
