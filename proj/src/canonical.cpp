#include "sparsegraph/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sg {

namespace {

void check_labels(const std::vector<std::string>* labels, size_t n, const char* what) {
  if (!labels) return;
  if (labels->size() != n)
    throw std::invalid_argument(std::string(what) + ": wrong number of labels");
  for (const auto& s : *labels)
    if (s.find_first_of("()!") != std::string::npos)
      throw std::invalid_argument(std::string(what) + ": label contains a reserved character");
}

size_t edge_count(const std::vector<std::vector<int>>& adj) {
  size_t deg = 0;
  for (const auto& a : adj) deg += a.size();
  return deg / 2;
}

}  // namespace

Ball extract_ball(const std::vector<std::vector<int>>& adj, int root, int radius) {
  const int n = static_cast<int>(adj.size());
  if (root < 0 || root >= n) throw std::invalid_argument("extract_ball: bad root");
  if (radius < 0) throw std::invalid_argument("extract_ball: negative radius");

  Ball ball;
  ball.radius = radius;
  std::vector<int> local(n, -1);
  local[root] = 0;
  ball.vertex.push_back(root);
  ball.dist.push_back(0);
  size_t head = 0;
  while (head < ball.vertex.size()) {
    int v = ball.vertex[head];
    int d = ball.dist[head];
    ++head;
    if (d == radius) continue;
    for (int w : adj[v]) {
      if (local[w] >= 0) continue;
      local[w] = static_cast<int>(ball.vertex.size());
      ball.vertex.push_back(w);
      ball.dist.push_back(d + 1);
    }
  }
  ball.adj.resize(ball.vertex.size());
  for (size_t i = 0; i < ball.vertex.size(); ++i) {
    for (int w : adj[ball.vertex[i]])
      if (local[w] >= 0) ball.adj[i].push_back(local[w]);
    std::sort(ball.adj[i].begin(), ball.adj[i].end());
  }
  return ball;
}

std::string rooted_tree_code(const std::vector<std::vector<int>>& adj, int root,
                             const std::vector<std::string>* labels) {
  const int n = static_cast<int>(adj.size());
  if (root < 0 || root >= n) throw std::invalid_argument("tree code: bad root");
  check_labels(labels, adj.size(), "tree code");
  if (edge_count(adj) != static_cast<size_t>(n) - 1)
    throw std::invalid_argument("tree code: input is not a tree");

  // Recursive code with sorted child codes; parent tracked to orient edges.
  auto rec = [&](auto&& self, int v, int parent) -> std::string {
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(self(self, w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    if (labels) out += (*labels)[v];
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
  };
  std::string code = rec(rec, root, -1);

  // A tree reaches every vertex; a mismatch means the graph was disconnected.
  size_t seen = 1;
  for (char c : code)
    if (c == '(') ++seen;
  if (seen != static_cast<size_t>(n) + 1)
    throw std::invalid_argument("tree code: root does not reach every vertex");
  return code;
}

namespace {

// Colour refinement state shared by the canonizer.
struct Refiner {
  const std::vector<std::vector<int>>& adj;
  long budget;  // refine steps left before degrading to a certificate

  // Re-ranks colours by (colour, sorted neighbour colours) until stable.
  // Returns false if the budget ran out.
  bool refine(std::vector<int>& colour) {
    const int n = static_cast<int>(adj.size());
    for (;;) {
      if (--budget < 0) return false;
      std::vector<std::pair<std::vector<int>, int>> sig(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> s;
        s.reserve(adj[v].size() + 1);
        s.push_back(colour[v]);
        for (int w : adj[v]) s.push_back(colour[w]);
        std::sort(s.begin() + 1, s.end());
        sig[v] = {std::move(s), v};
      }
      auto order = sig;
      std::sort(order.begin(), order.end());
      std::vector<int> next(n);
      int rank = -1;
      for (int i = 0; i < n; ++i) {
        if (i == 0 || order[i].first != order[i - 1].first) ++rank;
        next[order[i].second] = rank;
      }
      if (next == colour) return true;
      colour = std::move(next);
    }
  }
};

std::string emit_graph_code(const std::vector<std::vector<int>>& adj,
                            const std::vector<int>& order,
                            const std::vector<std::string>* labels) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::vector<char>> bit(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) bit[pos[v]][pos[w]] = 1;
  std::string code = "g!" + std::to_string(n) + "!";
  if (labels) {
    for (int i = 0; i < n; ++i) {
      if (i) code += ",";
      code += (*labels)[order[i]];
    }
  }
  code += "!";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) code += bit[i][j] ? '1' : '0';
  return code;
}

}  // namespace

std::string rooted_graph_code(const std::vector<std::vector<int>>& adj, int root,
                              const std::vector<std::string>* labels) {
  const int n = static_cast<int>(adj.size());
  if (root < 0 || root >= n) throw std::invalid_argument("graph code: bad root");
  check_labels(labels, adj.size(), "graph code");

  // Distance layers from the root; also validates connectivity.
  std::vector<int> dist(n, -1);
  dist[root] = 0;
  std::vector<int> queue{root};
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  for (int d : dist)
    if (d < 0) throw std::invalid_argument("graph code: root does not reach every vertex");

  // Initial colours: (distance, label, degree), ranked canonically.
  std::vector<std::pair<std::tuple<int, std::string, size_t>, int>> init(n);
  for (int v = 0; v < n; ++v)
    init[v] = {{dist[v], labels ? (*labels)[v] : std::string(), adj[v].size()}, v};
  std::sort(init.begin(), init.end());
  std::vector<int> colour(n);
  {
    int rank = -1;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || init[i].first != init[i - 1].first) ++rank;
      colour[init[i].second] = rank;
    }
  }

  Refiner refiner{adj, 200000};
  bool within_budget = refiner.refine(colour);

  auto cells_of = [&](const std::vector<int>& col) {
    int ncol = *std::max_element(col.begin(), col.end()) + 1;
    std::vector<std::vector<int>> cells(ncol);
    for (int v = 0; v < n; ++v) cells[col[v]].push_back(v);
    return cells;
  };

  // Invariant certificate: per-cell (distance, label, degree, size) plus
  // edge counts between cells.  Used when exact canonization is too big.
  auto certificate = [&](const std::vector<int>& col) {
    auto cells = cells_of(col);
    std::ostringstream os;
    os << "w!" << n << "!";
    for (size_t c = 0; c < cells.size(); ++c) {
      int v = cells[c][0];
      os << "[" << dist[v] << ":" << (labels ? (*labels)[v] : std::string()) << ":"
         << adj[v].size() << ":" << cells[c].size() << "]";
    }
    os << "!";
    std::map<std::pair<int, int>, long> between;
    for (int v = 0; v < n; ++v)
      for (int w : adj[v])
        if (col[v] <= col[w]) ++between[{col[v], col[w]}];
    for (auto& [key, cnt] : between)
      os << key.first << "-" << key.second << ":" << cnt << ";";
    return os.str();
  };

  if (!within_budget) return certificate(colour);

  {
    auto cells = cells_of(colour);
    double product = 1;
    for (const auto& c : cells) {
      for (size_t i = 2; i <= c.size(); ++i) product *= static_cast<double>(i);
      if (product > 1e5) return certificate(colour);
    }
  }

  // Individualization-refinement search for the minimal code.
  std::string best;
  bool degraded = false;
  auto search = [&](auto&& self, std::vector<int> col) -> void {
    if (degraded) return;
    auto cells = cells_of(col);
    const std::vector<int>* target = nullptr;
    for (const auto& c : cells)
      if (c.size() > 1) {
        target = &c;
        break;
      }
    if (!target) {
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[col[v]] = v;
      std::string code = emit_graph_code(adj, order, labels);
      if (best.empty() || code < best) best = std::move(code);
      return;
    }
    for (int v : *target) {
      std::vector<int> next(n);
      for (int u = 0; u < n; ++u) next[u] = 2 * col[u] + (u == v ? 0 : 1);
      Refiner sub{adj, refiner.budget};
      if (!sub.refine(next)) {
        degraded = true;
        return;
      }
      refiner.budget = sub.budget;
      self(self, std::move(next));
    }
  };
  search(search, colour);
  if (degraded || best.empty()) return certificate(colour);
  return best;
}

std::string ball_code(const Ball& ball, const std::vector<std::string>* labels) {
  if (edge_count(ball.adj) == ball.adj.size() - 1)
    return rooted_tree_code(ball.adj, 0, labels);
  return rooted_graph_code(ball.adj, 0, labels);
}

std::string free_tree_code(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) throw std::invalid_argument("free tree code: empty graph");
  if (edge_count(adj) != static_cast<size_t>(n) - 1)
    throw std::invalid_argument("free tree code: input is not a tree");

  // Peel leaves layer by layer; the last one or two vertices are the centre.
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());
  std::vector<int> frontier, alive(n, 1);
  int remaining = n;
  for (int v = 0; v < n; ++v)
    if (degree[v] <= 1) frontier.push_back(v);
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : frontier) {
      alive[v] = 0;
      --remaining;
      for (int w : adj[v])
        if (alive[w] && --degree[w] == 1) next.push_back(w);
    }
    frontier = std::move(next);
  }
  std::string best;
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    std::string code = rooted_tree_code(adj, v);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

}  // namespace sg
