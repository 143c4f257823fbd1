#include "netdef/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "netdef/errors.hpp"
#include "netdef/rng.hpp"

namespace netdef {

void Graph::validate() const {
  if (n <= 0) throw UsageError("graph: node count must be positive");
  std::set<std::pair<int, int>> seen;
  for (const auto& [i, j] : edges) {
    if (i == j) throw UsageError("graph: self-edge at node " + std::to_string(i));
    if (i < 1 || i > n || j < 1 || j > n)
      throw UsageError("graph: edge endpoint out of range: (" + std::to_string(i) + ", " +
                       std::to_string(j) + ")");
    if (!directed && i > j)
      throw UsageError("graph: undirected edge not stored with i < j: (" + std::to_string(i) +
                       ", " + std::to_string(j) + ")");
    if (!seen.insert({i, j}).second)
      throw UsageError("graph: duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ")");
  }
}

void Placement::validate(int n) const {
  auto check_list = [n](const std::vector<int>& ids, const char* label) {
    std::set<int> seen;
    for (int id : ids) {
      if (id < 1 || id > n)
        throw PlacementError(std::string(label) + " node id out of range: " + std::to_string(id));
      if (!seen.insert(id).second)
        throw PlacementError(std::string(label) + " list contains duplicate node " +
                             std::to_string(id));
    }
  };
  check_list(defenders, "defender");
  check_list(attackers, "attacker");
  std::set<int> def(defenders.begin(), defenders.end());
  for (int a : attackers)
    if (def.count(a))
      throw PlacementError("node " + std::to_string(a) +
                           " cannot be both an attacker and a defender");
}

Graph chain(int n) {
  if (n < 2) throw UsageError("chain: need at least 2 nodes");
  Graph g;
  g.n = n;
  for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

Graph ring(int n) {
  if (n < 3) throw UsageError("ring: need at least 3 nodes");
  Graph g;
  g.n = n;
  for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
  g.edges.emplace_back(1, n);
  return g;
}

Graph layered_star(int branches, int layers) {
  if (branches < 1 || layers < 1) throw UsageError("layered_star: branches and layers must be >= 1");
  Graph g;
  g.n = 1 + branches * layers;
  // Hub is node 1; layer L occupies nodes 2 + (L-1)*branches .. 1 + L*branches,
  // and branch b threads through the same offset of each layer.
  for (int b = 1; b <= branches; ++b) {
    int prev = 1;
    for (int layer = 1; layer <= layers; ++layer) {
      const int node = 1 + (layer - 1) * branches + b;
      g.edges.emplace_back(std::min(prev, node), std::max(prev, node));
      prev = node;
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

Graph barabasi_albert(int n, int m, std::uint64_t seed) {
  if (m < 1) throw UsageError("barabasi_albert: m must be >= 1");
  if (n <= m) throw UsageError("barabasi_albert: need n > m");
  Graph g;
  g.n = n;
  std::vector<int> degree(n + 1, 0);
  // Seed graph: a single edge. Each later node attaches to m distinct
  // existing nodes drawn with probability proportional to degree.
  g.edges.emplace_back(1, 2);
  degree[1] = degree[2] = 1;
  if (n == 2) return g;
  Rng rng(seed);
  for (int v = 3; v <= n; ++v) {
    std::set<int> targets;
    const int want = std::min(m, v - 1);
    int total_degree = 0;
    for (int u = 1; u < v; ++u) total_degree += degree[u];
    while (static_cast<int>(targets.size()) < want) {
      double ticket = rng.uniform() * total_degree;
      int chosen = v - 1;
      for (int u = 1; u < v; ++u) {
        ticket -= degree[u];
        if (ticket < 0) {
          chosen = u;
          break;
        }
      }
      targets.insert(chosen);
    }
    for (int u : targets) {
      g.edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<int> node_degrees(const Graph& g) {
  std::vector<int> deg(g.n, 0);
  for (const auto& [i, j] : g.edges) {
    if (g.directed) {
      ++deg[j - 1];  // in-degree: j receives from i
    } else {
      ++deg[i - 1];
      ++deg[j - 1];
    }
  }
  return deg;
}

Matrix adjacency_matrix(const Graph& g, const AdjacencyConfig& cfg) {
  g.validate();
  if (cfg.eps < 0) throw UsageError("adjacency_matrix: eps must be nonnegative");
  const int n = g.n;
  Matrix a(n, n);
  for (const auto& [i, j] : g.edges) {
    a(j - 1, i - 1) = 1.0;  // node j receives from i
    if (!g.directed) a(i - 1, j - 1) = 1.0;
  }
  const std::vector<int> deg = node_degrees(g);
  Rng rng(cfg.seed);
  for (int i = 0; i < n; ++i) {
    const double phi = cfg.eps > 0 ? rng.uniform(0.0, cfg.eps) : 0.0;
    a(i, i) = -(deg[i] + cfg.self_loop_offset) + phi;
    if (!(a(i, i) < 0))
      throw UsageError("adjacency_matrix: diagonal entry not negative; lower eps or raise the "
                       "self-loop offset");
  }
  return a;
}

Matrix placement_matrix(int n, const std::vector<int>& nodes) {
  std::set<int> seen;
  for (int id : nodes) {
    if (id < 1 || id > n)
      throw PlacementError("placement node id out of range: " + std::to_string(id));
    if (!seen.insert(id).second)
      throw PlacementError("placement list contains duplicate node " + std::to_string(id));
  }
  Matrix p(n, nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) p(nodes[j] - 1, j) = 1.0;
  return p;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  if (source < 1 || source > g.n) throw PlacementError("bfs: source node out of range");
  std::vector<std::vector<int>> adj(g.n + 1);
  for (const auto& [i, j] : g.edges) {
    adj[i].push_back(j);
    if (!g.directed) adj[j].push_back(i);
  }
  std::vector<int> dist(g.n + 1, -1);
  std::queue<int> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
  }
  dist.erase(dist.begin());
  return dist;
}

int min_defender_distance(const Graph& g, int attacker, const std::vector<int>& defenders) {
  if (defenders.empty()) throw PlacementError("min_defender_distance: no defenders given");
  if (attacker < 1 || attacker > g.n)
    throw PlacementError("min_defender_distance: attacker node out of range");
  const std::vector<int> dist = bfs_distances(g, attacker);
  int best = -1;
  for (int d : defenders) {
    if (d < 1 || d > g.n)
      throw PlacementError("min_defender_distance: defender node out of range");
    const int dd = dist[d - 1];
    if (dd >= 0 && (best < 0 || dd < best)) best = dd;
  }
  if (best < 0)
    throw PlacementError("min_defender_distance: no defender reachable from node " +
                         std::to_string(attacker));
  return best;
}

}  // namespace netdef
