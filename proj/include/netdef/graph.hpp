#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netdef/matrix.hpp"

namespace netdef {

// Node/edge structure with 1-based node ids. Undirected graphs store
// each edge once as (i, j) with i < j; directed edges are (from, to).
// No self-edges; stabilizing self-loops enter only at matrix build time.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  bool directed = false;

  void validate() const;
};

// Ordered defender/attacker node lists. No duplicates within a list and
// no node may serve on both sides.
struct Placement {
  std::vector<int> defenders;
  std::vector<int> attackers;

  void validate(int n) const;
};

// Rules for building the state matrix from a graph: self-loop strength
// -(deg + self_loop_offset), plus uniform diagonal noise in [0, eps].
struct AdjacencyConfig {
  double self_loop_offset = 1.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
};

Graph chain(int n);
Graph ring(int n);
Graph layered_star(int branches, int layers);
Graph barabasi_albert(int n, int m, std::uint64_t seed);

// In-degree for directed graphs, plain degree otherwise (1-based ids in,
// index 0 unused-free: result[i] is the degree of node i+1).
std::vector<int> node_degrees(const Graph& g);

Matrix adjacency_matrix(const Graph& g, const AdjacencyConfig& cfg);

// Columns are standard basis vectors selecting `nodes` (1-based).
Matrix placement_matrix(int n, const std::vector<int>& nodes);

// BFS distances from `source`; -1 marks unreachable nodes. For directed
// graphs the search follows edge direction.
std::vector<int> bfs_distances(const Graph& g, int source);

// Minimum shortest-path distance from the attacked node to any defender.
int min_defender_distance(const Graph& g, int attacker, const std::vector<int>& defenders);

}  // namespace netdef
