// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exhaustive ground truth for tiny instances: enumerate every simple
// s-to-t path, then every pairwise edge-disjoint p-subset. Returns both the
// minimum total cost and, independently, the minimum over subsets of the
// maximum single-path cost (the bottleneck objective).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "edp/graph.hpp"

namespace edp {

struct BruteForceLimits {
  int max_n = 10;
  int max_m = 20;
  std::size_t max_paths = 50000;
};

struct BruteForceResult {
  bool feasible = false;
  Cost total_cost = 0;
  Cost bottleneck_cost = 0;
};

inline BruteForceResult brute_force_disjoint(const Digraph& g, Vertex s,
                                             Vertex t, int p,
                                             BruteForceLimits limits = {}) {
  if (p < 1) throw std::invalid_argument("brute_force_disjoint: p must be >= 1");
  if (s == t) throw std::invalid_argument("brute_force_disjoint: s == t");
  if (g.num_vertices() > limits.max_n || g.num_edges() > limits.max_m ||
      g.num_edges() > 63)
    throw std::invalid_argument("brute_force_disjoint: instance too large");

  struct Path {
    std::uint64_t edge_mask;
    Cost cost;
  };
  std::vector<Path> paths;

  // Depth-first enumeration of simple paths.
  std::vector<unsigned char> on_stack(g.num_vertices(), 0);
  std::uint64_t edge_mask = 0;
  Cost cost = 0;
  auto dfs = [&](auto&& self, Vertex u) -> void {
    if (u == t) {
      if (paths.size() >= limits.max_paths)
        throw std::invalid_argument("brute_force_disjoint: too many paths");
      paths.push_back({edge_mask, cost});
      return;
    }
    on_stack[u] = 1;
    for (EdgeId e : g.out_edges(u)) {
      Vertex v = g.edge(e).head;
      if (on_stack[v]) continue;
      edge_mask |= std::uint64_t{1} << e;
      cost += g.edge(e).cost;
      self(self, v);
      edge_mask &= ~(std::uint64_t{1} << e);
      cost -= g.edge(e).cost;
    }
    on_stack[u] = 0;
  };
  dfs(dfs, s);

  BruteForceResult best;
  auto choose = [&](auto&& self, std::size_t start, int chosen,
                    std::uint64_t used, Cost sum, Cost worst) -> void {
    if (chosen == p) {
      if (!best.feasible || sum < best.total_cost) best.total_cost = sum;
      if (!best.feasible || worst < best.bottleneck_cost)
        best.bottleneck_cost = worst;
      best.feasible = true;
      return;
    }
    for (std::size_t i = start; i < paths.size(); ++i) {
      if (paths.size() - i < static_cast<std::size_t>(p - chosen)) break;
      if (paths[i].edge_mask & used) continue;
      self(self, i + 1, chosen + 1, used | paths[i].edge_mask,
           sum + paths[i].cost,
           worst > paths[i].cost ? worst : paths[i].cost);
    }
  };
  choose(choose, 0, 0, 0, 0, 0);
  return best;
}

}  // namespace edp
