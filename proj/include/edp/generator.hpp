// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "edp/graph.hpp"

namespace edp {

// Random digraph guaranteed p-edge-outconnected from vertex 0: the union of
// p random spanning arborescences rooted at 0 (each contributes one
// s-to-t path per target, and the arborescences are edge-disjoint as edge
// sets), plus `extra_edges` uniform random edges. When choosing a parent for
// a vertex, parents already used by earlier arborescences are avoided where
// possible so that parallel duplicates only appear when forced.
// Deterministic for a fixed seed.
inline Digraph generate_outconnected(int n, int p, int extra_edges,
                                     Cost max_cost, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_outconnected: n must be >= 2");
  if (p < 1) throw std::invalid_argument("generate_outconnected: p must be >= 1");
  if (p > n - 1)
    throw std::invalid_argument("generate_outconnected: p must be <= n-1");
  if (extra_edges < 0)
    throw std::invalid_argument("generate_outconnected: extra_edges must be >= 0");
  if (max_cost < 0)
    throw std::invalid_argument("generate_outconnected: max_cost must be >= 0");

  std::mt19937_64 rng(seed);
  auto rand_cost = [&]() -> Cost {
    return static_cast<Cost>(rng() % static_cast<std::uint64_t>(max_cost + 1));
  };

  std::vector<EdgeRecord> edges;
  edges.reserve(static_cast<std::size_t>(p) * (n - 1) + extra_edges);
  std::vector<std::vector<Vertex>> used_parents(n);

  for (int k = 0; k < p; ++k) {
    std::vector<Vertex> order(n - 1);
    for (int v = 1; v < n; ++v) order[v - 1] = v;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Vertex> added = {0};
    std::vector<Vertex> candidates;
    for (Vertex v : order) {
      candidates.clear();
      for (Vertex u : added) {
        bool used = std::find(used_parents[v].begin(), used_parents[v].end(),
                              u) != used_parents[v].end();
        if (!used) candidates.push_back(u);
      }
      const std::vector<Vertex>& pool = candidates.empty() ? added : candidates;
      Vertex parent = pool[rng() % pool.size()];
      edges.push_back({parent, v, rand_cost()});
      used_parents[v].push_back(parent);
      added.push_back(v);
    }
  }

  for (int i = 0; i < extra_edges; ++i) {
    Vertex u = static_cast<Vertex>(rng() % n);
    Vertex v = static_cast<Vertex>(rng() % (n - 1));
    if (v >= u) ++v;  // any pair with u != v
    edges.push_back({u, v, rand_cost()});
  }

  return Digraph(n, std::move(edges));
}

}  // namespace edp
