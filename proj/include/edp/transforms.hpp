// SPDX-License-Identifier: Apache-2.0
#pragma once

// Graph reductions used when the input graph is not p-edge-outconnected or
// when paths must be vertex-disjoint rather than edge-disjoint:
//   - dummy-vertex augmentation: p extra hub vertices joined to everything
//     at a cost larger than all original edges together, forcing
//     p-outconnectivity without disturbing any cheap optimum;
//   - sigma extraction: reading off, per target, the largest level whose
//     cost stays below the big cost, i.e. min(p, max disjoint paths);
//   - preserver stripping: dropping every dummy-incident edge;
//   - vertex splitting: the v-/v+ gadget that turns vertex-disjointness
//     into edge-disjointness.

#include <limits>
#include <stdexcept>
#include <vector>

#include "edp/graph.hpp"
#include "edp/ssp.hpp"
#include "edp/verify.hpp"

namespace edp {

struct AugmentedGraph {
  Digraph graph;                  // original edges first, ids preserved
  std::vector<Vertex> dummies;
  Cost big_cost = 0;              // M, strictly above total original cost
  Vertex base_vertex_count = 0;
  EdgeId base_edge_count = 0;
  std::vector<EdgeId> origin;     // per edge: base edge id, or kNoEdge

  bool is_dummy_edge(EdgeId e) const { return origin[e] == kNoEdge; }
};

inline AugmentedGraph augment_with_dummies(const Digraph& g, Vertex s, int p) {
  const Vertex n = g.num_vertices();
  if (p < 1) throw std::invalid_argument("augment_with_dummies: p must be >= 1");
  if (p >= n)
    throw std::invalid_argument("augment_with_dummies: p must be < n");
  Cost total = g.total_cost();
  if (total > std::numeric_limits<Cost>::max() / (4 * (static_cast<Cost>(p) + 2)))
    throw std::invalid_argument("augment_with_dummies: costs too large");
  const Cost big = total + 1;

  AugmentedGraph aug;
  aug.big_cost = big;
  aug.base_vertex_count = n;
  aug.base_edge_count = g.num_edges();

  std::vector<EdgeRecord> edges = g.edges();
  aug.origin.resize(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) aug.origin[e] = e;

  for (int k = 0; k < p; ++k) aug.dummies.push_back(n + k);
  auto add = [&](Vertex u, Vertex v) {
    edges.push_back({u, v, big});
    aug.origin.push_back(kNoEdge);
  };
  for (Vertex a : aug.dummies)
    for (Vertex b : aug.dummies)
      if (a != b) add(a, b);
  for (Vertex a : aug.dummies) add(s, a);
  for (Vertex a : aug.dummies)
    for (Vertex v = 0; v < n; ++v)
      if (v != s) add(a, v);

  aug.graph = Digraph(n + p, std::move(edges));
  return aug;
}

struct SigmaSolution {
  int sigma = 0;
  EdgeSet solution;  // on base-graph edge ids
};

// sigma = largest level whose cost is below M. Such a level cannot contain
// any dummy edge, so mapping through the origin is a plain restriction.
// sigma = 0 (target unreachable in the base graph) yields an empty set.
inline SigmaSolution extract_sigma(const FlowSolution& levels,
                                   const AugmentedGraph& aug) {
  SigmaSolution out;
  out.solution = EdgeSet(aug.base_edge_count);
  for (int i = levels.reached(); i >= 1; --i) {
    if (levels.levels[i - 1].total_cost < aug.big_cost) {
      out.sigma = i;
      for (EdgeId e : levels.levels[i - 1].edges.members()) {
        if (aug.is_dummy_edge(e))
          throw InternalError("cheap flow level contains a dummy edge");
        out.solution.insert(aug.origin[e]);
      }
      break;
    }
  }
  return out;
}

inline EdgeSet strip_dummies(const EdgeSet& preserver,
                             const AugmentedGraph& aug) {
  EdgeSet out(aug.base_edge_count);
  for (EdgeId e : preserver.members())
    if (!aug.is_dummy_edge(e)) out.insert(aug.origin[e]);
  return out;
}

struct SplitGraph {
  Digraph graph;
  Vertex base_vertex_count = 0;
  EdgeId base_edge_count = 0;
  std::vector<EdgeId> origin;  // per edge: base edge id, or kNoEdge (gadget)

  // Entry / exit copy of a base vertex.
  Vertex v_in(Vertex v) const { return 2 * v; }
  Vertex v_out(Vertex v) const { return 2 * v + 1; }
  bool is_gadget_edge(EdgeId e) const { return origin[e] == kNoEdge; }
};

// Each vertex v becomes v- -> v+ with a zero-cost gadget edge (ids 0..n-1);
// each base edge (u,v) becomes (u+, v-) with its original cost. Solving from
// s+ to t- then yields internally vertex-disjoint paths in the base graph.
inline SplitGraph split_vertices(const Digraph& g) {
  const Vertex n = g.num_vertices();
  SplitGraph sg;
  sg.base_vertex_count = n;
  sg.base_edge_count = g.num_edges();

  std::vector<EdgeRecord> edges;
  edges.reserve(n + g.num_edges());
  for (Vertex v = 0; v < n; ++v) {
    edges.push_back({sg.v_in(v), sg.v_out(v), 0});
    sg.origin.push_back(kNoEdge);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const EdgeRecord& r = g.edge(e);
    edges.push_back({sg.v_out(r.tail), sg.v_in(r.head), r.cost});
    sg.origin.push_back(e);
  }
  sg.graph = Digraph(2 * n, std::move(edges));
  return sg;
}

inline EdgeSet map_solution_back(const EdgeSet& on_split,
                                 const SplitGraph& sg) {
  EdgeSet out(sg.base_edge_count);
  for (EdgeId e : on_split.members())
    if (!sg.is_gadget_edge(e)) out.insert(sg.origin[e]);
  return out;
}

struct BottleneckReport {
  Cost total_cost = 0;
  Cost max_path_cost = 0;  // over the deterministic decomposition
};

// Total cost and worst single-path cost of a p-path solution. Because the
// total is minimal, the worst path is within a factor p of the optimal
// bottleneck value.
inline BottleneckReport bottleneck_report(const Digraph& g,
                                          const EdgeSet& solution, Vertex s,
                                          Vertex t, int p) {
  Decomposition dec = decompose(g, solution, s, t, p);
  BottleneckReport rep;
  rep.total_cost = solution.total_cost(g);
  for (const std::vector<EdgeId>& path : dec.path_edges) {
    Cost c = 0;
    for (EdgeId e : path) c += g.edge(e).cost;
    if (c > rep.max_path_cost) rep.max_path_cost = c;
  }
  return rep;
}

}  // namespace edp
