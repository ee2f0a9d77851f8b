// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small hand-checkable fixtures shared across the test suites.

#include <vector>

#include "edp/graph.hpp"

namespace edp::testing {

// d1: vertices {0=s, 1, 2, 3}, edges
//   e0: 0->1 cost 1   e1: 1->3 cost 3   e2: 0->2 cost 3
//   e3: 2->3 cost 1   e4: 1->2 cost 1
// Routes to 3: 0-1-3 (4), 0-1-2-3 (3), 0-2-3 (4). The only edge-disjoint
// pair is {0-1-3, 0-2-3} at total cost 8. Vertex 1 has in-degree 1, so the
// graph is not 2-edge-outconnected.
inline Digraph make_d1() {
  return Digraph(4, {{0, 1, 1}, {1, 3, 3}, {0, 2, 3}, {2, 3, 1}, {1, 2, 1}});
}

// d2 = d1 plus e5: 2->1 cost 5, which makes every vertex 2-edge-outconnected
// from 0. Optimal 2-disjoint totals: t=1: 9, t=2: 5, t=3: 8.
inline Digraph make_d2() {
  return Digraph(4, {{0, 1, 1}, {1, 3, 3}, {0, 2, 3}, {2, 3, 1}, {1, 2, 1},
                     {2, 1, 5}});
}

// Two cheap edge-disjoint routes to 4 share vertex 3 (via parallel 3->4
// edges); the only way to avoid sharing it is the costly direct edge 0->4.
// Edge-disjoint optimum 4, vertex-disjoint optimum 12.
inline Digraph make_shared_vertex_witness() {
  return Digraph(5, {{0, 1, 1},    // e0
                     {1, 3, 0},    // e1
                     {0, 2, 1},    // e2
                     {2, 3, 0},    // e3
                     {3, 4, 1},    // e4
                     {3, 4, 1},    // e5, parallel to e4
                     {0, 4, 10}}); // e6
}

inline EdgeSet make_set(const Digraph& g, std::vector<EdgeId> ids) {
  EdgeSet s(g.num_edges());
  for (EdgeId e : ids) s.insert(e);
  return s;
}

}  // namespace edp::testing
