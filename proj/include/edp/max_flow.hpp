// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <queue>
#include <vector>

#include "edp/graph.hpp"

namespace edp {

// Maximum number of edge-disjoint s-to-t paths: unit-capacity max-flow via
// BFS augmenting paths. A non-negative `limit` stops early once that many
// paths are found. For t == s the value is n-1 by convention (capped by
// `limit`); callers never rely on it.
inline int max_disjoint_paths(const Digraph& g, Vertex s, Vertex t,
                              int limit = -1) {
  const Vertex n = g.num_vertices();
  if (s == t) {
    int v = n - 1;
    return limit >= 0 && limit < v ? limit : v;
  }
  std::vector<unsigned char> used(g.num_edges(), 0);
  std::vector<OrientedEdge> pred(n);
  std::vector<unsigned char> seen(n, 0);
  int flow = 0;

  while (limit < 0 || flow < limit) {
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = 1;
    bool reached = false;
    while (!q.empty() && !reached) {
      Vertex u = q.front();
      q.pop();
      for (EdgeId e : g.out_edges(u)) {
        Vertex v = g.edge(e).head;
        if (!used[e] && !seen[v]) {
          seen[v] = 1;
          pred[v] = {e, true};
          if (v == t) { reached = true; break; }
          q.push(v);
        }
      }
      if (reached) break;
      for (EdgeId e : g.in_edges(u)) {
        Vertex v = g.edge(e).tail;  // traverse a used edge backwards
        if (used[e] && !seen[v]) {
          seen[v] = 1;
          pred[v] = {e, false};
          if (v == t) { reached = true; break; }
          q.push(v);
        }
      }
    }
    if (!reached) break;
    for (Vertex v = t; v != s;) {
      OrientedEdge oe = pred[v];
      used[oe.edge] = oe.forward ? 1 : 0;
      v = tail_of(g, oe);
    }
    ++flow;
  }
  return flow;
}

}  // namespace edp
