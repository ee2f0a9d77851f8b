// SPDX-License-Identifier: Apache-2.0
#pragma once

// Successive shortest paths per single target, in two independent
// implementations used to cross-validate each other and the preserver
// engine:
//   ssp_reference — Bellman-Ford on the residual graph (costs may be
//                   negative but no negative cycles exist);
//   ssp_fast      — Dijkstra with per-round vertex potentials (the previous
//                   round's distances) so every residual reduced cost is
//                   non-negative.
// Both augment one unit of flow at a time along a residual shortest path
// and maintain the invariant that level i is exactly the edge set of i
// edge-disjoint minimum-total-cost paths. Shortest paths here are by plain
// cost with arbitrary tie-breaking; cost totals are tie-independent.

#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "edp/graph.hpp"

namespace edp {

struct FlowLevel {
  EdgeSet edges;
  Cost total_cost = 0;
};

// levels[i-1] holds the edge set of i edge-disjoint s-to-t paths of minimum
// total cost. If fewer than `requested` disjoint paths exist, levels stops
// early at the maximum feasible count.
struct FlowSolution {
  Vertex target = -1;
  int requested = 0;
  std::vector<FlowLevel> levels;
  int reached() const { return static_cast<int>(levels.size()); }
  bool feasible() const { return reached() == requested; }
};

// One augmentation step: reversed path edges leave the solution set, forward
// path edges join it. Preconditions (every reversed edge present, no forward
// edge present, no duplicate ids) are violated only by algorithm bugs.
// The path is short (at most one edge per vertex pair visited), so
// membership scratch is kept path-sized rather than universe-sized.
inline EdgeSet apply_augmenting_path(const EdgeSet& prev,
                                     std::span<const OrientedEdge> path) {
  std::vector<EdgeId> removed;
  removed.reserve(path.size());
  std::vector<EdgeId> seen;
  seen.reserve(path.size());
  for (const OrientedEdge& oe : path) {
    if (oe.edge < 0 || static_cast<std::size_t>(oe.edge) >= prev.universe())
      throw InternalError("apply_augmenting_path: edge id out of range");
    seen.push_back(oe.edge);
    if (oe.forward) {
      if (prev.contains(oe.edge))
        throw InternalError("apply_augmenting_path: forward edge already in set");
    } else {
      if (!prev.contains(oe.edge))
        throw InternalError("apply_augmenting_path: reversed edge not in set");
      removed.push_back(oe.edge);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InternalError("apply_augmenting_path: edge traversed twice");
  std::sort(removed.begin(), removed.end());
  EdgeSet out(prev.universe());
  for (EdgeId e : prev.members())
    if (!std::binary_search(removed.begin(), removed.end(), e)) out.insert(e);
  for (const OrientedEdge& oe : path)
    if (oe.forward) out.insert(oe.edge);
  return out;
}

// Removes directed cycles of zero-cost edges from a solution set. Ties
// between a zero-cost edge and the residual reversal of another can braid
// such a cycle into the flow across augmentations; canceling it yields
// another minimum-cost flow of the same value whose edge set decomposes
// into paths alone. Costs are non-negative, so a zero-total-cost cycle can
// only consist of zero-cost edges; positive-cost cycles cannot occur in an
// optimal solution and are deliberately left for the verifier to flag.
// All vertices of a canceled cycle share one shortest-path potential (each
// reversal bounds the next), so re-weighting tables stay valid.
inline EdgeSet cancel_zero_cost_cycles(const Digraph& g, const EdgeSet& set) {
  const Vertex n = g.num_vertices();
  bool any_zero = false;
  for (EdgeId e : set.members())
    if (g.edge(e).cost == 0) { any_zero = true; break; }
  if (!any_zero) return set;
  std::vector<unsigned char> removed(set.universe(), 0);

  bool found = true;
  while (found) {
    found = false;
    std::vector<std::vector<EdgeId>> adj(n);
    for (EdgeId e : set.members())
      if (!removed[e] && g.edge(e).cost == 0)
        adj[g.edge(e).tail].push_back(e);
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<int> state(n, 0);  // 0 unseen, 1 on the dfs path, 2 done
    std::vector<std::pair<Vertex, std::size_t>> frames;
    std::vector<EdgeId> path_edges;  // path_edges[i] enters frames[i+1]
    for (Vertex root = 0; root < n && !found; ++root) {
      if (state[root] != 0) continue;
      frames.assign(1, {root, 0});
      path_edges.clear();
      state[root] = 1;
      while (!frames.empty() && !found) {
        auto& [v, next] = frames.back();
        if (next == adj[v].size()) {
          state[v] = 2;
          frames.pop_back();
          if (!path_edges.empty()) path_edges.pop_back();
          continue;
        }
        EdgeId e = adj[v][next++];
        Vertex w = g.edge(e).head;
        if (state[w] == 1) {
          removed[e] = 1;
          for (std::size_t i = frames.size(); i-- > 0;) {
            if (frames[i].first == w) break;
            removed[path_edges[i - 1]] = 1;
          }
          found = true;
        } else if (state[w] == 0) {
          state[w] = 1;
          frames.push_back({w, 0});
          path_edges.push_back(e);
        }
      }
    }
  }

  EdgeSet out(set.universe());
  for (EdgeId e : set.members())
    if (!removed[e]) out.insert(e);
  return out;
}

namespace detail {

// Walks predecessor pointers from t back to s and returns the path in
// s-to-t order. A revisited vertex would mean the predecessor structure
// contains a cycle, which only a negative cycle could produce.
inline std::vector<OrientedEdge> walk_predecessors(
    const Digraph& g, const std::vector<OrientedEdge>& pred, Vertex s, Vertex t) {
  std::vector<OrientedEdge> path;
  std::vector<unsigned char> visited(g.num_vertices(), 0);
  Vertex v = t;
  while (v != s) {
    if (visited[v])
      throw InternalError("shortest-path predecessors contain a cycle");
    visited[v] = 1;
    OrientedEdge oe = pred[v];
    if (oe.edge == kNoEdge)
      throw InternalError("broken predecessor chain");
    path.push_back(oe);
    v = tail_of(g, oe);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline void check_level_convexity(const FlowSolution& sol) {
  Cost prev_total = 0, prev_marginal = -1;
  for (std::size_t i = 0; i < sol.levels.size(); ++i) {
    Cost marginal = sol.levels[i].total_cost - prev_total;
    if (i > 0 && marginal < prev_marginal)
      throw InternalError("flow level marginal costs are not non-decreasing");
    prev_marginal = marginal;
    prev_total = sol.levels[i].total_cost;
  }
}

}  // namespace detail

inline FlowSolution ssp_reference(const Digraph& g, Vertex s, Vertex t, int p) {
  if (p < 1) throw std::invalid_argument("ssp_reference: p must be >= 1");
  const Vertex n = g.num_vertices();
  const Cost kInf = std::numeric_limits<Cost>::max();

  FlowSolution sol;
  sol.target = t;
  sol.requested = p;
  EdgeSet current(g.num_edges());

  for (int round = 0; round < p; ++round) {
    // Residual oriented edges for the current solution set.
    std::vector<OrientedEdge> residual;
    residual.reserve(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      residual.push_back({e, !current.contains(e)});

    std::vector<Cost> dist(n, kInf);
    std::vector<OrientedEdge> pred(n);
    dist[s] = 0;
    for (Vertex pass = 0; pass + 1 < n; ++pass) {
      bool changed = false;
      for (const OrientedEdge& oe : residual) {
        Vertex u = tail_of(g, oe), v = head_of(g, oe);
        if (dist[u] == kInf) continue;
        Cost cand = dist[u] + signed_cost(g, oe);
        if (cand < dist[v]) {
          dist[v] = cand;
          pred[v] = oe;
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (const OrientedEdge& oe : residual) {
      Vertex u = tail_of(g, oe), v = head_of(g, oe);
      if (dist[u] != kInf && dist[u] + signed_cost(g, oe) < dist[v])
        throw InternalError("residual graph contains a negative cycle");
    }
    if (dist[t] == kInf) break;

    std::vector<OrientedEdge> path = detail::walk_predecessors(g, pred, s, t);
    current = cancel_zero_cost_cycles(g, apply_augmenting_path(current, path));
    Cost total = current.total_cost(g);
    Cost prev_total = sol.levels.empty() ? 0 : sol.levels.back().total_cost;
    if (total != prev_total + dist[t])
      throw InternalError("level cost does not match augmenting path cost");
    sol.levels.push_back({current, total});
  }
  detail::check_level_convexity(sol);
  return sol;
}

inline FlowSolution ssp_fast(const Digraph& g, Vertex s, Vertex t, int p) {
  if (p < 1) throw std::invalid_argument("ssp_fast: p must be >= 1");
  const Vertex n = g.num_vertices();
  const Cost kInf = std::numeric_limits<Cost>::max();

  FlowSolution sol;
  sol.target = t;
  sol.requested = p;
  EdgeSet current(g.num_edges());

  // pot[v] = true shortest-path distance from s in the previous round's
  // residual graph; makes every residual reduced cost non-negative.
  std::vector<Cost> pot(n, 0);
  std::vector<unsigned char> pot_valid(n, 1);

  std::vector<std::vector<OrientedEdge>> adj(n);
  std::vector<Cost> rdist(n);
  std::vector<OrientedEdge> pred(n);

  for (int round = 0; round < p; ++round) {
    for (auto& a : adj) a.clear();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      OrientedEdge oe{e, !current.contains(e)};
      adj[tail_of(g, oe)].push_back(oe);
    }

    std::fill(rdist.begin(), rdist.end(), kInf);
    std::fill(pred.begin(), pred.end(), OrientedEdge{});
    rdist[s] = 0;
    using Item = std::pair<Cost, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > rdist[u]) continue;
      for (const OrientedEdge& oe : adj[u]) {
        Vertex v = head_of(g, oe);
        if (!pot_valid[v])
          throw InternalError("residual edge reaches a vertex cut off from s");
        Cost w = signed_cost(g, oe) + pot[u] - pot[v];
        if (w < 0)
          throw NegativeReducedCostError(
              "ssp_fast: reduced cost " + std::to_string(w) + " on edge " +
              std::to_string(oe.edge));
        if (rdist[u] + w < rdist[v]) {
          rdist[v] = rdist[u] + w;
          pred[v] = oe;
          pq.push({rdist[v], v});
        }
      }
    }
    if (rdist[t] == kInf) break;

    std::vector<OrientedEdge> path = detail::walk_predecessors(g, pred, s, t);
    current = cancel_zero_cost_cycles(g, apply_augmenting_path(current, path));
    Cost total = current.total_cost(g);
    Cost prev_total = sol.levels.empty() ? 0 : sol.levels.back().total_cost;
    if (total != prev_total + rdist[t] + pot[t])
      throw InternalError("level cost does not match augmenting path cost");
    sol.levels.push_back({current, total});

    // True distances in this round's residual graph become next round's
    // potentials. Vertices cut off from s stay cut off in later rounds.
    for (Vertex v = 0; v < n; ++v) {
      if (rdist[v] == kInf) {
        pot_valid[v] = 0;
      } else {
        pot[v] = rdist[v] + pot[v];
      }
    }
  }
  detail::check_level_convexity(sol);
  return sol;
}

}  // namespace edp
