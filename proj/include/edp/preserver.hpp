// SPDX-License-Identifier: Apache-2.0
#pragma once

// Phase-based engine computing, for every target t, the edge sets of
// i edge-disjoint minimum-total-cost paths from the source (i = 1..p)
// together with preservers H_i of optimal size i(n-1).
//
// Phase 1 is a shortest-path tree. Each later phase i:
//   1. per target: rebuilds the potential table (one Dijkstra on the
//      preserver with the two-phases-old solution reversed), builds a sparse
//      residual subgraph of the preserver plus the edges entering t, and
//      computes a reverse shortest-path tree towards t under lexicographic
//      (cost, hops-outside-preserver) distances;
//   2. runs one global Dijkstra-like loop over targets, composing each
//      target's augmenting path from a previously finished hub vertex's path
//      plus a tree path, then augments the target's solution set and adds
//      the path's final edge to the preserver.
//
// Everything the correctness argument relies on is asserted at runtime:
// non-negative reduced costs, non-negative tree distances, monotone
// extraction order, and the new preserver edge being a fresh edge into its
// target.

#include <chrono>
#include <functional>
#include <limits>
#include <mutex>
#include <queue>
#include <span>
#include <thread>
#include <vector>

#include "edp/graph.hpp"
#include "edp/ssp.hpp"

namespace edp {

// Reverse shortest-path tree towards `target` inside its residual subgraph.
// parent[v] is the first oriented edge of v's tree path towards the target;
// dist[v] is the true (un-reweighted) lexicographic length of that path.
struct TargetTree {
  Vertex target = -1;
  std::vector<unsigned char> member;
  std::vector<OrientedEdge> parent;
  std::vector<LexCost> dist;
};

struct PhaseState {
  int phase = 0;
  EdgeSet preserver;                        // E(H_i)
  std::vector<EdgeSet> solution;            // S_i^t, indexed by target
  std::vector<EdgeSet> solution_prev;       // S_{i-1}^t
  std::vector<std::vector<Cost>> potential; // per-target reweighting table
  std::vector<std::vector<Cost>> level_costs;  // per target, c(S_1^t)..c(S_i^t)
  Vertex source = -1;
};

namespace detail {

// Plain-cost Dijkstra from s over the whole graph; ties broken by smaller
// vertex index, parent kept from the first strict improvement. O(n^2) array
// scan; used once, for phase 1.
inline void spt_from_source(const Digraph& g, Vertex s, std::vector<Cost>& dist,
                            std::vector<EdgeId>& parent) {
  const Vertex n = g.num_vertices();
  const Cost kInf = std::numeric_limits<Cost>::max();
  dist.assign(n, kInf);
  parent.assign(n, kNoEdge);
  std::vector<unsigned char> done(n, 0);
  dist[s] = 0;
  for (Vertex round = 0; round < n; ++round) {
    Vertex u = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!done[v] && (u == -1 || dist[v] < dist[u])) u = v;
    if (dist[u] == kInf) throw UnreachableVertexError(u);
    done[u] = 1;
    for (EdgeId e : g.out_edges(u)) {
      Vertex v = g.edge(e).head;
      if (dist[u] + g.edge(e).cost < dist[v]) {
        dist[v] = dist[u] + g.edge(e).cost;
        parent[v] = e;
      }
    }
  }
}

}  // namespace detail

// Phase 1: preserver = shortest-path tree edge set, solution(t) = the tree
// path to t, potentials all zero.
inline PhaseState init_phase1(const Digraph& g, Vertex s) {
  const Vertex n = g.num_vertices();
  std::vector<Cost> dist;
  std::vector<EdgeId> parent;
  detail::spt_from_source(g, s, dist, parent);

  PhaseState st;
  st.phase = 1;
  st.source = s;
  st.preserver = EdgeSet(g.num_edges());
  st.solution.assign(n, EdgeSet(g.num_edges()));
  st.solution_prev.assign(n, EdgeSet(g.num_edges()));
  st.potential.assign(n, std::vector<Cost>(n, 0));
  st.level_costs.assign(n, {});
  for (Vertex t = 0; t < n; ++t) {
    if (t == s) continue;
    st.preserver.insert(parent[t]);
  }
  for (Vertex t = 0; t < n; ++t) {
    if (t == s) continue;
    std::vector<EdgeId> path;
    for (Vertex v = t; v != s; v = g.edge(parent[v]).tail)
      path.push_back(parent[v]);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      st.solution[t].insert(*it);
    st.level_costs[t].push_back(st.solution[t].total_cost(g));
  }
  return st;
}

// Residual subgraph for target t at the start of phase state.phase+1:
// preserver edges with the current solution reversed, plus every edge of G
// entering t that is not in the solution. Entering edges already in the
// preserver but not in the solution would be duplicates; the construction
// guarantees they cannot exist, and we assert it.
inline std::vector<OrientedEdge> build_target_subgraph(const PhaseState& st,
                                                       const Digraph& g,
                                                       Vertex t) {
  std::vector<OrientedEdge> out;
  out.reserve(st.preserver.size() + g.in_edges(t).size());
  for (EdgeId e : st.preserver.members())
    out.push_back({e, !st.solution[t].contains(e)});
  for (EdgeId e : g.in_edges(t)) {
    if (st.solution[t].contains(e)) continue;
    if (st.preserver.contains(e))
      throw InternalError("preserver edge into target " + std::to_string(t) +
                          " missing from its solution set");
    out.push_back({e, true});
  }
  return out;
}

// New reweighting table for target t: Dijkstra from the source over the
// preserver with solution_prev(t) reversed, using the previous table's
// reduced costs (all non-negative by induction). Vertices unreachable there
// cannot lie on any path the main loop composes; they get a finite sentinel
// one past the largest reachable distance so the arithmetic stays exact.
inline std::vector<Cost> update_potentials(const PhaseState& st,
                                           const Digraph& g, Vertex t) {
  const Vertex n = g.num_vertices();
  const Vertex s = st.source;
  const Cost kInf = std::numeric_limits<Cost>::max();
  const std::vector<Cost>& pot = st.potential[t];

  // flat adjacency over effective tails
  const std::vector<EdgeId>& members = st.preserver.members();
  std::vector<OrientedEdge> oriented;
  oriented.reserve(members.size());
  for (EdgeId e : members)
    oriented.push_back({e, !st.solution_prev[t].contains(e)});
  std::vector<int> offset(n + 1, 0);
  for (const OrientedEdge& oe : oriented) ++offset[tail_of(g, oe) + 1];
  for (Vertex v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<OrientedEdge> flat(oriented.size());
  {
    std::vector<int> cur(offset.begin(), offset.end() - 1);
    for (const OrientedEdge& oe : oriented) flat[cur[tail_of(g, oe)]++] = oe;
  }

  std::vector<Cost> h(n, kInf);
  h[s] = 0;
  using Item = std::pair<Cost, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du > h[u]) continue;
    for (int i = offset[u]; i < offset[u + 1]; ++i) {
      const OrientedEdge& oe = flat[i];
      Vertex v = head_of(g, oe);
      Cost w = signed_cost(g, oe) + pot[u] - pot[v];
      if (w < 0)
        throw NegativeReducedCostError(
            "potential update: reduced cost " + std::to_string(w) +
            " on edge " + std::to_string(oe.edge));
      if (h[u] + w < h[v]) {
        h[v] = h[u] + w;
        pq.push({h[v], v});
      }
    }
  }

  Cost max_finite = 0;
  for (Vertex v = 0; v < n; ++v)
    if (h[v] != kInf && h[v] > max_finite) max_finite = h[v];
  std::vector<Cost> out(n);
  for (Vertex v = 0; v < n; ++v)
    out[v] = pot[v] + (h[v] == kInf ? max_finite + 1 : h[v]);
  return out;
}

// Reverse shortest-path tree towards t over the oriented subgraph, with
// lexicographic (reduced cost, hops) keys; extraction ties broken by smaller
// vertex index. Stores true lexicographic distances: the reduced distance
// telescopes, so cost(v..t) = reduced(v..t) + pot(t) - pot(v).
inline TargetTree reverse_spt(const Digraph& g,
                              std::span<const OrientedEdge> subgraph,
                              std::span<const Cost> pot,
                              const EdgeSet& preserver, Vertex t) {
  const Vertex n = g.num_vertices();

  // flat reversed adjacency over effective heads
  std::vector<int> offset(n + 1, 0);
  for (const OrientedEdge& oe : subgraph) {
    Cost w = signed_cost(g, oe) + pot[tail_of(g, oe)] - pot[head_of(g, oe)];
    if (w < 0)
      throw NegativeReducedCostError(
          "target tree: reduced cost " + std::to_string(w) + " on edge " +
          std::to_string(oe.edge));
    ++offset[head_of(g, oe) + 1];
  }
  for (Vertex v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<OrientedEdge> radj(subgraph.size());
  {
    std::vector<int> cur(offset.begin(), offset.end() - 1);
    for (const OrientedEdge& oe : subgraph) radj[cur[head_of(g, oe)]++] = oe;
  }

  std::vector<LexCost> rdist(n, LexCost::top());
  TargetTree tree;
  tree.target = t;
  tree.member.assign(n, 0);
  tree.parent.assign(n, OrientedEdge{});
  tree.dist.assign(n, LexCost::top());

  rdist[t] = LexCost::zero();
  using Item = std::pair<LexCost, Vertex>;  // extraction ties: smaller vertex
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({LexCost::zero(), t});
  while (!pq.empty()) {
    auto [ku, u] = pq.top();
    pq.pop();
    if (ku > rdist[u]) continue;
    for (int i = offset[u]; i < offset[u + 1]; ++i) {
      const OrientedEdge& oe = radj[i];
      Vertex v = tail_of(g, oe);  // edge v -> u, walked towards t
      Cost w = signed_cost(g, oe) + pot[v] - pot[u];
      LexCost hop{w, oriented_cost(g, oe, preserver).hops};
      LexCost cand = rdist[u] + hop;
      if (cand < rdist[v]) {
        rdist[v] = cand;
        tree.parent[v] = oe;
        pq.push({cand, v});
      }
    }
  }

  for (Vertex v = 0; v < n; ++v) {
    if (rdist[v].is_top()) continue;
    tree.member[v] = 1;
    tree.dist[v] = {rdist[v].cost + pot[t] - pot[v], rdist[v].hops};
    if (tree.dist[v].cost < 0)
      throw NegativeTreeDistanceError(
          "target tree for " + std::to_string(t) + ": vertex " +
          std::to_string(v) + " has tree distance cost " +
          std::to_string(tree.dist[v].cost));
  }
  return tree;
}

namespace detail {

inline void parallel_over_targets(Vertex n, Vertex s, int threads,
                                  const std::function<void(Vertex)>& work) {
  if (threads <= 1) {
    for (Vertex t = 0; t < n; ++t)
      if (t != s) work(t);
    return;
  }
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  for (int k = 0; k < threads; ++k) {
    pool.emplace_back([&, k]() {
      try {
        for (Vertex t = k; t < n; t += threads)
          if (t != s) work(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline void check_phase_invariants(const PhaseState& st, const Digraph& g) {
  const Vertex n = g.num_vertices();
  if (static_cast<long long>(st.preserver.size()) !=
      static_cast<long long>(st.phase) * (n - 1))
    throw InternalError("preserver size is not phase*(n-1)");
  std::vector<int> indeg(n, 0);
  for (EdgeId e : st.preserver.members()) ++indeg[g.edge(e).head];
  for (Vertex v = 0; v < n; ++v) {
    int want = v == st.source ? 0 : st.phase;
    if (indeg[v] != want)
      throw InternalError("preserver in-degree of vertex " +
                          std::to_string(v) + " is " +
                          std::to_string(indeg[v]) + ", expected " +
                          std::to_string(want));
  }
  for (Vertex t = 0; t < n; ++t) {
    if (t == st.source) continue;
    for (EdgeId e : st.solution[t].members())
      if (!st.preserver.contains(e))
        throw InternalError("solution edge " + std::to_string(e) +
                            " for target " + std::to_string(t) +
                            " not in preserver");
  }
}

}  // namespace detail

struct PhaseTiming {
  int phase = 0;
  double prep_ms = 0;
  double main_loop_ms = 0;
};

// Advances the state by one phase. `timing`, when given, receives the
// per-target-prep / main-loop split.
inline void run_phase(PhaseState& st, const Digraph& g, int threads = 1,
                      PhaseTiming* timing = nullptr) {
  const Vertex n = g.num_vertices();
  const Vertex s = st.source;
  const int i = st.phase + 1;
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();

  // Per-target preparation against the immutable phase i-1 state.
  std::vector<std::vector<Cost>> new_pot(n);
  std::vector<TargetTree> tree(n);
  detail::parallel_over_targets(n, s, threads, [&](Vertex t) {
    new_pot[t] = update_potentials(st, g, t);
    std::vector<OrientedEdge> sub = build_target_subgraph(st, g, t);
    tree[t] = reverse_spt(g, sub, new_pot[t], st.preserver, t);
  });

  auto t1 = Clock::now();

  // Global Dijkstra-like loop. Array-backed queue: O(n) extract-min with
  // smallest-vertex-index tie-breaking, O(1) decrease-key. Each target's
  // previous solution set moves into solution_prev at extraction time.
  std::vector<LexCost> d(n, LexCost::top());
  std::vector<Vertex> hub(n, -1);
  std::vector<std::vector<OrientedEdge>> pi(n);
  std::vector<unsigned char> queued(n, 1);
  d[s] = LexCost::zero();
  LexCost last_extracted = LexCost::zero();

  for (Vertex round = 0; round < n; ++round) {
    Vertex q = -1;
    for (Vertex v = 0; v < n; ++v)
      if (queued[v] && (q == -1 || d[v] < d[q])) q = v;
    if (d[q].is_top()) throw NotOutconnectedError(q, i);
    if (d[q] < last_extracted)
      throw InternalError("extraction order is not lex-monotone");
    last_extracted = d[q];
    queued[q] = 0;

    if (q != s) {
      // pi_q = pi_hub + tree path hub -> q in q's own tree.
      const Vertex r = hub[q];
      pi[q] = pi[r];
      for (Vertex v = r; v != q;) {
        OrientedEdge oe = tree[q].parent[v];
        pi[q].push_back(oe);
        v = head_of(g, oe);
      }
      const OrientedEdge last = pi[q].back();
      if (!last.forward || head_of(g, last) != q)
        throw InternalError("augmenting path does not end forward into its target");
      if (st.preserver.contains(last.edge))
        throw InternalError("new preserver edge " + std::to_string(last.edge) +
                            " was already present");
      st.preserver.insert(last.edge);
      EdgeSet next = cancel_zero_cost_cycles(
          g, apply_augmenting_path(st.solution[q], pi[q]));

      Cost total = next.total_cost(g);
      if (total != st.level_costs[q].back() + d[q].cost)
        throw InternalError("solution cost does not match extracted distance");
      st.level_costs[q].push_back(total);
      st.solution_prev[q] = std::move(st.solution[q]);
      st.solution[q] = std::move(next);
    }

    // Relax every still-queued target through hub q.
    for (Vertex t = 0; t < n; ++t) {
      if (!queued[t] || t == s || !tree[t].member[q]) continue;
      LexCost cand = d[q] + tree[t].dist[q];
      if (cand < d[t]) {
        d[t] = cand;
        hub[t] = q;
      }
    }
  }

  st.phase = i;
  st.potential = std::move(new_pot);
  detail::check_phase_invariants(st, g);

  if (timing) {
    auto t2 = Clock::now();
    timing->phase = i;
    timing->prep_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    timing->main_loop_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
  }
}

struct RunOptions {
  bool keep_intermediate = false;
  int threads = 1;
};

struct EngineResult {
  int p = 0;
  Vertex source = -1;
  EdgeSet preserver;                // H_p
  std::vector<EdgeSet> solutions;   // S_p^t per target
  std::vector<std::vector<Cost>> level_costs;  // c(S_1^t)..c(S_p^t) per target
  // Populated only with keep_intermediate:
  std::vector<EdgeSet> preserver_levels;             // H_1..H_p
  std::vector<std::vector<EdgeSet>> solution_levels; // per target, S_1..S_p
  std::vector<PhaseTiming> timings;

  // Per-target view shaped like the oracle's output. Needs keep_intermediate.
  FlowSolution target_levels(Vertex t) const {
    FlowSolution fs;
    fs.target = t;
    fs.requested = p;
    if (solution_levels.empty())
      throw std::logic_error("target_levels requires keep_intermediate");
    for (int i = 0; i < p; ++i)
      fs.levels.push_back({solution_levels[t][i], level_costs[t][i]});
    return fs;
  }
};

inline EngineResult run_engine(const Digraph& g, Vertex s, int p,
                               RunOptions opts = {}) {
  if (p < 1) throw std::invalid_argument("run_engine: p must be >= 1");
  if (s < 0 || s >= g.num_vertices())
    throw std::invalid_argument("run_engine: source out of range");

  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  PhaseState st = init_phase1(g, s);
  detail::check_phase_invariants(st, g);
  auto t1 = Clock::now();

  EngineResult res;
  res.p = p;
  res.source = s;
  res.timings.push_back(
      {1, std::chrono::duration<double, std::milli>(t1 - t0).count(), 0.0});
  auto snapshot = [&]() {
    if (!opts.keep_intermediate) return;
    res.preserver_levels.push_back(st.preserver);
    if (res.solution_levels.empty())
      res.solution_levels.assign(g.num_vertices(), {});
    for (Vertex t = 0; t < g.num_vertices(); ++t)
      if (t != s) res.solution_levels[t].push_back(st.solution[t]);
  };
  snapshot();

  for (int i = 2; i <= p; ++i) {
    PhaseTiming timing;
    run_phase(st, g, opts.threads, &timing);
    res.timings.push_back(timing);
    snapshot();
  }

  res.preserver = std::move(st.preserver);
  res.solutions = std::move(st.solution);
  res.level_costs = std::move(st.level_costs);
  return res;
}

}  // namespace edp
