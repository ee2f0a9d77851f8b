// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent validation of solver outputs: flow decomposition into paths,
// disjointness checks, cost equivalence against the successive-shortest-path
// oracle, and preserver size/degree/property audits.

#include <string>
#include <vector>

#include "edp/graph.hpp"
#include "edp/max_flow.hpp"
#include "edp/ssp.hpp"

namespace edp {

struct DecompositionError : Error {
  enum class Kind { bad_divergence, leftover_edges, cycle_stuck };
  Kind kind;
  Vertex vertex = -1;
  long long value = 0;
  DecompositionError(Kind k, Vertex v, long long val, const std::string& what)
      : Error(what), kind(k), vertex(v), value(val) {}
};

enum class DecomposeMode { strict, lenient };

struct Decomposition {
  std::vector<std::vector<Vertex>> paths;       // vertex sequences, s..t
  std::vector<std::vector<EdgeId>> path_edges;  // parallel edge id sequences
  EdgeSet leftover;
  bool stripped_zero_cycles = false;  // lenient mode only
};

// Treats the edge set as a unit flow of value p from s into t and peels p
// paths by repeated walks from s, taking the unused out-edge with the
// smallest id at every step. A walk may exit to t while equal-cost flow
// remains on a detour, stranding a balanced zero-cost remnant even though a
// complete decomposition exists; such remnants are absorbed by splicing the
// zero-cost closed walk into a peeled path at a shared vertex, keeping the
// edge multiset equation exact. Anything else left over (costly cycles,
// cycles detached from every path) stays visible: strict mode errors,
// lenient mode strips only balanced zero-cost leftovers and flags them.
inline Decomposition decompose(const Digraph& g, const EdgeSet& solution,
                               Vertex s, Vertex t, int p,
                               DecomposeMode mode = DecomposeMode::strict) {
  const Vertex n = g.num_vertices();

  std::vector<long long> divergence(n, 0);
  std::vector<std::vector<EdgeId>> out(n);
  for (EdgeId e : solution.members()) {
    ++divergence[g.edge(e).tail];
    --divergence[g.edge(e).head];
    out[g.edge(e).tail].push_back(e);
  }
  for (Vertex v = 0; v < n; ++v) {
    long long want = v == s ? p : v == t ? -p : 0;
    if (divergence[v] != want)
      throw DecompositionError(
          DecompositionError::Kind::bad_divergence, v, divergence[v],
          "vertex " + std::to_string(v) + " has net divergence " +
              std::to_string(divergence[v]) + ", expected " +
              std::to_string(want));
  }
  for (auto& lst : out) std::sort(lst.begin(), lst.end());

  Decomposition dec;
  dec.leftover = EdgeSet(solution.universe());
  std::vector<std::size_t> cursor(n, 0);
  std::size_t consumed = 0;
  for (int k = 0; k < p; ++k) {
    std::vector<Vertex> path = {s};
    std::vector<EdgeId> path_edges;
    Vertex v = s;
    std::size_t steps = 0;
    while (v != t) {
      if (cursor[v] >= out[v].size() || ++steps > solution.size())
        throw DecompositionError(
            DecompositionError::Kind::cycle_stuck, v, 0,
            "walk " + std::to_string(k + 1) + " stuck at vertex " +
                std::to_string(v));
      EdgeId e = out[v][cursor[v]++];
      path_edges.push_back(e);
      v = g.edge(e).head;
      path.push_back(v);
      ++consumed;
    }
    dec.paths.push_back(std::move(path));
    dec.path_edges.push_back(std::move(path_edges));
  }

  // Splice zero-cost remnants. A closed walk from any vertex of a remnant
  // always returns to its start (the remnant is balanced), so an attempt
  // either yields a zero-cost walk, which is inserted in place, or is
  // rolled back untouched.
  bool progress = consumed < solution.size();
  while (consumed < solution.size() && progress) {
    progress = false;
    for (std::size_t k = 0; k < dec.paths.size() && consumed < solution.size();
         ++k) {
      for (std::size_t idx = 0; idx < dec.paths[k].size(); ++idx) {
        Vertex v = dec.paths[k][idx];
        if (cursor[v] >= out[v].size()) continue;
        std::vector<EdgeId> walk_edges;
        std::vector<Vertex> walk_vertices;
        Cost walk_cost = 0;
        Vertex u = v;
        do {
          if (cursor[u] >= out[u].size() ||
              walk_edges.size() > solution.size())
            throw InternalError("remnant is not balanced");
          EdgeId e = out[u][cursor[u]++];
          walk_edges.push_back(e);
          walk_cost += g.edge(e).cost;
          u = g.edge(e).head;
          walk_vertices.push_back(u);
        } while (u != v);
        if (walk_cost != 0) {
          for (auto it = walk_edges.rbegin(); it != walk_edges.rend(); ++it)
            --cursor[g.edge(*it).tail];
          continue;
        }
        dec.path_edges[k].insert(dec.path_edges[k].begin() + idx,
                                 walk_edges.begin(), walk_edges.end());
        dec.paths[k].insert(dec.paths[k].begin() + idx + 1,
                            walk_vertices.begin(), walk_vertices.end());
        consumed += walk_edges.size();
        progress = true;
      }
    }
  }

  if (consumed < solution.size()) {
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t i = cursor[v]; i < out[v].size(); ++i)
        dec.leftover.insert(out[v][i]);
    bool zero_cycles = dec.leftover.total_cost(g) == 0;
    std::vector<long long> bal(n, 0);
    for (EdgeId e : dec.leftover.members()) {
      ++bal[g.edge(e).tail];
      --bal[g.edge(e).head];
    }
    for (Vertex v = 0; v < n && zero_cycles; ++v)
      if (bal[v] != 0) zero_cycles = false;
    if (mode == DecomposeMode::strict || !zero_cycles)
      throw DecompositionError(
          DecompositionError::Kind::leftover_edges, -1,
          static_cast<long long>(dec.leftover.size()),
          std::to_string(dec.leftover.size()) + " edges left undecomposed");
    dec.stripped_zero_cycles = true;
  }
  return dec;
}

struct CheckItem {
  std::string check;
  bool ok = true;
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;
  bool ok() const {
    for (const CheckItem& it : items)
      if (!it.ok) return false;
    return true;
  }
  void add(const std::string& check, bool ok, const std::string& detail = "") {
    items.push_back({check, ok, detail});
  }
  const CheckItem* first_failure() const {
    for (const CheckItem& it : items)
      if (!it.ok) return &it;
    return nullptr;
  }
};

// Every target's solution cost must equal the oracle's level-p cost exactly.
inline Report check_against_oracle(const Digraph& g, Vertex s, int p,
                                   const std::vector<EdgeSet>& solutions) {
  Report rep;
  for (Vertex t = 0; t < g.num_vertices(); ++t) {
    if (t == s) continue;
    FlowSolution oracle = ssp_fast(g, s, t, p);
    std::string name = "oracle-cost t=" + std::to_string(t);
    if (!oracle.feasible()) {
      rep.add(name, false,
              "oracle reached only " + std::to_string(oracle.reached()) +
                  " of " + std::to_string(p) + " levels");
      continue;
    }
    Cost got = solutions[t].total_cost(g);
    Cost want = oracle.levels[p - 1].total_cost;
    rep.add(name, got == want,
            got == want ? ""
                        : "solution cost " + std::to_string(got) +
                              " != oracle cost " + std::to_string(want));
  }
  return rep;
}

namespace detail {

// Restriction of g to an edge subset, with the id mapping back.
inline Digraph induced_subgraph(const Digraph& g, const EdgeSet& keep,
                                std::vector<EdgeId>* to_original = nullptr) {
  std::vector<EdgeRecord> edges;
  edges.reserve(keep.size());
  if (to_original) to_original->clear();
  for (EdgeId e : keep.sorted()) {
    edges.push_back(g.edge(e));
    if (to_original) to_original->push_back(e);
  }
  return Digraph(g.num_vertices(), std::move(edges));
}

}  // namespace detail

// Preserver audit: (1) size p(n-1) with in-degree 0 at s and p elsewhere;
// (2) running the oracle inside the preserver reproduces the whole-graph
// optimum at every level i <= p for every target; (3) if the engine's
// solutions are given, each is contained in the preserver.
inline Report check_preserver(const Digraph& g, Vertex s, int p,
                              const EdgeSet& preserver,
                              const std::vector<EdgeSet>* solutions = nullptr) {
  Report rep;
  const Vertex n = g.num_vertices();

  long long want_size = static_cast<long long>(p) * (n - 1);
  rep.add("preserver-size",
          static_cast<long long>(preserver.size()) == want_size,
          "size " + std::to_string(preserver.size()) + ", expected " +
              std::to_string(want_size));
  std::vector<int> indeg(n, 0);
  for (EdgeId e : preserver.members()) ++indeg[g.edge(e).head];
  bool degrees_ok = indeg[s] == 0;
  for (Vertex v = 0; v < n; ++v)
    if (v != s && indeg[v] != p) degrees_ok = false;
  rep.add("preserver-degrees", degrees_ok,
          degrees_ok ? "" : "in-degree profile deviates from (0, p, ..., p)");

  Digraph sub = detail::induced_subgraph(g, preserver);
  for (Vertex t = 0; t < n; ++t) {
    if (t == s) continue;
    FlowSolution in_g = ssp_fast(g, s, t, p);
    FlowSolution in_h = ssp_fast(sub, s, t, p);
    bool ok = in_h.reached() == in_g.reached();
    for (int i = 0; ok && i < in_g.reached(); ++i)
      ok = in_h.levels[i].total_cost == in_g.levels[i].total_cost;
    rep.add("preserver-property t=" + std::to_string(t), ok,
            ok ? "" : "restricted optimum deviates from whole-graph optimum");
  }

  if (solutions) {
    for (Vertex t = 0; t < n; ++t) {
      if (t == s) continue;
      bool ok = true;
      for (EdgeId e : (*solutions)[t].members())
        if (!preserver.contains(e)) ok = false;
      rep.add("containment t=" + std::to_string(t), ok,
              ok ? "" : "solution uses an edge outside the preserver");
    }
  }
  return rep;
}

// True iff no internal vertex is shared between two paths (s and t exempt).
inline bool check_vertex_disjoint(const Decomposition& dec) {
  std::vector<Vertex> internal;
  for (const std::vector<Vertex>& path : dec.paths)
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      internal.push_back(path[i]);
  std::sort(internal.begin(), internal.end());
  return std::adjacent_find(internal.begin(), internal.end()) ==
         internal.end();
}

// Per-vertex min(max number of edge-disjoint paths from s, p). The source
// slot holds min(n-1, p) by convention and is unused.
inline std::vector<int> check_outconnectivity(const Digraph& g, Vertex s,
                                              int p) {
  std::vector<int> out(g.num_vertices(), 0);
  for (Vertex t = 0; t < g.num_vertices(); ++t)
    out[t] = max_disjoint_paths(g, s, t, p);
  return out;
}

}  // namespace edp
