// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "edp/brute_force.hpp"
#include "edp/generator.hpp"
#include "edp/preserver.hpp"
#include "edp/ssp.hpp"
#include "edp/verify.hpp"
#include "test_graphs.hpp"

using namespace edp;
using edp::testing::make_d1;
using edp::testing::make_d2;
using edp::testing::make_set;

namespace {

std::vector<OrientedEdge> sorted_oriented(std::vector<OrientedEdge> v) {
  std::sort(v.begin(), v.end(), [](const OrientedEdge& a, const OrientedEdge& b) {
    return std::pair(a.edge, a.forward) < std::pair(b.edge, b.forward);
  });
  return v;
}

}  // namespace

TEST_CASE("phase 1 is the shortest-path tree") {
  Digraph g = make_d2();
  PhaseState st = init_phase1(g, 0);
  CHECK(st.phase == 1);
  CHECK(st.preserver == make_set(g, {0, 4, 3}));
  CHECK(st.solution[1] == make_set(g, {0}));
  CHECK(st.solution[2] == make_set(g, {0, 4}));
  CHECK(st.solution[3] == make_set(g, {0, 4, 3}));
  CHECK(st.level_costs[1] == std::vector<Cost>{1});
  CHECK(st.level_costs[2] == std::vector<Cost>{2});
  CHECK(st.level_costs[3] == std::vector<Cost>{3});
  for (Vertex t = 1; t < 4; ++t)
    CHECK(st.potential[t] == std::vector<Cost>(4, 0));
}

TEST_CASE("phase 1 trivial and failing shapes") {
  Digraph single(2, {{0, 1, 7}});
  PhaseState st = init_phase1(single, 0);
  CHECK(st.preserver == make_set(single, {0}));

  Digraph broken(4, {{1, 3, 3}, {0, 2, 3}, {2, 3, 1}, {1, 2, 1}});  // d1 minus e0
  try {
    init_phase1(broken, 0);
    FAIL("expected UnreachableVertexError");
  } catch (const UnreachableVertexError& e) {
    CHECK(e.vertex == 1);
  }
}

TEST_CASE("per-target residual subgraphs in phase 2") {
  Digraph g = make_d2();
  PhaseState st = init_phase1(g, 0);

  auto sub3 = sorted_oriented(build_target_subgraph(st, g, 3));
  CHECK(sub3 == sorted_oriented({{0, false}, {4, false}, {3, false}, {1, true}}));

  auto sub2 = sorted_oriented(build_target_subgraph(st, g, 2));
  CHECK(sub2 == sorted_oriented({{0, false}, {4, false}, {3, true}, {2, true}}));

  auto sub1 = sorted_oriented(build_target_subgraph(st, g, 1));
  CHECK(sub1 == sorted_oriented({{0, false}, {4, true}, {3, true}, {5, true}}));
}

TEST_CASE("potential update in phase 2 gives tree distances") {
  Digraph g = make_d2();
  PhaseState st = init_phase1(g, 0);
  for (Vertex t = 1; t < 4; ++t) {
    std::vector<Cost> pot = update_potentials(st, g, t);
    CHECK(pot == std::vector<Cost>{0, 1, 2, 3});
  }
  // spot-check the re-weighting this table induces on target 3's subgraph:
  // residual edge 3->2 gets -1+3-2 = 0, forward edge 1->3 gets 3+1-3 = 1
  std::vector<Cost> pot = update_potentials(st, g, 3);
  CHECK(signed_cost(g, {3, false}) + pot[3] - pot[2] == 0);
  CHECK(signed_cost(g, {1, true}) + pot[1] - pot[3] == 1);
}

TEST_CASE("reverse shortest-path trees in phase 2") {
  Digraph g = make_d2();
  PhaseState st = init_phase1(g, 0);
  std::vector<Cost> pot = update_potentials(st, g, 3);

  SECTION("target 3") {
    auto sub = build_target_subgraph(st, g, 3);
    TargetTree tree = reverse_spt(g, sub, pot, st.preserver, 3);
    CHECK(tree.dist[3] == LexCost{0, 0});
    CHECK(tree.dist[1] == LexCost{3, 1});
    CHECK(tree.dist[2] == LexCost{2, 1});
    CHECK_FALSE(tree.member[0]);  // source is not in this tree
    CHECK(tree.parent[1] == OrientedEdge{1, true});
    CHECK(tree.parent[2] == OrientedEdge{4, false});
  }
  SECTION("target 2") {
    auto sub = build_target_subgraph(st, g, 2);
    TargetTree tree = reverse_spt(g, sub, pot, st.preserver, 2);
    CHECK(tree.dist[0] == LexCost{3, 1});
    CHECK(tree.dist[1] == LexCost{2, 1});
    CHECK(tree.parent[0] == OrientedEdge{2, true});
    CHECK(tree.parent[1] == OrientedEdge{0, false});
  }
  SECTION("target 1") {
    auto sub = build_target_subgraph(st, g, 1);
    TargetTree tree = reverse_spt(g, sub, pot, st.preserver, 1);
    CHECK(tree.member[1]);
    CHECK(tree.member[2]);
    CHECK_FALSE(tree.member[0]);
    CHECK(tree.dist[2] == LexCost{5, 1});
    CHECK(tree.parent[2] == OrientedEdge{5, true});
  }
}

TEST_CASE("phase 2 golden run") {
  Digraph g = make_d2();
  PhaseState st = init_phase1(g, 0);
  run_phase(st, g);

  CHECK(st.phase == 2);
  CHECK(st.preserver.size() == 6);  // every edge of the graph
  CHECK(st.solution[1] == make_set(g, {0, 2, 5}));
  CHECK(st.solution[2] == make_set(g, {0, 4, 2}));
  CHECK(st.solution[3] == make_set(g, {0, 1, 2, 3}));
  CHECK(st.level_costs[1] == std::vector<Cost>{1, 9});
  CHECK(st.level_costs[2] == std::vector<Cost>{2, 5});
  CHECK(st.level_costs[3] == std::vector<Cost>{3, 8});
  CHECK(st.solution_prev[3] == make_set(g, {0, 4, 3}));
}

TEST_CASE("golden run cross-checked against enumeration") {
  Digraph g = make_d2();
  EngineResult er = run_engine(g, 0, 2);
  for (Vertex t = 1; t < 4; ++t) {
    BruteForceResult bf = brute_force_disjoint(g, 0, t, 2);
    REQUIRE(bf.feasible);
    CHECK(er.level_costs[t][1] == bf.total_cost);
  }
}

TEST_CASE("missing connectivity is reported") {
  Digraph g = make_d1();
  PhaseState st = init_phase1(g, 0);
  try {
    run_phase(st, g);
    FAIL("expected NotOutconnectedError");
  } catch (const NotOutconnectedError& e) {
    CHECK(e.vertex == 1);
    CHECK(e.paths_required == 2);
  }
}

TEST_CASE("p=1 preserver is the shortest-path tree") {
  Digraph g = make_d2();
  EngineResult er = run_engine(g, 0, 1);
  CHECK(er.preserver == make_set(g, {0, 4, 3}));
}

TEST_CASE("saturated two-level instance uses every edge") {
  // Shortest-path tree plus exactly one extra entering edge per vertex:
  // the only possible 2-preserver is the whole edge set.
  Digraph g = make_d2();
  EngineResult er = run_engine(g, 0, 2);
  CHECK(er.preserver.size() == static_cast<std::size_t>(g.num_edges()));
}

TEST_CASE("engine matches the oracle on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    int n = 5 + static_cast<int>(seed % 10);
    int p = 2 + static_cast<int>(seed % 3);
    if (p > n - 1) continue;
    int extra = static_cast<int>((seed * 7) % (2 * n));
    Cost max_cost = (seed % 4 == 0) ? 4 : 60;
    Digraph g = generate_outconnected(n, p, extra, max_cost, seed);
    EngineResult er = run_engine(g, 0, p, {.keep_intermediate = true});

    CHECK(er.preserver.size() ==
          static_cast<std::size_t>(p) * (g.num_vertices() - 1));
    for (Vertex t = 1; t < g.num_vertices(); ++t) {
      FlowSolution oracle = ssp_fast(g, 0, t, p);
      REQUIRE(oracle.feasible());
      for (int i = 0; i < p; ++i) {
        CHECK(er.level_costs[t][i] == oracle.levels[i].total_cost);
        // every intermediate solution stays inside its phase's preserver
        for (EdgeId e : er.solution_levels[t][i].members())
          CHECK(er.preserver_levels[i].contains(e));
      }
      ++checked;
    }
  }
  CHECK(checked > 200);
}

namespace {

// Test-local min-cost flow oracle over a residual graph: the base oriented
// edges are g's edges with `reversed` flipped and cost-negated; `units` of
// flow are pushed from src to dst by Bellman-Ford shortest augmenting paths.
// Returns the optimal total cost. The residual graphs involved contain
// negative edges but no negative cycles.
Cost mincost_units_oracle(const Digraph& g, const EdgeSet& reversed,
                          Vertex src, Vertex dst, int units) {
  const Cost kInf = std::numeric_limits<Cost>::max();
  const Vertex n = g.num_vertices();
  std::vector<unsigned char> flipped(g.num_edges(), 0);
  Cost total = 0;
  for (int round = 0; round < units; ++round) {
    std::vector<Cost> dist(n, kInf);
    std::vector<OrientedEdge> pred(n);
    std::vector<unsigned char> base_fwd(g.num_edges());
    dist[src] = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      // forward iff (not in the reversed set) XOR (already carrying flow)
      bool fwd = reversed.contains(e) == static_cast<bool>(flipped[e]);
      base_fwd[e] = fwd ? 1 : 0;
    }
    for (Vertex pass = 0; pass + 1 < n; ++pass) {
      bool changed = false;
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        OrientedEdge oe{e, static_cast<bool>(base_fwd[e])};
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
    REQUIRE(dist[dst] != kInf);
    total += dist[dst];
    std::vector<unsigned char> visited(n, 0);
    for (Vertex v = dst; v != src;) {
      REQUIRE(!visited[v]);
      visited[v] = 1;
      OrientedEdge oe = pred[v];
      flipped[oe.edge] ^= 1;
      v = tail_of(g, oe);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("solution symmetric differences are min-cost flows between targets") {
  // For two targets t and v at the same level j, the oriented symmetric
  // difference of their solution sets (edges only in t's set reversed,
  // edges only in v's set forward) is a j-unit flow from t to v inside t's
  // residual graph, and its cost is optimal.
  std::mt19937_64 pick(99);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    int p = 2 + static_cast<int>(seed % 2);
    Digraph g = generate_outconnected(7, p, static_cast<int>(seed % 6),
                                      (seed % 3 == 0) ? 5 : 30, seed);
    EngineResult er = run_engine(g, 0, p, {.keep_intermediate = true});
    const Vertex n = g.num_vertices();
    for (int trial = 0; trial < 6; ++trial) {
      Vertex t = 1 + static_cast<Vertex>(pick() % (n - 1));
      Vertex v = 1 + static_cast<Vertex>(pick() % (n - 1));
      if (t == v) continue;
      for (int j = 1; j <= p; ++j) {
        const EdgeSet& st_set = er.solution_levels[t][j - 1];
        const EdgeSet& sv_set = er.solution_levels[v][j - 1];
        std::vector<OrientedEdge> delta;
        for (EdgeId e : st_set.members())
          if (!sv_set.contains(e)) delta.push_back({e, false});
        for (EdgeId e : sv_set.members())
          if (!st_set.contains(e)) delta.push_back({e, true});

        std::vector<long long> div(n, 0);
        Cost delta_cost = 0;
        for (const OrientedEdge& oe : delta) {
          ++div[tail_of(g, oe)];
          --div[head_of(g, oe)];
          delta_cost += signed_cost(g, oe);
        }
        for (Vertex w = 0; w < n; ++w) {
          long long want = w == t ? j : w == v ? -j : 0;
          CHECK(div[w] == want);
        }
        CHECK(delta_cost == mincost_units_oracle(g, st_set, t, v, j));
      }
    }
  }
}

TEST_CASE("engine survives graphs made entirely of ties") {
  // all-zero costs: every comparison is a tie, zero-cost cycles are
  // maximally likely, and the hop tie-break carries the whole ordering
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);
    int p = 1 + static_cast<int>(seed % (n - 1));
    Digraph g = generate_outconnected(n, p, static_cast<int>(seed % 10), 0,
                                      seed);
    EngineResult er = run_engine(g, 0, p, {.keep_intermediate = true});
    CHECK(er.preserver.size() ==
          static_cast<std::size_t>(p) * (g.num_vertices() - 1));
    for (Vertex t = 1; t < g.num_vertices(); ++t) {
      FlowSolution oracle = ssp_fast(g, 0, t, p);
      REQUIRE(oracle.feasible());
      for (int i = 0; i < p; ++i) {
        CHECK(er.level_costs[t][i] == oracle.levels[i].total_cost);
        Decomposition dec = decompose(g, er.solution_levels[t][i], 0, t, i + 1);
        CHECK(dec.leftover.empty());
      }
    }
  }
}

TEST_CASE("maximum p on a dense instance") {
  Digraph g = generate_outconnected(7, 6, 14, 9, 3);
  EngineResult er = run_engine(g, 0, 6);
  for (Vertex t = 1; t < g.num_vertices(); ++t) {
    FlowSolution oracle = ssp_fast(g, 0, t, 6);
    REQUIRE(oracle.feasible());
    CHECK(er.level_costs[t][5] == oracle.levels[5].total_cost);
  }
}

TEST_CASE("multi-threaded prep gives identical results") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Digraph g = generate_outconnected(14, 3, 20, 50, seed);
    EngineResult a = run_engine(g, 0, 3, {.threads = 1});
    EngineResult b = run_engine(g, 0, 3, {.threads = 4});
    CHECK(a.preserver == b.preserver);
    for (Vertex t = 1; t < g.num_vertices(); ++t) {
      CHECK(a.level_costs[t] == b.level_costs[t]);
      CHECK(a.solutions[t] == b.solutions[t]);
    }
  }
}
