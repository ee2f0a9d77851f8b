// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "edp/graph.hpp"
#include "edp/lex_cost.hpp"
#include "test_graphs.hpp"

using namespace edp;

TEST_CASE("lexicographic comparison") {
  CHECK(LexCost{3, 1} < LexCost{3, 2});  // second component tie-break
  CHECK(LexCost{2, 5} < LexCost{3, 0});  // first component dominates
  CHECK(LexCost{4, 4} == LexCost{4, 4});
  CHECK(LexCost{7, 0} < LexCost::top());
  CHECK(LexCost::top() == LexCost::top());
  CHECK_FALSE(LexCost::top() < LexCost{7, 0});
}

TEST_CASE("lexicographic addition") {
  CHECK(LexCost{3, 1} + LexCost{2, 0} == LexCost{5, 1});
  CHECK(LexCost{0, 0} + LexCost{17, 4} == LexCost{17, 4});  // identity
  CHECK(LexCost::top() + LexCost{1, 1} == LexCost::top());  // absorbing
  CHECK(LexCost{1, 1} + LexCost::top() == LexCost::top());
}

TEST_CASE("lex order is a total order on random triples") {
  std::mt19937_64 rng(7);
  auto any = [&]() -> LexCost {
    if (rng() % 10 == 0) return LexCost::top();
    return {static_cast<Cost>(rng() % 20), static_cast<Cost>(rng() % 4)};
  };
  for (int i = 0; i < 2000; ++i) {
    LexCost a = any(), b = any(), c = any();
    // totality + antisymmetry
    CHECK((a < b) + (b < a) + (a == b) == 1);
    // transitivity
    if (a <= b && b <= c) CHECK(a <= c);
    // associativity and commutativity of +
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
  }
}

TEST_CASE("oriented edge cost and endpoints") {
  Digraph g = testing::make_d1();
  EdgeSet preserver = testing::make_set(g, {0, 4, 3});

  // forward edge of cost 3 outside the preserver counts a hop
  CHECK(oriented_cost(g, {1, true}, preserver) == LexCost{3, 1});
  // forward edge inside the preserver does not
  CHECK(oriented_cost(g, {3, true}, preserver) == LexCost{1, 0});
  // reversed edges never count a hop and negate the cost
  CHECK(oriented_cost(g, {1, false}, preserver) == LexCost{-3, 0});

  CHECK(tail_of(g, {1, true}) == 1);
  CHECK(head_of(g, {1, true}) == 3);
  CHECK(tail_of(g, {1, false}) == 3);
  CHECK(head_of(g, {1, false}) == 1);

  CHECK_THROWS_AS(oriented_cost(g, {99, true}, preserver),
                  std::invalid_argument);
}

TEST_CASE("path cost is the sum of oriented edge costs") {
  Digraph g = testing::make_d2();
  EdgeSet preserver = testing::make_set(g, {0, 4, 3});
  std::vector<OrientedEdge> path = {{2, true}, {4, false}, {1, true}};
  LexCost total = LexCost::zero();
  for (OrientedEdge oe : path) total += oriented_cost(g, oe, preserver);
  CHECK(total == LexCost{3 - 1 + 3, 2});
}

TEST_CASE("digraph validation") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0, 1}}), std::invalid_argument);  // loop
  CHECK_THROWS_AS(Digraph(2, {{0, 1, -1}}), std::invalid_argument); // cost
  CHECK_THROWS_AS(Digraph(2, {{0, 2, 1}}), std::invalid_argument);  // range
  // parallel and mutually reverse edges are fine
  Digraph g(2, {{0, 1, 5}, {0, 1, 5}, {1, 0, 2}});
  CHECK(g.num_edges() == 3);
  CHECK(g.out_edges(0) == std::vector<EdgeId>{0, 1});
  CHECK(g.in_edges(1) == std::vector<EdgeId>{0, 1});
  CHECK(g.total_cost() == 12);
}

TEST_CASE("edge set basics") {
  EdgeSet s(5);
  CHECK_FALSE(s.contains(3));
  s.insert(3);
  s.insert(1);
  CHECK(s.contains(3));
  CHECK(s.size() == 2);
  CHECK(s.members() == std::vector<EdgeId>{3, 1});  // insertion order
  CHECK(s.sorted() == std::vector<EdgeId>{1, 3});
  CHECK_THROWS_AS(s.insert(3), InternalError);
}
