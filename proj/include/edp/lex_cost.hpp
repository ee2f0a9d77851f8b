// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <limits>
#include <ostream>

namespace edp {

// Edge costs are exact integers. The potential arithmetic used by the
// preserver engine relies on exact zero-reduced-cost equalities, which
// floating point would break.
using Cost = long long;

// A path length as the pair (cost, hops) under lexicographic order, where
// `hops` counts traversed edges that lie outside the current preserver and
// serves as a tie-breaker between equal-cost paths. The sentinel top()
// represents (+inf, +inf): it is maximal under < and absorbing under +.
struct LexCost {
  Cost cost = 0;
  Cost hops = 0;

  static constexpr Cost kInf = std::numeric_limits<Cost>::max();

  static constexpr LexCost zero() { return {0, 0}; }
  static constexpr LexCost top() { return {kInf, kInf}; }
  constexpr bool is_top() const { return cost == kInf && hops == kInf; }

  friend constexpr auto operator<=>(const LexCost&, const LexCost&) = default;

  friend constexpr LexCost operator+(const LexCost& a, const LexCost& b) {
    if (a.is_top() || b.is_top()) return top();
    return {a.cost + b.cost, a.hops + b.hops};
  }
  LexCost& operator+=(const LexCost& o) { return *this = *this + o; }

  friend std::ostream& operator<<(std::ostream& os, const LexCost& d) {
    if (d.is_top()) return os << "(inf,inf)";
    return os << '(' << d.cost << ',' << d.hops << ')';
  }
};

}  // namespace edp
