// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edp/errors.hpp"
#include "edp/lex_cost.hpp"

namespace edp {

using Vertex = int;
using EdgeId = int;
inline constexpr EdgeId kNoEdge = -1;

struct EdgeRecord {
  Vertex tail = 0;
  Vertex head = 0;
  Cost cost = 0;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Immutable directed multigraph with identified edges and non-negative
// costs. Parallel edges and mutually reverse pairs (u,v),(v,u) are allowed;
// edge identity is the id, i.e. the index into edges(). Self-loops are
// rejected: they can never lie on a simple source-to-target path.
//
// Safe to read from any number of threads once constructed.
class Digraph {
 public:
  Digraph() = default;

  Digraph(Vertex n, std::vector<EdgeRecord> edges)
      : n_(n), edges_(std::move(edges)), out_(n), in_(n) {
    if (n < 1) throw std::invalid_argument("vertex count must be positive");
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      const EdgeRecord& r = edges_[e];
      if (r.tail < 0 || r.tail >= n || r.head < 0 || r.head >= n)
        throw std::invalid_argument("edge " + std::to_string(e) +
                                    ": endpoint out of range");
      if (r.tail == r.head)
        throw std::invalid_argument("edge " + std::to_string(e) +
                                    ": self-loops are not allowed");
      if (r.cost < 0)
        throw std::invalid_argument("edge " + std::to_string(e) +
                                    ": negative cost");
      out_[r.tail].push_back(e);
      in_[r.head].push_back(e);
    }
  }

  Vertex num_vertices() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  const EdgeRecord& edge(EdgeId e) const {
    assert(e >= 0 && e < num_edges());
    return edges_[e];
  }
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  // Edge ids leaving / entering a vertex, ascending.
  const std::vector<EdgeId>& out_edges(Vertex v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(Vertex v) const { return in_[v]; }

  Cost total_cost() const {
    Cost sum = 0;
    for (const EdgeRecord& r : edges_) sum += r.cost;
    return sum;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_ = 0;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// A set of edge ids with O(1) membership and insertion-ordered iteration.
// Used for the per-target solution sets and the preserver edge sets, which
// only ever grow; removals happen by rebuilding (see apply_augmenting_path).
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : bits_(universe, 0) {}

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < bits_.size() && bits_[e];
  }

  void insert(EdgeId e) {
    assert(e >= 0 && static_cast<std::size_t>(e) < bits_.size());
    if (bits_[e]) throw InternalError("EdgeSet: duplicate insert of edge " +
                                      std::to_string(e));
    bits_[e] = 1;
    members_.push_back(e);
  }

  // Members in insertion order.
  const std::vector<EdgeId>& members() const { return members_; }

  std::vector<EdgeId> sorted() const {
    std::vector<EdgeId> v = members_;
    std::sort(v.begin(), v.end());
    return v;
  }

  Cost total_cost(const Digraph& g) const {
    Cost sum = 0;
    for (EdgeId e : members_) sum += g.edge(e).cost;
    return sum;
  }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.sorted() == b.sorted();
  }

 private:
  std::vector<bool> bits_;
  std::vector<EdgeId> members_;
};

// A reference to an edge traversed forward or, in residual graphs, in the
// reversed direction with negated cost.
struct OrientedEdge {
  EdgeId edge = kNoEdge;
  bool forward = true;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

inline Vertex tail_of(const Digraph& g, OrientedEdge e) {
  const EdgeRecord& r = g.edge(e.edge);
  return e.forward ? r.tail : r.head;
}

inline Vertex head_of(const Digraph& g, OrientedEdge e) {
  const EdgeRecord& r = g.edge(e.edge);
  return e.forward ? r.head : r.tail;
}

inline Cost signed_cost(const Digraph& g, OrientedEdge e) {
  const EdgeRecord& r = g.edge(e.edge);
  return e.forward ? r.cost : -r.cost;
}

// Lexicographic cost of one oriented edge. The hop component is 1 exactly
// for forward edges outside the preserver; reversed edges always belong to
// the current solution set and therefore to the preserver, so they never
// contribute a hop.
inline LexCost oriented_cost(const Digraph& g, OrientedEdge e,
                             const EdgeSet& preserver) {
  if (e.edge < 0 || e.edge >= g.num_edges())
    throw std::invalid_argument("oriented_cost: invalid edge id " +
                                std::to_string(e.edge));
  Cost hop = (e.forward && !preserver.contains(e.edge)) ? 1 : 0;
  return {signed_cost(g, e), hop};
}

}  // namespace edp
