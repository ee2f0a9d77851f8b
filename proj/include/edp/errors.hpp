// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace edp {

// Base class for all recoverable library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text; `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Some vertex has no path from the source at all.
struct UnreachableVertexError : Error {
  int vertex;
  explicit UnreachableVertexError(int v)
      : Error("vertex " + std::to_string(v) + " is unreachable from the source"),
        vertex(v) {}
};

// The graph lacks the requested number of edge-disjoint paths to `vertex`.
struct NotOutconnectedError : Error {
  int vertex;
  int paths_required;
  NotOutconnectedError(int v, int k)
      : Error("vertex " + std::to_string(v) + " does not admit " +
              std::to_string(k) + " edge-disjoint paths from the source"),
        vertex(v),
        paths_required(k) {}
};

// A re-weighted edge cost came out negative. Signals an implementation bug
// (the potential tables are supposed to make every residual edge
// non-negative), never bad input.
struct NegativeReducedCostError : Error {
  using Error::Error;
};

// A target-tree distance came out cost-negative, which would imply a
// negative cycle in a residual graph of a min-cost flow. Bug, not input.
struct NegativeTreeDistanceError : Error {
  using Error::Error;
};

// Any other violated internal invariant.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace edp
