// SPDX-License-Identifier: Apache-2.0
#pragma once

// Line-oriented graph text format:
//   c <comment>             ignored
//   p edp <n> <m>           header, exactly once, first non-comment line
//   s <v>                   1-based source vertex, exactly once
//   a <tail> <head> <cost>  1-based endpoints, non-negative integer cost;
//                           exactly m such lines
// Vertices are renumbered to 0-based internally.

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "edp/graph.hpp"

namespace edp {

struct GraphFile {
  Digraph graph;
  Vertex source = 0;
};

namespace detail {

inline bool parse_integer(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t i = 0;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  try {
    std::size_t pos = 0;
    out = std::stoll(tok, &pos);
    return pos == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace detail

inline GraphFile parse_graph(std::istream& is) {
  bool have_header = false, have_source = false;
  long long n = 0, m = 0;
  Vertex source = 0;
  std::vector<EdgeRecord> edges;
  std::string line;
  int line_no = 0;

  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    if (kind == "c") continue;

    if (kind == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header line");
      std::string fmt, ntok, mtok, extra;
      if (!(ls >> fmt >> ntok >> mtok) || (ls >> extra))
        throw ParseError(line_no, "expected 'p edp <n> <m>'");
      if (fmt != "edp") throw ParseError(line_no, "unknown format '" + fmt + "'");
      if (!detail::parse_integer(ntok, n) || n < 1)
        throw ParseError(line_no, "bad vertex count '" + ntok + "'");
      if (!detail::parse_integer(mtok, m) || m < 0)
        throw ParseError(line_no, "bad edge count '" + mtok + "'");
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "expected header 'p edp <n> <m>' first");

    if (kind == "s") {
      if (have_source) throw ParseError(line_no, "duplicate source line");
      std::string vtok, extra;
      long long v = 0;
      if (!(ls >> vtok) || (ls >> extra) || !detail::parse_integer(vtok, v))
        throw ParseError(line_no, "expected 's <vertex>'");
      if (v < 1 || v > n)
        throw ParseError(line_no, "source vertex " + vtok + " out of range");
      source = static_cast<Vertex>(v - 1);
      have_source = true;
      continue;
    }
    if (kind == "a") {
      std::string ttok, htok, ctok, extra;
      if (!(ls >> ttok >> htok >> ctok) || (ls >> extra))
        throw ParseError(line_no, "expected 'a <tail> <head> <cost>'");
      long long t = 0, h = 0, c = 0;
      if (!detail::parse_integer(ttok, t) || t < 1 || t > n)
        throw ParseError(line_no, "tail vertex '" + ttok + "' out of range");
      if (!detail::parse_integer(htok, h) || h < 1 || h > n)
        throw ParseError(line_no, "head vertex '" + htok + "' out of range");
      if (!detail::parse_integer(ctok, c))
        throw ParseError(line_no, "cost '" + ctok +
                                      "' is not a non-negative integer");
      if (t == h) throw ParseError(line_no, "self-loop is not allowed");
      if (static_cast<long long>(edges.size()) == m)
        throw ParseError(line_no, "more than the declared " +
                                      std::to_string(m) + " edges");
      edges.push_back({static_cast<Vertex>(t - 1), static_cast<Vertex>(h - 1),
                       static_cast<Cost>(c)});
      continue;
    }
    throw ParseError(line_no, "unknown line kind '" + kind + "'");
  }

  if (!have_header) throw ParseError(line_no, "missing header line");
  if (!have_source) throw ParseError(line_no, "missing source line");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges but found " +
                                  std::to_string(edges.size()));
  return {Digraph(static_cast<Vertex>(n), std::move(edges)), source};
}

inline GraphFile parse_graph(const std::string& text) {
  std::istringstream is(text);
  return parse_graph(is);
}

inline void write_graph(std::ostream& os, const Digraph& g, Vertex source) {
  os << "p edp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  os << "s " << source + 1 << '\n';
  for (const EdgeRecord& r : g.edges())
    os << "a " << r.tail + 1 << ' ' << r.head + 1 << ' ' << r.cost << '\n';
}

inline std::string write_graph(const Digraph& g, Vertex source) {
  std::ostringstream os;
  write_graph(os, g, source);
  return os.str();
}

inline GraphFile load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return parse_graph(is);
}

inline void save_graph(const std::string& path, const Digraph& g, Vertex source) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_graph(os, g, source);
}

}  // namespace edp
