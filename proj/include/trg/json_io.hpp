// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_JSON_IO_HPP
#define TRG_JSON_IO_HPP

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trg/graph.hpp"
#include "trg/lattice.hpp"
#include "trg/triangulation.hpp"
#include "trg/trianguloid.hpp"

namespace trg {

using Json = nlohmann::json;

// ---- graphs ----------------------------------------------------------
// {"m": int, "n": int, "neighborhoods": [[int,...], ...]}

inline Json to_json(const BipartiteGraph& g) {
  Json nb = Json::array();
  for (int j = 1; j <= g.right_count(); ++j) {
    Json one = Json::array();
    Mask r = g.right_neighborhood(j);
    while (r) {
      one.push_back(std::countr_zero(r) + 1);
      r &= r - 1;
    }
    nb.push_back(std::move(one));
  }
  return Json{{"m", g.left_count()}, {"n", g.right_count()}, {"neighborhoods", std::move(nb)}};
}

inline BipartiteGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("neighborhoods"))
    throw Error(Errc::InvalidInput, "graph object needs m, n, neighborhoods");
  std::vector<std::vector<int>> nb = j.at("neighborhoods").get<std::vector<std::vector<int>>>();
  return BipartiteGraph::create(j.at("m").get<int>(), j.at("n").get<int>(), nb);
}

// ---- subgraphs -------------------------------------------------------
// edge lists [[i, j], ...] in lex order

inline Json edges_to_json(const Subgraph& f) {
  Json out = Json::array();
  for (const Edge& e : f.edges()) out.push_back(Json::array({e.i, e.j}));
  return out;
}

inline Subgraph subgraph_from_json(const BipartiteGraph& g, const Json& j) {
  std::vector<Edge> edges;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::InvalidInput, "edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Subgraph::of(g, edges);
}

/// {"edges": [[i, j], ...]} — the standalone subgraph file format.
inline Json subgraph_file_json(const Subgraph& f) { return Json{{"edges", edges_to_json(f)}}; }

inline Subgraph subgraph_from_file_json(const BipartiteGraph& g, const Json& j) {
  if (!j.is_object() || !j.contains("edges"))
    throw Error(Errc::InvalidInput, "subgraph object needs an edges array");
  return subgraph_from_json(g, j.at("edges"));
}

// ---- collections -----------------------------------------------------
// {"graph": {...}, "subgraphs": [ [[i, j], ...], ... ]}

struct Collection {
  BipartiteGraph graph;
  std::vector<Subgraph> subgraphs;
};

inline Json to_json(const Collection& c) {
  Json arr = Json::array();
  for (const Subgraph& f : c.subgraphs) arr.push_back(edges_to_json(f));
  return Json{{"graph", to_json(c.graph)}, {"subgraphs", std::move(arr)}};
}

inline Collection collection_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("subgraphs"))
    throw Error(Errc::InvalidInput, "collection object needs graph and subgraphs");
  Collection c{graph_from_json(j.at("graph")), {}};
  for (const Json& one : j.at("subgraphs")) c.subgraphs.push_back(subgraph_from_json(c.graph, one));
  return c;
}

// ---- triangulations --------------------------------------------------
// {"graph": {...}, "trees": [{"ld_minus": [...], "edges": [[i,j],...]}, ...]}
// canonical order: trees sorted by ld_minus

inline Json to_json(const Triangulation& tau) {
  Json trees = Json::array();
  for (std::size_t k = 0; k < tau.size(); ++k) {
    trees.push_back(Json{{"ld_minus", tau.points()[k]}, {"edges", edges_to_json(tau.trees()[k])}});
  }
  return Json{{"graph", to_json(tau.graph())}, {"trees", std::move(trees)}};
}

/// Raw tree family of a triangulation file, before validation.
inline std::pair<BipartiteGraph, std::vector<Subgraph>> triangulation_input_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("trees"))
    throw Error(Errc::InvalidInput, "triangulation object needs graph and trees");
  BipartiteGraph g = graph_from_json(j.at("graph"));
  std::vector<Subgraph> trees;
  for (const Json& t : j.at("trees")) {
    if (!t.is_object() || !t.contains("edges"))
      throw Error(Errc::InvalidInput, "tree object needs an edges array");
    trees.push_back(subgraph_from_json(g, t.at("edges")));
    if (t.contains("ld_minus")) {
      Point stated = t.at("ld_minus").get<Point>();
      if (stated != ld_minus(trees.back()))
        throw Error(Errc::InvalidInput, "stated ld_minus does not match the tree");
    }
  }
  return {std::move(g), std::move(trees)};
}

inline Triangulation triangulation_from_json(const Json& j) {
  auto [g, trees] = triangulation_input_from_json(j);
  return validate(g, trees);
}

// ---- trianguloids ----------------------------------------------------
// {"graph": {...}, "entries": [{"from": [...], "dir": i, "set": [j,...]}, ...]}
// canonical order: entries sorted by (from, dir); empty entries omitted only
// at absent edges

inline Json to_json(const Trianguloid& t) {
  Json entries = Json::array();
  for (std::size_t e = 0; e < t.gamma().edges.size(); ++e) {
    const GammaEdge& ge = t.gamma().edges[e];
    Json set = Json::array();
    Mask s = t.entries()[e];
    while (s) {
      set.push_back(std::countr_zero(s) + 1);
      s &= s - 1;
    }
    entries.push_back(Json{{"from", ge.from}, {"dir", ge.dir}, {"set", std::move(set)}});
  }
  return Json{{"graph", to_json(t.graph())}, {"entries", std::move(entries)}};
}

inline Trianguloid trianguloid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("entries"))
    throw Error(Errc::InvalidInput, "trianguloid object needs graph and entries");
  BipartiteGraph g = graph_from_json(j.at("graph"));
  auto gx = GammaIndex::build(std::make_shared<LatticeContext>(g));
  const int n = g.right_count();
  std::vector<Mask> entries(gx->edges.size(), 0);
  std::vector<bool> seen(gx->edges.size(), false);
  for (const Json& e : j.at("entries")) {
    if (!e.is_object() || !e.contains("from") || !e.contains("dir") || !e.contains("set"))
      throw Error(Errc::InvalidInput, "entry object needs from, dir, set");
    Point from = e.at("from").get<Point>();
    int dir = e.at("dir").get<int>();
    if (dir < 1 || dir > g.left_count()) throw Error(Errc::InvalidInput, "entry dir out of range");
    Point to = from;
    ++to[dir - 1];
    int ti = gx->ctx->pg().index_of(to);
    int id = ti < 0 ? -1 : gx->id(ti, dir);
    if (id < 0)
      throw Error(Errc::InvalidInput, "entry names a step that is not an edge of the lattice graph");
    if (seen[id]) throw Error(Errc::InvalidInput, "duplicate entry for one edge");
    seen[id] = true;
    Mask s = 0;
    for (const Json& v : e.at("set")) {
      int jr = v.get<int>();
      if (jr < 1 || jr > n) throw Error(Errc::InvalidInput, "entry set element out of range");
      s |= Mask{1} << (jr - 1);
    }
    entries[id] = s;
  }
  return Trianguloid(std::move(gx), std::move(entries));
}

// ---- edge colorings ---------------------------------------------------
// {"graph": {...}, "colors": [{"from": [...], "to": [...], "color": j}, ...]}

inline Json to_json(const EdgeColoring& c) {
  Json colors = Json::array();
  for (const ColoredLambdaEdge& e : c.colors)
    colors.push_back(Json{{"from", e.from}, {"to", e.to}, {"color", e.color}});
  return Json{{"graph", to_json(c.graph)}, {"colors", std::move(colors)}};
}

inline EdgeColoring coloring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("colors"))
    throw Error(Errc::InvalidInput, "coloring object needs graph and colors");
  EdgeColoring c{graph_from_json(j.at("graph")), {}};
  for (const Json& e : j.at("colors")) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("color"))
      throw Error(Errc::InvalidInput, "color object needs from, to, color");
    c.colors.push_back({e.at("from").get<Point>(), e.at("to").get<Point>(), e.at("color").get<int>()});
  }
  std::sort(c.colors.begin(), c.colors.end());
  return c;
}

// ---- files -------------------------------------------------------------

inline std::string canonical_dump(const Json& j) { return j.dump(1) + "\n"; }

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace trg

#endif  // TRG_JSON_IO_HPP
