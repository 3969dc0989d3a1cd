// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_TILING_HPP
#define TRG_TILING_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trg/graph.hpp"
#include "trg/lattice.hpp"
#include "trg/trianguloid.hpp"

namespace trg {

/// Segment of the m = 3 picture. Solid segments (label 0) connect points of
/// coordinate sum n and build the lozenge tiling; dashed segments carry a
/// right-vertex label and build the tropical pseudolines on points of sum
/// n - 1.
struct TilingSegment {
  bool dashed = false;
  Point a, b;     // endpoints, lex-ordered so a <= b
  int label = 0;  // right vertex for dashed segments, 0 for solid
  friend auto operator<=>(const TilingSegment&, const TilingSegment&) = default;
};

namespace detail {

inline void require_tiling_input(const Trianguloid& t) {
  if (t.graph().left_count() != 3)
    throw Error(Errc::NotThreeRows, "the picture is defined for three left vertices");
  if (!t.graph().is_complete())
    throw Error(Errc::NotComplete, "the picture is defined for complete graphs");
  if (!check_axioms(t).is_trianguloid())
    throw Error(Errc::NotTrianguloid, "map violates a trianguloid axiom");
}

inline TilingSegment seg(Point a, Point b, bool dashed, int label) {
  if (b < a) std::swap(a, b);
  return {dashed, std::move(a), std::move(b), label};
}

/// For each geometric hexagon (base c >= 0, sum n-2) of a valid m = 3
/// trianguloid there is exactly one middle direction j whose two entries
/// differ; i and k are the other two directions.
struct HexagonShape {
  Point c;
  int middle = 0;          // j
  int side1 = 0, side2 = 0;  // i < k
  Mask diff_from_side1 = 0;  // entry(c+e_i ->_j) \ entry(c+e_k ->_j), a singleton
  Mask diff_from_side2 = 0;  // the reverse difference
};

inline std::vector<HexagonShape> hexagon_shapes(const Trianguloid& t) {
  require_tiling_input(t);
  const LatticeContext& ctx = t.context();
  std::map<Point, HexagonShape> by_base;
  for (const Hexagon& h : enumerate_hexagons(ctx)) {
    Mask ea = t.entry_into(h.xi, h.j);
    Mask eb = t.entry_into(h.yi, h.j);
    if (ea == eb) continue;
    HexagonShape s;
    s.c = h.c;
    s.middle = h.j;
    s.side1 = h.i;
    s.side2 = h.k;
    s.diff_from_side1 = ea & ~eb;
    s.diff_from_side2 = eb & ~ea;
    if (std::popcount(s.diff_from_side1) != 1 || std::popcount(s.diff_from_side2) != 1)
      throw Error(Errc::Internal, "middle entries of a hexagon differ by more than one label");
    auto [it, fresh] = by_base.insert({h.c, s});
    if (!fresh) throw Error(Errc::Internal, "two middle directions in one hexagon");
  }
  // every nonnegative base of sum n-2 must have produced exactly one middle
  std::size_t expected = 0;
  for (const Hexagon& h : enumerate_hexagons(ctx)) {
    bool nonneg = std::all_of(h.c.begin(), h.c.end(), [](int v) { return v >= 0; });
    if (nonneg && h.j == 1) ++expected;  // one per base (j enumerates all three)
  }
  if (by_base.size() != expected)
    throw Error(Errc::Internal, "some hexagon has no differing middle direction");
  std::vector<HexagonShape> out;
  out.reserve(by_base.size());
  for (auto& [c, s] : by_base) out.push_back(std::move(s));
  return out;
}

}  // namespace detail

/// Solid segments: two per hexagon, radiating from c + e_i + e_k (the corner
/// opposite the middle direction), plus the unit boundary segments of the
/// big triangle.
inline std::vector<TilingSegment> tiling_segments(const Trianguloid& t) {
  std::vector<TilingSegment> out;
  const int n = t.graph().right_count();
  for (const detail::HexagonShape& s : detail::hexagon_shapes(t)) {
    Point corner = detail::plus_e(detail::plus_e(s.c, s.side1), s.side2);
    Point x = detail::plus_e(detail::plus_e(s.c, s.side1), s.middle);
    Point y = detail::plus_e(detail::plus_e(s.c, s.side2), s.middle);
    out.push_back(detail::seg(corner, x, false, 0));
    out.push_back(detail::seg(corner, y, false, 0));
  }
  // boundary of n * triangle: unit steps along each side
  for (int s = 0; s < 3; ++s) {
    int t1 = (s + 1) % 3;
    for (int step = 0; step < n; ++step) {
      Point a(3, 0), b(3, 0);
      a[s] = n - step;
      a[t1] = step;
      b[s] = n - step - 1;
      b[t1] = step + 1;
      out.push_back(detail::seg(a, b, false, 0));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Dashed pseudoline segments, one pair per hexagon, labeled by the two
/// middle-entry differences.
inline std::vector<TilingSegment> pseudoline_segments(const Trianguloid& t) {
  std::vector<TilingSegment> out;
  for (const detail::HexagonShape& s : detail::hexagon_shapes(t)) {
    Point pj = detail::plus_e(s.c, s.middle);
    Point pi = detail::plus_e(s.c, s.side1);
    Point pk = detail::plus_e(s.c, s.side2);
    out.push_back(detail::seg(pi, pj, true, std::countr_zero(s.diff_from_side1) + 1));
    out.push_back(detail::seg(pk, pj, true, std::countr_zero(s.diff_from_side2) + 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Face structure of the solid picture, for verification: one lozenge per
/// hexagon (its down triangle glued to the up triangle at c + e_middle) and
/// the left-over up triangles.
struct TilingFaces {
  std::vector<std::pair<Point, int>> lozenges;  // (base c, middle direction)
  std::vector<Point> upright;                   // up triangle at d: vertices d + e_i
  bool partitions = false;                      // glued up-triangles pairwise distinct
};

inline TilingFaces tiling_faces(const Trianguloid& t) {
  TilingFaces faces;
  std::set<Point> used;
  faces.partitions = true;
  for (const detail::HexagonShape& s : detail::hexagon_shapes(t)) {
    Point up = detail::plus_e(s.c, s.middle);
    faces.lozenges.push_back({s.c, s.middle});
    if (!used.insert(up).second) faces.partitions = false;
  }
  // up triangles sit at the nonnegative points of sum n-1
  for (const Point& d : t.context().pgminus())
    if (!used.count(d)) faces.upright.push_back(d);
  return faces;
}

struct RenderStyle {
  double unit = 46.0;
  double margin = 30.0;
  bool layer_tiling = true;
  bool layer_pseudolines = true;
  bool layer_trianguloid = false;
};

namespace detail {

struct XY {
  double x = 0, y = 0;
};

inline XY project(const Point& p, double unit) {
  // u_1, u_2, u_3 at 120 degrees with u_1 + u_2 + u_3 = 0; svg y grows down
  static const double ux[3] = {-0.8660254037844387, 0.8660254037844387, 0.0};
  static const double uy[3] = {-0.5, -0.5, 1.0};
  XY q;
  for (int i = 0; i < 3; ++i) {
    q.x += p[i] * ux[i] * unit;
    q.y -= p[i] * uy[i] * unit;
  }
  return q;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* label_color(int label) {
  static const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad",
                                  "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};
  return palette[(label - 1) % 8];
}

}  // namespace detail

/// Deterministic standalone SVG of the superposed lozenge tiling, pseudoline
/// arrangement and (optionally) the trianguloid arrows.
inline std::string render_svg(const Trianguloid& t, const RenderStyle& style = {}) {
  detail::require_tiling_input(t);
  const int n = t.graph().right_count();
  const double u = style.unit;
  const double r = n * u + style.margin;
  std::ostringstream svg;
  auto at = [&](const Point& p) { return detail::project(p, u); };

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::fmt(-r) << ' '
      << detail::fmt(-r) << ' ' << detail::fmt(2 * r) << ' ' << detail::fmt(2 * r) << "\">\n";
  svg << "<rect x=\"" << detail::fmt(-r) << "\" y=\"" << detail::fmt(-r) << "\" width=\""
      << detail::fmt(2 * r) << "\" height=\"" << detail::fmt(2 * r) << "\" fill=\"white\"/>\n";

  if (style.layer_tiling) {
    svg << "<g stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\">\n";
    for (const TilingSegment& s : tiling_segments(t)) {
      detail::XY a = at(s.a), b = at(s.b);
      svg << "<line x1=\"" << detail::fmt(a.x) << "\" y1=\"" << detail::fmt(a.y) << "\" x2=\""
          << detail::fmt(b.x) << "\" y2=\"" << detail::fmt(b.y) << "\"/>\n";
    }
    svg << "</g>\n";
  }

  if (style.layer_pseudolines) {
    svg << "<g stroke-width=\"2\" stroke-dasharray=\"6 4\" fill=\"none\">\n";
    for (const TilingSegment& s : pseudoline_segments(t)) {
      detail::XY a = at(s.a), b = at(s.b);
      svg << "<line stroke=\"" << detail::label_color(s.label) << "\" x1=\"" << detail::fmt(a.x)
          << "\" y1=\"" << detail::fmt(a.y) << "\" x2=\"" << detail::fmt(b.x) << "\" y2=\""
          << detail::fmt(b.y) << "\"/>\n";
      svg << "<text fill=\"" << detail::label_color(s.label) << "\" font-size=\""
          << detail::fmt(u * 0.28) << "\" x=\"" << detail::fmt((a.x + b.x) / 2 + u * 0.06)
          << "\" y=\"" << detail::fmt((a.y + b.y) / 2 - u * 0.06) << "\">" << s.label
          << "</text>\n";
    }
    svg << "</g>\n";
  }

  if (style.layer_trianguloid) {
    svg << "<g stroke=\"#555555\" stroke-width=\"1.2\" font-size=\"" << detail::fmt(u * 0.22)
        << "\">\n";
    for (std::size_t e = 0; e < t.gamma().edges.size(); ++e) {
      const GammaEdge& ge = t.gamma().edges[e];
      if (t.entries()[e] == 0) continue;
      detail::XY a = at(ge.from), b = at(ge.to);
      double mx = a.x + (b.x - a.x) * 0.82, my = a.y + (b.y - a.y) * 0.82;
      svg << "<line x1=\"" << detail::fmt(a.x) << "\" y1=\"" << detail::fmt(a.y) << "\" x2=\""
          << detail::fmt(mx) << "\" y2=\"" << detail::fmt(my) << "\"/>\n";
      svg << "<text fill=\"#555555\" stroke=\"none\" x=\"" << detail::fmt(mx) << "\" y=\""
          << detail::fmt(my) << "\">";
      Mask s = t.entries()[e];
      bool first = true;
      while (s) {
        svg << (first ? "" : ",") << std::countr_zero(s) + 1;
        first = false;
        s &= s - 1;
      }
      svg << "</text>\n";
    }
    svg << "</g>\n";
  }

  // lattice nodes: black for sum n, white for sum n-1
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  for (const Point& a : t.context().pg()) {
    detail::XY q = at(a);
    svg << "<circle cx=\"" << detail::fmt(q.x) << "\" cy=\"" << detail::fmt(q.y) << "\" r=\""
        << detail::fmt(u * 0.07) << "\" fill=\"black\"/>\n";
  }
  for (const Point& b : t.context().pgminus()) {
    detail::XY q = at(b);
    svg << "<circle cx=\"" << detail::fmt(q.x) << "\" cy=\"" << detail::fmt(q.y) << "\" r=\""
        << detail::fmt(u * 0.09) << "\" fill=\"white\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace trg

#endif  // TRG_TILING_HPP
