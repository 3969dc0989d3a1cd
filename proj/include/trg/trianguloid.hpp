// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_TRIANGULOID_HPP
#define TRG_TRIANGULOID_HPP

#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trg/graph.hpp"
#include "trg/lattice.hpp"
#include "trg/triangulation.hpp"

namespace trg {

/// Canonical index of the Gamma edges of one graph: edge ids follow the
/// (from-point, direction) lex order used by the serialization.
struct GammaIndex {
  std::shared_ptr<const LatticeContext> ctx;
  std::vector<GammaEdge> edges;
  std::vector<std::vector<int>> id_by_to;  // [pg point index][dir-1] -> id or -1

  static std::shared_ptr<const GammaIndex> build(std::shared_ptr<const LatticeContext> ctx) {
    auto gx = std::make_shared<GammaIndex>();
    gx->edges = gamma_edges(*ctx);
    const int m = ctx->graph().left_count();
    gx->id_by_to.assign(ctx->pg().size(), std::vector<int>(m, -1));
    for (std::size_t e = 0; e < gx->edges.size(); ++e) {
      int a = ctx->pg().index_of(gx->edges[e].to);
      gx->id_by_to[a][gx->edges[e].dir - 1] = static_cast<int>(e);
    }
    gx->ctx = std::move(ctx);
    return gx;
  }

  int id(int to_index, int dir) const { return id_by_to[to_index][dir - 1]; }
};

struct AxiomViolation {
  std::string axiom;      // "T1'", "T2'", "T3'", "T4'", "partition"
  Point at;               // the lattice point (or hexagon base c) involved
  std::vector<int> dirs;  // directions involved, 1-based
  std::string detail;
};

struct AxiomReport {
  bool t1 = true, t2 = true, t3 = true, t4 = true, partition = true;
  std::vector<AxiomViolation> violations;
  bool is_pre() const { return t1 && t2 && t3 && partition; }
  bool is_trianguloid() const { return is_pre() && t4; }
};

/// Map from Gamma edges to subsets of the right vertex set, stored as
/// bitmasks in canonical edge order. Nothing about the axioms is assumed;
/// run check_axioms to find out what holds.
class Trianguloid {
 public:
  Trianguloid(std::shared_ptr<const GammaIndex> gx, std::vector<Mask> entries)
      : gx_(std::move(gx)), entries_(std::move(entries)) {
    if (entries_.size() != gx_->edges.size())
      throw Error(Errc::InvalidInput, "entry vector does not match the Gamma edge count");
  }

  static Trianguloid empty(std::shared_ptr<const GammaIndex> gx) {
    std::vector<Mask> e(gx->edges.size(), 0);
    return Trianguloid(std::move(gx), std::move(e));
  }

  const BipartiteGraph& graph() const { return gx_->ctx->graph(); }
  const LatticeContext& context() const { return *gx_->ctx; }
  const GammaIndex& gamma() const { return *gx_; }
  std::shared_ptr<const GammaIndex> gamma_ptr() const { return gx_; }
  const std::vector<Mask>& entries() const { return entries_; }

  /// Entry on the edge into `a` in direction `dir`; absent edges read as the
  /// empty set.
  Mask entry_into(const Point& a, int dir) const {
    int idx = gx_->ctx->pg().index_of(a);
    if (idx < 0) return 0;
    return entry_into(idx, dir);
  }
  Mask entry_into(int to_index, int dir) const {
    int id = gx_->id(to_index, dir);
    return id < 0 ? 0 : entries_[id];
  }

  friend bool operator==(const Trianguloid& a, const Trianguloid& b) {
    return a.graph() == b.graph() && a.entries_ == b.entries_;
  }

 private:
  std::shared_ptr<const GammaIndex> gx_;
  std::vector<Mask> entries_;
};

namespace detail {

inline std::string point_str(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
  os << ')';
  return os.str();
}

inline Point plus_e(const Point& p, int dir) {
  Point q = p;
  ++q[dir - 1];
  return q;
}

}  // namespace detail

/// One hexagon instance of the T4' axiom: base c with c + e_i and c + e_k in
/// P_G^- (i < k) and a middle direction j. The three surrounding lattice
/// points of P_G are X = c+e_i+e_j, Y = c+e_j+e_k, Z = c+e_i+e_k; the axiom
/// compares the entries (X,j) vs (Y,j), (Z,k) vs (Y,k), (X,i) vs (Z,i).
struct Hexagon {
  Point c;
  int i = 0, j = 0, k = 0;
  int xi = -1, yi = -1, zi = -1;  // pg indices of X, Y, Z
};

inline std::vector<Hexagon> enumerate_hexagons(const LatticeContext& ctx) {
  const int m = ctx.graph().left_count();
  std::set<Point> bases;
  for (const Point& b : ctx.pgminus())
    for (int i = 1; i <= m; ++i) {
      Point c = b;
      --c[i - 1];
      bases.insert(std::move(c));
    }
  std::vector<Hexagon> out;
  for (const Point& c : bases) {
    std::vector<int> lifts;
    for (int i = 1; i <= m; ++i)
      if (ctx.pgminus().contains(detail::plus_e(c, i))) lifts.push_back(i);
    for (std::size_t p = 0; p < lifts.size(); ++p)
      for (std::size_t q = p + 1; q < lifts.size(); ++q)
        for (int j = 1; j <= m; ++j) {
          if (j == lifts[p] || j == lifts[q]) continue;
          Hexagon h;
          h.c = c;
          h.i = lifts[p];
          h.j = j;
          h.k = lifts[q];
          h.xi = ctx.pg().index_of(detail::plus_e(detail::plus_e(c, h.i), j));
          h.yi = ctx.pg().index_of(detail::plus_e(detail::plus_e(c, j), h.k));
          h.zi = ctx.pg().index_of(detail::plus_e(detail::plus_e(c, h.i), h.k));
          if (h.xi < 0 || h.yi < 0 || h.zi < 0)
            throw Error(Errc::Internal, "hexagon corner escaped P_G");
          out.push_back(std::move(h));
        }
  }
  return out;
}

inline AxiomReport check_axioms(const Trianguloid& t) {
  const LatticeContext& ctx = t.context();
  const BipartiteGraph& g = ctx.graph();
  const int m = g.left_count(), n = g.right_count();
  const Mask all = full_mask(n);
  AxiomReport rep;

  // T1': cardinality per edge
  for (std::size_t e = 0; e < t.gamma().edges.size(); ++e) {
    const GammaEdge& ge = t.gamma().edges[e];
    int want = ge.to[ge.dir - 1];
    if (std::popcount(t.entries()[e]) != want) {
      rep.t1 = false;
      rep.violations.push_back({"T1'", ge.to, {ge.dir},
                                "entry size " + std::to_string(std::popcount(t.entries()[e])) +
                                    ", expected " + std::to_string(want)});
    }
  }

  for (std::size_t ai = 0; ai < ctx.pg().size(); ++ai) {
    const Point& a = ctx.pg()[ai];
    // T2': every right vertex is covered at a by a neighboring direction
    for (int j = 1; j <= n; ++j) {
      bool covered = false;
      Mask nb = g.right_neighborhood(j);
      while (nb && !covered) {
        int i = std::countr_zero(nb) + 1;
        nb &= nb - 1;
        covered = t.entry_into(static_cast<int>(ai), i) >> (j - 1) & 1;
      }
      if (!covered) {
        rep.t2 = false;
        rep.violations.push_back({"T2'", a, {j}, "right vertex not covered at this point"});
      }
    }
    // partition: the m sets at a are pairwise disjoint and exhaust the right side
    Mask seen = 0;
    bool overlap = false;
    int total = 0;
    for (int i = 1; i <= m; ++i) {
      Mask e = t.entry_into(static_cast<int>(ai), i);
      overlap |= (seen & e) != 0;
      seen |= e;
      total += std::popcount(e);
    }
    if (overlap || seen != all || total != n) {
      rep.partition = false;
      rep.violations.push_back({"partition", a, {}, "entries at this point do not partition the right side"});
    }
  }

  // T3': containment along exchange steps
  for (std::size_t ai = 0; ai < ctx.pg().size(); ++ai) {
    const Point& a = ctx.pg()[ai];
    for (int i = 1; i <= m; ++i) {
      if (a[i - 1] == 0) continue;
      for (int j = 1; j <= m; ++j) {
        if (j == i || a[j - 1] == 0) continue;
        Point a2 = a;
        ++a2[i - 1];
        --a2[j - 1];
        int a2i = ctx.pg().index_of(a2);
        if (a2i < 0) continue;
        Mask lo = t.entry_into(static_cast<int>(ai), i);
        Mask hi = t.entry_into(a2i, i);
        if (lo & ~hi) {
          rep.t3 = false;
          rep.violations.push_back({"T3'", a, {i, j}, "entry not contained in its exchange successor"});
        }
      }
    }
  }

  // T4' (hexagon)
  for (const Hexagon& h : enumerate_hexagons(ctx)) {
    if (t.entry_into(h.xi, h.j) == t.entry_into(h.yi, h.j)) continue;
    bool ok = ctx.pgminus().contains(detail::plus_e(h.c, h.j)) &&
              t.entry_into(h.zi, h.k) == t.entry_into(h.yi, h.k) &&
              t.entry_into(h.xi, h.i) == t.entry_into(h.zi, h.i);
    if (!ok) {
      rep.t4 = false;
      rep.violations.push_back({"T4'", h.c, {h.i, h.j, h.k}, "hexagon conclusion fails"});
    }
  }
  return rep;
}

/// The tree read off a pre-trianguloid at b: edges (i, j) with j in the entry
/// of b ->_i.
inline Subgraph tree_of_unchecked(const Trianguloid& t, const Point& b) {
  const int m = t.graph().left_count(), n = t.graph().right_count();
  std::vector<Mask> rows(m, 0);
  for (int i = 1; i <= m; ++i) rows[i - 1] = t.entry_into(detail::plus_e(b, i), i);
  return Subgraph::from_rows(n, std::move(rows));
}

inline Subgraph tree_of(const Trianguloid& t, const Point& b) {
  if (!t.context().pgminus().contains(b))
    throw Error(Errc::InvalidInput, "point is not in P_G^-");
  if (!check_axioms(t).is_pre())
    throw Error(Errc::NotPreTrianguloid, "map violates a pre-trianguloid axiom");
  Subgraph out = tree_of_unchecked(t, b);
  if (!classify(out).is_spanning_tree)
    throw Error(Errc::Internal, "pre-trianguloid produced a non-tree");
  return out;
}

/// Encode a triangulation as the map sending each incoming direction of a
/// lattice point of P_G to the neighborhood of that direction in the right
/// semi-matching indexed by the point.
inline Trianguloid from_triangulation(const Triangulation& tau) {
  auto gx = GammaIndex::build(tau.context_ptr());
  std::map<Point, Subgraph> rsm_by_ld;
  for (Subgraph& f : rsm_set(tau)) rsm_by_ld.insert({ld(f), std::move(f)});
  if (rsm_by_ld.size() != tau.context().pg().size())
    throw Error(Errc::Internal, "right semi-matchings do not index P_G");
  std::vector<Mask> entries(gx->edges.size());
  for (std::size_t e = 0; e < gx->edges.size(); ++e) {
    const GammaEdge& ge = gx->edges[e];
    entries[e] = rsm_by_ld.at(ge.to).row(ge.dir);
  }
  return Trianguloid(std::move(gx), std::move(entries));
}

inline Triangulation to_triangulation(const Trianguloid& t) {
  AxiomReport rep = check_axioms(t);
  if (!rep.is_trianguloid())
    throw Error(Errc::NotTrianguloid, "map violates a trianguloid axiom");
  std::vector<Subgraph> trees;
  trees.reserve(t.context().pgminus().size());
  for (const Point& b : t.context().pgminus()) trees.push_back(tree_of_unchecked(t, b));
  try {
    return validate(t.gamma().ctx, trees);
  } catch (const Error& e) {
    throw Error(Errc::ValidationFailed, std::string("trianguloid trees failed validation: ") + e.what());
  }
}

/// Lattice points of P_G that receive label j from some point of P_G^-.
inline PointSet label_support(const Trianguloid& t, int j) {
  if (!check_axioms(t).is_pre())
    throw Error(Errc::NotPreTrianguloid, "map violates a pre-trianguloid axiom");
  const int m = t.graph().left_count();
  std::vector<Point> pts;
  for (const Point& b : t.context().pgminus())
    for (int i = 1; i <= m; ++i) {
      Point a = detail::plus_e(b, i);
      if (t.entry_into(a, i) >> (j - 1) & 1) pts.push_back(std::move(a));
    }
  return PointSet(std::move(pts));
}

struct ColoredLambdaEdge {
  Point from;
  Point to;
  int color = 0;  // right vertex, 1-based
  friend auto operator<=>(const ColoredLambdaEdge&, const ColoredLambdaEdge&) = default;
};

struct EdgeColoring {
  BipartiteGraph graph;
  std::vector<ColoredLambdaEdge> colors;  // sorted by (from, to)
};

/// The exchange-edge coloring of a pre-trianguloid on a complete graph: the
/// step b -> b + e_i - e_j grows the direction-i entry by exactly one right
/// vertex, which becomes the color.
inline EdgeColoring encode_coloring(const Trianguloid& t) {
  if (!t.graph().is_complete())
    throw Error(Errc::NotComplete, "edge coloring is defined for complete graphs");
  if (!check_axioms(t).is_pre())
    throw Error(Errc::NotPreTrianguloid, "map violates a pre-trianguloid axiom");
  EdgeColoring out{t.graph(), {}};
  for (const LambdaEdge& le : lambda_edges(t.context())) {
    Mask lo = t.entry_into(detail::plus_e(le.from, le.add_dir), le.add_dir);
    Mask hi = t.entry_into(detail::plus_e(le.to, le.add_dir), le.add_dir);
    Mask diff = hi & ~lo;
    if ((lo & ~hi) || std::popcount(diff) != 1)
      throw Error(Errc::Internal, "entry increment along an exchange edge is not a singleton");
    out.colors.push_back({le.from, le.to, std::countr_zero(diff) + 1});
  }
  std::sort(out.colors.begin(), out.colors.end());
  return out;
}

/// Rebuild the pre-trianguloid from its exchange coloring. Entries in each
/// direction i are accumulated down monotone chains from the corner
/// (n-1) e_i, where the entry is the full right side; every exchange edge is
/// then re-verified against the reconstruction.
inline Trianguloid decode_coloring(const BipartiteGraph& g, const EdgeColoring& coloring) {
  if (!g.is_complete()) throw Error(Errc::NotComplete, "edge coloring is defined for complete graphs");
  if (!(coloring.graph == g)) throw Error(Errc::InvalidInput, "coloring is for a different graph");
  const int m = g.left_count(), n = g.right_count();
  auto gx = GammaIndex::build(std::make_shared<LatticeContext>(g));
  const LatticeContext& ctx = *gx->ctx;

  std::map<std::pair<Point, Point>, int> color;
  for (const ColoredLambdaEdge& ce : coloring.colors) {
    if (ce.color < 1 || ce.color > n) throw Error(Errc::InvalidInput, "color out of range");
    if (!color.insert({{ce.from, ce.to}, ce.color}).second)
      throw Error(Errc::InconsistentColoring, "duplicate exchange edge in coloring");
  }
  const std::vector<LambdaEdge> ledges = lambda_edges(ctx);
  if (color.size() != ledges.size())
    throw Error(Errc::InconsistentColoring, "coloring does not cover the exchange graph exactly");
  for (const LambdaEdge& le : ledges)
    if (!color.count({le.from, le.to}))
      throw Error(Errc::InconsistentColoring, "missing exchange edge " + detail::point_str(le.from) +
                                                  " -> " + detail::point_str(le.to));

  // E[b index][i-1] = entry of b ->_i
  const PointSet& pm = ctx.pgminus();
  std::vector<std::vector<Mask>> entry(pm.size(), std::vector<Mask>(m, 0));
  std::vector<std::vector<bool>> known(pm.size(), std::vector<bool>(m, false));
  for (int i = 1; i <= m; ++i) {
    // points in descending i-th coordinate
    std::vector<int> order(pm.size());
    for (std::size_t k = 0; k < pm.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (pm[x][i - 1] != pm[y][i - 1]) return pm[x][i - 1] > pm[y][i - 1];
      return pm[x] < pm[y];
    });
    for (int bi : order) {
      const Point& b = pm[bi];
      if (b[i - 1] == n - 1) {
        entry[bi][i - 1] = full_mask(n);
        known[bi][i - 1] = true;
        continue;
      }
      int j = 0;
      for (int cand = 1; cand <= m; ++cand)
        if (cand != i && b[cand - 1] > 0) {
          j = cand;
          break;
        }
      Point up = b;
      ++up[i - 1];
      --up[j - 1];
      int ui = pm.index_of(up);
      if (ui < 0 || !known[ui][i - 1]) throw Error(Errc::Internal, "chain predecessor missing");
      int c = color.at({b, up});
      if (!(entry[ui][i - 1] >> (c - 1) & 1))
        throw Error(Errc::InconsistentColoring,
                    "color " + std::to_string(c) + " absent above " + detail::point_str(b));
      entry[bi][i - 1] = entry[ui][i - 1] & ~(Mask{1} << (c - 1));
      known[bi][i - 1] = true;
    }
  }

  // every exchange edge must agree with the reconstruction
  for (const LambdaEdge& le : ledges) {
    int bi = pm.index_of(le.from), ci = pm.index_of(le.to);
    Mask lo = entry[bi][le.add_dir - 1];
    Mask hi = entry[ci][le.add_dir - 1];
    int c = color.at({le.from, le.to});
    if ((lo & ~hi) || (hi & ~lo) != (Mask{1} << (c - 1)))
      throw Error(Errc::InconsistentColoring, "exchange edge " + detail::point_str(le.from) + " -> " +
                                                  detail::point_str(le.to) + " disagrees with reconstruction");
  }

  std::vector<Mask> entries(gx->edges.size(), 0);
  for (std::size_t e = 0; e < gx->edges.size(); ++e) {
    const GammaEdge& ge = gx->edges[e];
    int bi = pm.index_of(ge.from);
    if (bi < 0) throw Error(Errc::Internal, "Gamma edge source outside P_G^- on a complete graph");
    entries[e] = entry[bi][ge.dir - 1];
  }
  Trianguloid out(std::move(gx), std::move(entries));
  AxiomReport rep = check_axioms(out);
  if (!rep.is_pre())
    throw Error(Errc::InconsistentColoring, "reconstructed map violates a pre-trianguloid axiom");
  return out;
}

}  // namespace trg

#endif  // TRG_TRIANGULOID_HPP
