// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_TRIANGULATION_HPP
#define TRG_TRIANGULATION_HPP

#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trg/compat.hpp"
#include "trg/graph.hpp"
#include "trg/lattice.hpp"

namespace trg {

inline Point ld_minus(const Subgraph& t) { return degree_vector(t, Side::Left, true).entries; }
inline Point rd_minus(const Subgraph& t) { return degree_vector(t, Side::Right, true).entries; }
inline Point ld(const Subgraph& f) { return degree_vector(f, Side::Left, false).entries; }
inline Point rd(const Subgraph& f) { return degree_vector(f, Side::Right, false).entries; }

/// A triangulation of Q_G, stored as the family of spanning trees indexed by
/// the lattice points of P_G^-. Immutable after validation.
class Triangulation {
 public:
  const BipartiteGraph& graph() const { return ctx_->graph(); }
  const LatticeContext& context() const { return *ctx_; }
  std::shared_ptr<const LatticeContext> context_ptr() const { return ctx_; }

  /// Index points, lex-sorted; trees() is aligned with them.
  const PointSet& points() const { return ctx_->pgminus(); }
  const std::vector<Subgraph>& trees() const { return trees_; }
  std::size_t size() const { return trees_.size(); }

  const Subgraph& tree_at(const Point& b) const {
    int k = points().index_of(b);
    if (k < 0) throw Error(Errc::NotFound, "point is not in P_G^-");
    return trees_[k];
  }

  /// Content comparison key: the trees' rows in point order.
  std::vector<std::vector<Mask>> key() const {
    std::vector<std::vector<Mask>> k;
    k.reserve(trees_.size());
    for (const Subgraph& t : trees_) k.push_back(t.rows());
    return k;
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.graph() == b.graph() && a.key() == b.key();
  }

 private:
  friend struct TriangulationFactory;
  std::shared_ptr<const LatticeContext> ctx_;
  std::vector<Subgraph> trees_;
};

struct ValidationReport {
  bool ok = true;
  Errc error = Errc::Internal;
  std::string message;
  int tree_index = -1;                 // NotSpanningTree / stray input index
  Point b1, b2;                        // offending index points
  std::vector<Point> missing, extra;   // CoverageMismatch detail
  std::vector<VertexRef> witness;      // IncompatiblePair cycle
};

struct TriangulationFactory {
  static Triangulation make(std::shared_ptr<const LatticeContext> ctx, std::vector<Subgraph> trees) {
    Triangulation t;
    t.ctx_ = std::move(ctx);
    t.trees_ = std::move(trees);
    return t;
  }
};

/// Checks the three defining conditions: spanning trees, degree vectors cover
/// P_G^- exactly once, all pairs compatible. On success fills `result`.
inline ValidationReport validate_report(std::shared_ptr<const LatticeContext> ctx,
                                        const std::vector<Subgraph>& input,
                                        Triangulation* result = nullptr) {
  ValidationReport rep;
  const PointSet& keys = ctx->pgminus();

  std::map<Point, int> by_point;
  for (std::size_t t = 0; t < input.size(); ++t) {
    if (!classify(input[t]).is_spanning_tree) {
      rep.ok = false;
      rep.error = Errc::NotSpanningTree;
      rep.tree_index = static_cast<int>(t);
      rep.message = "input subgraph " + std::to_string(t) + " is not a spanning tree";
      return rep;
    }
    Point b = ld_minus(input[t]);
    auto [it, fresh] = by_point.insert({b, static_cast<int>(t)});
    if (!fresh) {
      rep.ok = false;
      rep.error = Errc::DuplicateDegreeVector;
      rep.b1 = b;
      rep.message = "two trees share one trimmed left-degree vector";
      return rep;
    }
  }

  for (const Point& b : keys)
    if (!by_point.count(b)) rep.missing.push_back(b);
  for (const auto& [b, t] : by_point)
    if (!keys.contains(b)) rep.extra.push_back(b);
  if (!rep.missing.empty() || !rep.extra.empty()) {
    rep.ok = false;
    rep.error = Errc::CoverageMismatch;
    rep.message = "degree vectors do not cover P_G^- exactly";
    return rep;
  }

  std::vector<Subgraph> ordered;
  ordered.reserve(keys.size());
  for (const Point& b : keys) ordered.push_back(input[by_point[b]]);

  for (std::size_t p = 0; p < ordered.size(); ++p) {
    for (std::size_t q = p + 1; q < ordered.size(); ++q) {
      CompatResult c = is_compatible_witness(ordered[p], ordered[q]);
      if (!c.compatible) {
        rep.ok = false;
        rep.error = Errc::IncompatiblePair;
        rep.b1 = keys[p];
        rep.b2 = keys[q];
        rep.witness = std::move(c.witness);
        rep.message = "trees intersect improperly";
        return rep;
      }
    }
  }

  if (result) *result = TriangulationFactory::make(std::move(ctx), std::move(ordered));
  return rep;
}

inline Triangulation validate(std::shared_ptr<const LatticeContext> ctx, const std::vector<Subgraph>& trees) {
  Triangulation out;
  ValidationReport rep = validate_report(std::move(ctx), trees, &out);
  if (!rep.ok) throw Error(rep.error, rep.message);
  return out;
}

inline Triangulation validate(const BipartiteGraph& g, const std::vector<Subgraph>& trees) {
  return validate(std::make_shared<LatticeContext>(g), trees);
}

namespace detail {

inline std::vector<Subgraph> sorted_unique(std::set<std::vector<Mask>>&& rows, int n) {
  std::vector<Subgraph> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(Subgraph::from_rows(n, r));
  return out;
}

/// All ways to keep exactly one incident tree edge per right vertex.
inline void right_selections(const Subgraph& t, std::set<std::vector<Mask>>& acc) {
  const int m = t.left_count(), n = t.right_count();
  std::vector<Mask> cols(n);
  for (int j = 1; j <= n; ++j) cols[j - 1] = t.column(j);
  std::vector<Mask> rows(m, 0);
  auto rec = [&](auto&& self, int j) -> void {
    if (j == n) {
      acc.insert(rows);
      return;
    }
    Mask c = cols[j];
    while (c) {
      int i = std::countr_zero(c);
      c &= c - 1;
      rows[i] |= Mask{1} << j;
      self(self, j + 1);
      rows[i] &= ~(Mask{1} << j);
    }
  };
  rec(rec, 0);
}

inline void left_selections(const Subgraph& t, std::set<std::vector<Mask>>& acc) {
  const int m = t.left_count();
  std::vector<Mask> rows(m, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == m) {
      acc.insert(rows);
      return;
    }
    Mask r = t.row(i + 1);
    while (r) {
      int j = std::countr_zero(r);
      r &= r - 1;
      rows[i] = Mask{1} << j;
      self(self, i + 1);
    }
    rows[i] = 0;
  };
  rec(rec, 0);
}

inline void matchings_within(const Subgraph& t, std::set<std::vector<Mask>>& acc) {
  const std::vector<Edge> edges = t.edges();
  const int m = t.left_count();
  std::vector<Mask> rows(m, 0);
  Mask used_l = 0, used_r = 0;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    acc.insert(rows);
    for (std::size_t p = pos; p < edges.size(); ++p) {
      Mask bl = Mask{1} << (edges[p].i - 1), br = Mask{1} << (edges[p].j - 1);
      if ((used_l & bl) || (used_r & br)) continue;
      used_l |= bl;
      used_r |= br;
      rows[edges[p].i - 1] |= br;
      self(self, p + 1);
      rows[edges[p].i - 1] &= ~br;
      used_l &= ~bl;
      used_r &= ~br;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// All forests of the simplicial complex: subsets of the trees.
inline std::vector<Subgraph> forests_of(const Triangulation& tau) {
  std::set<std::vector<Mask>> acc;
  const int n = tau.graph().right_count();
  for (const Subgraph& t : tau.trees()) {
    const std::vector<Edge> edges = t.edges();
    const int k = static_cast<int>(edges.size());
    if (k > 24) throw Error(Errc::TooLarge, "forest collection enumerates 2^edges subsets");
    for (unsigned long long pick = 0; pick < (1ull << k); ++pick) {
      Subgraph f(t.left_count(), n);
      for (int p = 0; p < k; ++p)
        if (pick >> p & 1) f.add_edge(edges[p].i, edges[p].j);
      acc.insert(f.rows());
    }
  }
  return detail::sorted_unique(std::move(acc), n);
}

inline std::vector<Subgraph> rsm_set(const Triangulation& tau) {
  std::set<std::vector<Mask>> acc;
  for (const Subgraph& t : tau.trees()) detail::right_selections(t, acc);
  return detail::sorted_unique(std::move(acc), tau.graph().right_count());
}

inline std::vector<Subgraph> lsm_set(const Triangulation& tau) {
  std::set<std::vector<Mask>> acc;
  for (const Subgraph& t : tau.trees()) detail::left_selections(t, acc);
  return detail::sorted_unique(std::move(acc), tau.graph().right_count());
}

inline std::vector<Subgraph> pm_set(const Triangulation& tau) {
  std::set<std::vector<Mask>> acc;
  for (const Subgraph& t : tau.trees()) detail::matchings_within(t, acc);
  return detail::sorted_unique(std::move(acc), tau.graph().right_count());
}

/// The unique right semi-matching of the triangulation with left-degree
/// vector a.
inline Subgraph rsm_at(const Triangulation& tau, const Point& a) {
  if (!tau.context().in_pg(a)) throw Error(Errc::PointOutsidePG, "point is not in P_G");
  for (const Subgraph& f : rsm_set(tau))
    if (ld(f) == a) return f;
  throw Error(Errc::Internal, "no right semi-matching found for a lattice point of P_G");
}

/// The bijection b -> RD^-(T(b)) from P_G^- lattice points to P_{G*}^- ones.
struct PhiMap {
  PointSet domain;
  std::vector<Point> values;

  std::string canonical_key() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < values.size(); ++k) {
      for (int v : values[k]) os << v << ',';
      os << ';';
    }
    return os.str();
  }
  friend bool operator==(const PhiMap&, const PhiMap&) = default;
};

inline PhiMap phi(const Triangulation& tau) {
  PhiMap out;
  out.domain = tau.points();
  out.values.reserve(tau.size());
  for (const Subgraph& t : tau.trees()) out.values.push_back(rd_minus(t));
  // Bijectivity onto P_{G*}^- comes with the theory; verify it anyway.
  PointSet image(std::vector<Point>(out.values.begin(), out.values.end()));
  if (image.size() != out.values.size() || image != LatticeContext(tau.graph().dual()).pgminus())
    throw Error(Errc::Internal, "phi image is not a bijection onto the dual trimmed polytope");
  return out;
}

enum class CollectionKind { Trees, Rsm, Lsm, Pm };

inline const char* collection_kind_name(CollectionKind k) {
  switch (k) {
    case CollectionKind::Trees: return "trees";
    case CollectionKind::Rsm: return "rsm";
    case CollectionKind::Lsm: return "lsm";
    case CollectionKind::Pm: return "pm";
  }
  return "?";
}

/// Rebuild a triangulation from one of its defining forest collections: keep
/// exactly the spanning trees compatible with every member, then validate.
inline Triangulation reconstruct(std::shared_ptr<const LatticeContext> ctx,
                                 const std::vector<Subgraph>& collection,
                                 CollectionKind kind) {
  std::vector<Subgraph> chosen;
  for (Subgraph& t : enumerate_spanning_trees(ctx->graph())) {
    bool ok = true;
    for (const Subgraph& f : collection)
      if (!is_compatible(t, f)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(std::move(t));
  }
  Triangulation out;
  ValidationReport rep = validate_report(ctx, chosen, &out);
  if (!rep.ok)
    throw Error(Errc::ReconstructionFailed,
                std::string("compatible trees do not form a triangulation (") + rep.message + ")");
  if (kind == CollectionKind::Trees) {
    std::set<std::vector<Mask>> in, got;
    for (const Subgraph& f : collection) in.insert(f.rows());
    for (const Subgraph& t : out.trees()) got.insert(t.rows());
    if (in != got)
      throw Error(Errc::ReconstructionFailed, "tree collection is not the tree set of a triangulation");
  }
  return out;
}

inline Triangulation reconstruct(const BipartiteGraph& g, const std::vector<Subgraph>& collection,
                                 CollectionKind kind) {
  return reconstruct(std::make_shared<LatticeContext>(g), collection, kind);
}

/// Replaceability of a tree edge: removing it leaves a forest whose simplex
/// is not confined to the boundary of Q_G. Combinatorial form: some edge
/// (v', u') of G has v' in the component of u and u' in the component of v.
inline bool is_replaceable(const BipartiteGraph& g, const Subgraph& tree, Edge e) {
  if (!tree.has_edge(e.i, e.j)) throw Error(Errc::EdgeNotInTree, "edge is not in the tree");
  Subgraph f = tree;
  f.remove_edge(e.i, e.j);
  Components comp = components(f);
  const int comp_of_u = comp.right_label[e.j - 1];
  const int comp_of_v = comp.left_label[e.i - 1];
  for (int vp = 1; vp <= g.left_count(); ++vp) {
    if (comp.left_label[vp - 1] != comp_of_u) continue;
    Mask r = g.left_neighborhood(vp);
    while (r) {
      int up = std::countr_zero(r) + 1;
      r &= r - 1;
      if (comp.right_label[up - 1] == comp_of_v) return true;
    }
  }
  return false;
}

/// One-edge exchange inside the triangulation: the unique b' whose tree
/// differs from tree_at(b) exactly by dropping `e`.
inline Point flip(const Triangulation& tau, const Point& b, Edge e) {
  const Subgraph& t = tau.tree_at(b);
  if (!t.has_edge(e.i, e.j)) throw Error(Errc::EdgeNotInTree, "edge is not in the tree");
  if (!is_replaceable(tau.graph(), t, e)) throw Error(Errc::NotReplaceable, "edge is not replaceable");
  const Point* found = nullptr;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    const Subgraph& t2 = tau.trees()[k];
    if (t2 == t) continue;
    int removed = 0;
    bool only_e = true;
    for (int i = 1; i <= t.left_count() && only_e; ++i) {
      Mask gone = t.row(i) & ~t2.row(i);
      removed += std::popcount(gone);
      if (gone & ~(i == e.i ? Mask{1} << (e.j - 1) : Mask{0})) only_e = false;
    }
    if (only_e && removed == 1) {
      if (found) throw Error(Errc::Internal, "two flip partners for one facet");
      found = &tau.points()[k];
    }
  }
  if (!found)
    throw Error(Errc::NotFound, "no tree in the triangulation realizes this exchange");
  return *found;
}

}  // namespace trg

#endif  // TRG_TRIANGULATION_HPP
