// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_LATTICE_HPP
#define TRG_LATTICE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "trg/graph.hpp"

namespace trg {

/// Integer vector in Z^m (or Z^n on the dual side).
using Point = std::vector<int>;

enum class Ambient { PG, PGminus, PGpm, Other };

/// Lex-sorted, deduplicated point set with binary-searchable indexing.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  std::size_t size() const { return pts_.size(); }
  const Point& operator[](std::size_t k) const { return pts_[k]; }
  const std::vector<Point>& points() const { return pts_; }

  /// Index of p, or -1 when absent.
  int index_of(const Point& p) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) return -1;
    return static_cast<int>(it - pts_.begin());
  }
  bool contains(const Point& p) const { return index_of(p) >= 0; }

  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<Point> pts_;
};

namespace detail {

/// |N_I(G)| = |union of N_i(G) over i in I| for every I, indexed by mask.
/// Only built for m <= 20; larger graphs fall back to set lookups.
inline std::vector<int> hall_table(const BipartiteGraph& g) {
  const int m = g.left_count();
  if (m > 20) return {};
  std::vector<Mask> cover(std::size_t{1} << m, 0);
  for (Mask I = 1; I < cover.size(); ++I) {
    Mask low = I & (I - 1);
    int i = std::countr_zero(I);
    cover[I] = cover[low] | g.left_neighborhood(i + 1);
  }
  std::vector<int> sz(cover.size());
  for (std::size_t I = 0; I < cover.size(); ++I) sz[I] = std::popcount(cover[I]);
  return sz;
}

}  // namespace detail

/// Lattice data of one graph: the point sets of P_G, P_G^- and P_G^+- plus
/// Hall-type membership tables. Build once, share freely.
class LatticeContext {
 public:
  explicit LatticeContext(const BipartiteGraph& g)
      : g_(g), hall_(detail::hall_table(g)) {
    build_points();
  }

  const BipartiteGraph& graph() const { return g_; }
  const PointSet& pg() const { return pg_; }
  const PointSet& pgminus() const { return pgminus_; }
  const PointSet& pgpm() const { return pgpm_; }

  /// Hall-type membership test for P_G: x >= 0, sum = n, and
  /// sum_{i in I} x_i <= |N_I(G)| for all nonempty I.
  bool in_pg(const Point& x) const {
    if (!hall_.empty()) return hall_in_pg(x);
    return pg_.contains(x);
  }

  /// Hall-type membership test for P_G^-: x >= 0, sum = n-1, and
  /// sum_{i in I} x_i <= |N_I(G)| - 1 for all nonempty I.
  bool in_pgminus(const Point& x) const {
    if (!hall_.empty()) return hall_in_pgminus(x);
    return pgminus_.contains(x);
  }

  /// Minkowski-difference membership test: x + e_i in P_G for all i.
  bool in_pgminus_shift(const Point& x) const {
    const int m = g_.left_count();
    for (int v : x)
      if (v < 0) return false;
    Point y = x;
    for (int i = 0; i < m; ++i) {
      ++y[i];
      bool ok = pg_.contains(y);
      --y[i];
      if (!ok) return false;
    }
    return true;
  }

 private:
  bool hall_in_pg(const Point& x) const {
    const int m = g_.left_count();
    long long sum = 0;
    for (int v : x) {
      if (v < 0) return false;
      sum += v;
    }
    if (sum != g_.right_count()) return false;
    return hall_ok(x, 0);
  }

  bool hall_in_pgminus(const Point& x) const {
    long long sum = 0;
    for (int v : x) {
      if (v < 0) return false;
      sum += v;
    }
    if (sum != g_.right_count() - 1) return false;
    return hall_ok(x, 1);
  }

  bool hall_ok(const Point& x, int slack) const {
    const int m = g_.left_count();
    const Mask all = full_mask(m);
    for (Mask I = all; I != 0; I = (I - 1) & all) {
      long long s = 0;
      for (Mask t = I; t; t &= t - 1) s += x[std::countr_zero(t)];
      if (s > hall_[I] - slack) return false;
    }
    return true;
  }

  void build_points() {
    const int m = g_.left_count(), n = g_.right_count();
    // image construction: P_G points are the sums e_{f(1)} + ... + e_{f(n)}
    // with f(j) in N_j(G)
    std::set<Point> acc;
    acc.insert(Point(m, 0));
    for (int j = 1; j <= n; ++j) {
      std::set<Point> next;
      for (const Point& p : acc) {
        Mask nb = g_.right_neighborhood(j);
        while (nb) {
          int i = std::countr_zero(nb);
          Point q = p;
          ++q[i];
          next.insert(std::move(q));
          nb &= nb - 1;
        }
      }
      acc = std::move(next);
    }
    pg_ = PointSet(std::vector<Point>(acc.begin(), acc.end()));

    std::vector<Point> minus, pm;
    std::set<Point> pm_seen;
    for (const Point& a : pg_) {
      for (int i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        Point b = a;
        --b[i];
        if (pm_seen.insert(b).second) pm.push_back(b);
      }
    }
    for (const Point& b : pm_seen) {
      Point y = b;
      bool all_in = true;
      for (int i = 0; i < m && all_in; ++i) {
        ++y[i];
        all_in = pg_.contains(y);
        --y[i];
      }
      if (all_in) minus.push_back(b);
    }
    pgpm_ = PointSet(std::move(pm));
    pgminus_ = PointSet(std::move(minus));
  }

  BipartiteGraph g_;
  std::vector<int> hall_;
  PointSet pg_, pgminus_, pgpm_;
};

inline PointSet points_pg(const BipartiteGraph& g) { return LatticeContext(g).pg(); }
inline PointSet points_pgminus(const BipartiteGraph& g) { return LatticeContext(g).pgminus(); }
inline PointSet points_pgpm(const BipartiteGraph& g) { return LatticeContext(g).pgpm(); }

/// Directed lattice step b = a - e_i -> a with a in P_G.
struct GammaEdge {
  Point from;
  int dir = 0;  // 1-based
  Point to;
  friend auto operator<=>(const GammaEdge&, const GammaEdge&) = default;
};

/// Exchange step b -> b + e_i - e_j inside P_G^-.
struct LambdaEdge {
  Point from;
  Point to;
  int add_dir = 0;  // i
  int sub_dir = 0;  // j
  friend auto operator<=>(const LambdaEdge&, const LambdaEdge&) = default;
};

inline std::vector<GammaEdge> gamma_edges(const LatticeContext& ctx) {
  std::vector<GammaEdge> out;
  const int m = ctx.graph().left_count();
  for (const Point& a : ctx.pg()) {
    for (int i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      Point b = a;
      --b[i];
      out.push_back({std::move(b), i + 1, a});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<GammaEdge> gamma_edges(const BipartiteGraph& g) {
  return gamma_edges(LatticeContext(g));
}

inline std::vector<LambdaEdge> lambda_edges(const LatticeContext& ctx) {
  std::vector<LambdaEdge> out;
  const int m = ctx.graph().left_count();
  for (const Point& b : ctx.pgminus()) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j || b[j] == 0) continue;
        Point b2 = b;
        ++b2[i];
        --b2[j];
        if (ctx.pgminus().contains(b2))
          out.push_back({b, std::move(b2), i + 1, j + 1});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<LambdaEdge> lambda_edges(const BipartiteGraph& g) {
  return lambda_edges(LatticeContext(g));
}

/// All (I(F), J(F)) support pairs of partial matchings of G, as mask pairs in
/// lex order. A pair qualifies iff G restricted to I x J has a perfect
/// matching; tested with augmenting paths.
inline std::vector<std::pair<Mask, Mask>> ij_supports(const BipartiteGraph& g) {
  const int m = g.left_count(), n = g.right_count();
  if (m + n > 24) throw Error(Errc::TooLarge, "ij_supports enumerates 2^(m+n) support pairs");
  std::vector<std::pair<Mask, Mask>> out;
  std::vector<int> match_of(n);

  auto has_perfect = [&](Mask I, Mask J) {
    std::fill(match_of.begin(), match_of.end(), -1);
    auto augment = [&](auto&& self, int i, Mask& visited) -> bool {
      Mask cand = g.left_neighborhood(i + 1) & J & ~visited;
      while (cand) {
        int j = std::countr_zero(cand);
        cand &= cand - 1;
        visited |= Mask{1} << j;
        if (match_of[j] < 0 || self(self, match_of[j], visited)) {
          match_of[j] = i;
          return true;
        }
      }
      return false;
    };
    for (Mask t = I; t; t &= t - 1) {
      Mask visited = 0;
      if (!augment(augment, std::countr_zero(t), visited)) return false;
    }
    return true;
  };

  for (Mask I = 0; I <= full_mask(m); ++I) {
    for (Mask J = 0; J <= full_mask(n); ++J) {
      if (std::popcount(I) != std::popcount(J)) continue;
      if (has_perfect(I, J)) out.push_back({I, J});
      if (J == full_mask(n)) break;
    }
    if (I == full_mask(m)) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trg

#endif  // TRG_LATTICE_HPP
