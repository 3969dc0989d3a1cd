// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_GRAPH_HPP
#define TRG_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trg {

inline constexpr int kMaxSide = 32;

/// Bitmask over one side of the bipartition; bit v-1 stands for vertex v.
using Mask = std::uint32_t;

inline Mask full_mask(int k) {
  return k >= 32 ? ~Mask{0} : ((Mask{1} << k) - 1);
}

enum class Errc {
  OutOfRange,
  Disconnected,
  IsolatedVertex,
  NotPartialMatching,
  NotAForest,
  TooLarge,
  NotSpanningTree,
  DuplicateDegreeVector,
  CoverageMismatch,
  IncompatiblePair,
  PointOutsidePG,
  ReconstructionFailed,
  EdgeNotInTree,
  NotReplaceable,
  NotFound,
  NotPreTrianguloid,
  NotTrianguloid,
  ValidationFailed,
  NotComplete,
  InconsistentColoring,
  NotThreeRows,
  LimitExceeded,
  InvalidInput,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Disconnected: return "Disconnected";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::NotPartialMatching: return "NotPartialMatching";
    case Errc::NotAForest: return "NotAForest";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotSpanningTree: return "NotSpanningTree";
    case Errc::DuplicateDegreeVector: return "DuplicateDegreeVector";
    case Errc::CoverageMismatch: return "CoverageMismatch";
    case Errc::IncompatiblePair: return "IncompatiblePair";
    case Errc::PointOutsidePG: return "PointOutsidePG";
    case Errc::ReconstructionFailed: return "ReconstructionFailed";
    case Errc::EdgeNotInTree: return "EdgeNotInTree";
    case Errc::NotReplaceable: return "NotReplaceable";
    case Errc::NotFound: return "NotFound";
    case Errc::NotPreTrianguloid: return "NotPreTrianguloid";
    case Errc::NotTrianguloid: return "NotTrianguloid";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::NotComplete: return "NotComplete";
    case Errc::InconsistentColoring: return "InconsistentColoring";
    case Errc::NotThreeRows: return "NotThreeRows";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Edge (i, j) with left vertex i in [1..m] and right vertex j in [1..n].
struct Edge {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Connected bipartite graph on [m] x [n], stored as adjacency bitmasks on
/// both sides. Immutable after construction.
class BipartiteGraph {
 public:
  static BipartiteGraph create(int m, int n, const std::vector<std::vector<int>>& neighborhoods) {
    if (m < 1 || m > kMaxSide || n < 1 || n > kMaxSide)
      throw Error(Errc::OutOfRange, "side sizes must be within [1, 32]");
    if (static_cast<int>(neighborhoods.size()) != n)
      throw Error(Errc::InvalidInput, "expected one neighborhood per right vertex");
    std::vector<Mask> right(n, 0);
    for (int j = 0; j < n; ++j) {
      for (int i : neighborhoods[j]) {
        if (i < 1 || i > m)
          throw Error(Errc::OutOfRange, "left vertex index out of range");
        right[j] |= Mask{1} << (i - 1);
      }
    }
    return from_masks(m, n, std::move(right));
  }

  static BipartiteGraph from_masks(int m, int n, std::vector<Mask> right) {
    BipartiteGraph g;
    g.m_ = m;
    g.n_ = n;
    g.right_ = std::move(right);
    g.left_.assign(m, 0);
    for (int j = 0; j < n; ++j) {
      if (g.right_[j] == 0) throw Error(Errc::IsolatedVertex, "right vertex " + std::to_string(j + 1) + " has no neighbors");
      for (int i = 0; i < m; ++i)
        if (g.right_[j] >> i & 1) g.left_[i] |= Mask{1} << j;
    }
    for (int i = 0; i < m; ++i)
      if (g.left_[i] == 0) throw Error(Errc::IsolatedVertex, "left vertex " + std::to_string(i + 1) + " has no neighbors");
    if (!g.connected()) throw Error(Errc::Disconnected, "graph is not connected");
    return g;
  }

  static BipartiteGraph complete(int m, int n) {
    return from_masks(m, n, std::vector<Mask>(n, full_mask(m)));
  }

  int left_count() const { return m_; }
  int right_count() const { return n_; }

  /// Neighborhood of right vertex j (1-based) as a mask over left vertices.
  Mask right_neighborhood(int j) const { return right_[j - 1]; }
  /// Neighborhood of left vertex i (1-based) as a mask over right vertices.
  Mask left_neighborhood(int i) const { return left_[i - 1]; }

  bool has_edge(int i, int j) const { return right_[j - 1] >> (i - 1) & 1; }

  int edge_count() const {
    int c = 0;
    for (Mask r : right_) c += std::popcount(r);
    return c;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int i = 1; i <= m_; ++i)
      for (int j = 1; j <= n_; ++j)
        if (has_edge(i, j)) out.push_back({i, j});
    return out;
  }

  bool is_complete() const {
    for (Mask r : right_)
      if (r != full_mask(m_)) return false;
    return true;
  }

  /// Transpose: edge set {(j, i) | (i, j) in G}.
  BipartiteGraph dual() const {
    return from_masks(n_, m_, left_);
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.right_ == b.right_;
  }

 private:
  BipartiteGraph() = default;

  bool connected() const {
    Mask seen_left = 1, seen_right = 0;
    for (bool grown = true; grown;) {
      grown = false;
      for (int j = 0; j < n_; ++j)
        if (!(seen_right >> j & 1) && (right_[j] & seen_left)) {
          seen_right |= Mask{1} << j;
          grown = true;
        }
      for (int i = 0; i < m_; ++i)
        if (!(seen_left >> i & 1) && (left_[i] & seen_right)) {
          seen_left |= Mask{1} << i;
          grown = true;
        }
    }
    return seen_left == full_mask(m_) && seen_right == full_mask(n_);
  }

  int m_ = 0, n_ = 0;
  std::vector<Mask> right_;  // per right vertex, mask over left
  std::vector<Mask> left_;   // per left vertex, mask over right
};

/// Edge set of a subgraph of some G on [m] x [n], one right-vertex mask per
/// left vertex. Plain value; membership in a parent graph is checked by the
/// `of` factory.
class Subgraph {
 public:
  Subgraph() = default;
  Subgraph(int m, int n) : m_(m), n_(n), rows_(m, 0) {}

  static Subgraph of(const BipartiteGraph& g, const std::vector<Edge>& edges) {
    Subgraph f(g.left_count(), g.right_count());
    for (const Edge& e : edges) {
      if (e.i < 1 || e.i > f.m_ || e.j < 1 || e.j > f.n_)
        throw Error(Errc::OutOfRange, "edge endpoint out of range");
      if (!g.has_edge(e.i, e.j))
        throw Error(Errc::InvalidInput, "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") not in parent graph");
      if (f.has_edge(e.i, e.j))
        throw Error(Errc::InvalidInput, "duplicate edge in subgraph");
      f.add_edge(e.i, e.j);
    }
    return f;
  }

  static Subgraph from_rows(int n, std::vector<Mask> rows) {
    Subgraph f;
    f.m_ = static_cast<int>(rows.size());
    f.n_ = n;
    f.rows_ = std::move(rows);
    return f;
  }

  int left_count() const { return m_; }
  int right_count() const { return n_; }

  Mask row(int i) const { return rows_[i - 1]; }
  const std::vector<Mask>& rows() const { return rows_; }

  Mask column(int j) const {
    Mask c = 0;
    for (int i = 0; i < m_; ++i)
      if (rows_[i] >> (j - 1) & 1) c |= Mask{1} << i;
    return c;
  }

  bool has_edge(int i, int j) const { return rows_[i - 1] >> (j - 1) & 1; }
  void add_edge(int i, int j) { rows_[i - 1] |= Mask{1} << (j - 1); }
  void remove_edge(int i, int j) { rows_[i - 1] &= ~(Mask{1} << (j - 1)); }

  int edge_count() const {
    int c = 0;
    for (Mask r : rows_) c += std::popcount(r);
    return c;
  }

  int left_degree(int i) const { return std::popcount(rows_[i - 1]); }
  int right_degree(int j) const { return std::popcount(column(j)); }

  /// Edges in lexicographic (i, j) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int i = 1; i <= m_; ++i) {
      Mask r = rows_[i - 1];
      while (r) {
        int j = std::countr_zero(r) + 1;
        out.push_back({i, j});
        r &= r - 1;
      }
    }
    return out;
  }

  bool contains(const Subgraph& other) const {
    for (int i = 0; i < m_; ++i)
      if (other.rows_[i] & ~rows_[i]) return false;
    return true;
  }

  Subgraph intersect(const Subgraph& other) const {
    Subgraph out(m_, n_);
    for (int i = 0; i < m_; ++i) out.rows_[i] = rows_[i] & other.rows_[i];
    return out;
  }

  /// Transposed subgraph of the dual graph.
  Subgraph transpose() const {
    Subgraph out(n_, m_);
    for (int j = 1; j <= n_; ++j) out.rows_[j - 1] = column(j);
    return out;
  }

  friend auto operator<=>(const Subgraph& a, const Subgraph& b) = default;

 private:
  int m_ = 0, n_ = 0;
  std::vector<Mask> rows_;  // per left vertex, mask over right
};

enum class Side { Left, Right };

struct DegreeVector {
  std::vector<int> entries;
  Side side = Side::Left;
  bool trimmed = false;
  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
};

inline DegreeVector degree_vector(const Subgraph& f, Side side, bool trimmed) {
  DegreeVector d;
  d.side = side;
  d.trimmed = trimmed;
  const int k = side == Side::Left ? f.left_count() : f.right_count();
  d.entries.resize(k);
  for (int v = 1; v <= k; ++v) {
    int deg = side == Side::Left ? f.left_degree(v) : f.right_degree(v);
    d.entries[v - 1] = deg - (trimmed ? 1 : 0);
  }
  return d;
}

namespace detail {

/// Union-find over the m + n vertices of a subgraph; left i -> i-1,
/// right j -> m+j-1.
class UnionFind {
 public:
  explicit UnionFind(int size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

inline bool acyclic(const Subgraph& f) {
  const int m = f.left_count();
  UnionFind uf(m + f.right_count());
  for (const Edge& e : f.edges())
    if (!uf.unite(e.i - 1, m + e.j - 1)) return false;
  return true;
}

}  // namespace detail

struct Classification {
  bool is_forest = false;
  bool is_spanning_tree = false;
  bool is_rsm = false;
  bool is_lsm = false;
  bool is_pm = false;
};

inline Classification classify(const Subgraph& f) {
  Classification c;
  c.is_forest = detail::acyclic(f);
  const int m = f.left_count(), n = f.right_count();
  c.is_spanning_tree = c.is_forest && f.edge_count() == m + n - 1;
  bool right_all_one = true, left_all_one = true, deg_le_one = true;
  for (int j = 1; j <= n; ++j) {
    int d = f.right_degree(j);
    right_all_one &= d == 1;
    deg_le_one &= d <= 1;
  }
  for (int i = 1; i <= m; ++i) {
    int d = f.left_degree(i);
    left_all_one &= d == 1;
    deg_le_one &= d <= 1;
  }
  c.is_rsm = c.is_forest && right_all_one;
  c.is_lsm = c.is_forest && left_all_one;
  c.is_pm = c.is_forest && deg_le_one;
  return c;
}

/// Left and right supports (I(M), J(M)) of a partial matching, as masks.
inline std::pair<Mask, Mask> supports(const Subgraph& matching) {
  Mask left = 0, right = 0;
  for (int i = 1; i <= matching.left_count(); ++i) {
    if (matching.left_degree(i) > 1)
      throw Error(Errc::NotPartialMatching, "left vertex " + std::to_string(i) + " has degree > 1");
    if (matching.left_degree(i) == 1) left |= Mask{1} << (i - 1);
  }
  for (int j = 1; j <= matching.right_count(); ++j) {
    if (matching.right_degree(j) > 1)
      throw Error(Errc::NotPartialMatching, "right vertex " + std::to_string(j) + " has degree > 1");
    if (matching.right_degree(j) == 1) right |= Mask{1} << (j - 1);
  }
  return {left, right};
}

/// Connected components of a subgraph, isolated vertices included.
/// Component labels are contiguous and assigned in order of the smallest
/// contained vertex (left 1..m, then right 1..n).
struct Components {
  std::vector<int> left_label;   // size m
  std::vector<int> right_label;  // size n
  int count = 0;

  bool same(int left_i, int right_j) const {
    return left_label[left_i - 1] == right_label[right_j - 1];
  }
};

inline Components components(const Subgraph& f) {
  const int m = f.left_count(), n = f.right_count();
  detail::UnionFind uf(m + n);
  for (const Edge& e : f.edges()) uf.unite(e.i - 1, m + e.j - 1);
  Components c;
  c.left_label.assign(m, -1);
  c.right_label.assign(n, -1);
  std::vector<int> relabel(m + n, -1);
  for (int v = 0; v < m + n; ++v) {
    int r = uf.find(v);
    if (relabel[r] < 0) relabel[r] = c.count++;
    (v < m ? c.left_label[v] : c.right_label[v - m]) = relabel[r];
  }
  return c;
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free Bareiss
/// elimination, exact integer arithmetic).
inline unsigned long long spanning_tree_count(const BipartiteGraph& g) {
  const int m = g.left_count(), n = g.right_count();
  const int k = m + n - 1;  // reduced Laplacian: delete the last right vertex
  std::vector<std::vector<__int128>> a(k, std::vector<__int128>(k, 0));
  auto deg = [&](int v) -> int {
    return v < m ? std::popcount(g.left_neighborhood(v + 1))
                 : std::popcount(g.right_neighborhood(v - m + 1));
  };
  for (int v = 0; v < k; ++v) a[v][v] = deg(v);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n - 1; ++j)
      if (g.has_edge(i + 1, j + 1)) a[i][m + j] = a[m + j][i] = -1;
  auto mul = [](__int128 x, __int128 y) {
    __int128 r;
    if (__builtin_mul_overflow(x, y, &r)) throw Error(Errc::TooLarge, "matrix-tree determinant overflow");
    return r;
  };
  __int128 prev = 1;
  int sign = 1;
  for (int p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      int q = p + 1;
      while (q < k && a[q][p] == 0) ++q;
      if (q == k) return 0;
      std::swap(a[p], a[q]);
      sign = -sign;
    }
    for (int r = p + 1; r < k; ++r)
      for (int c = p + 1; c < k; ++c)
        a[r][c] = (mul(a[r][c], a[p][p]) - mul(a[r][p], a[p][c])) / prev;
    prev = a[p][p];
  }
  __int128 det = sign * a[k - 1][k - 1];
  if (det < 0) det = -det;
  return static_cast<unsigned long long>(det);
}

/// All spanning trees, lexicographic by canonical edge list. The count is
/// cross-checked against the matrix-tree determinant.
inline std::vector<Subgraph> enumerate_spanning_trees(const BipartiteGraph& g) {
  const int m = g.left_count(), n = g.right_count();
  const std::vector<Edge> all = g.edges();
  const int need = m + n - 1;
  std::vector<Subgraph> out;
  std::vector<Edge> chosen;
  chosen.reserve(need);

  // include/exclude DFS over the lex-sorted edge list; include-first yields
  // edge sets in lexicographic order
  auto rec = [&](auto&& self, int pos, int picked, detail::UnionFind uf) -> void {
    if (picked == need) {
      out.push_back(Subgraph::of(g, chosen));
      return;
    }
    if (pos == static_cast<int>(all.size())) return;
    if (static_cast<int>(all.size()) - pos < need - picked) return;
    const Edge& e = all[pos];
    detail::UnionFind with = uf;
    if (with.unite(e.i - 1, m + e.j - 1)) {
      chosen.push_back(e);
      self(self, pos + 1, picked + 1, std::move(with));
      chosen.pop_back();
    }
    self(self, pos + 1, picked, std::move(uf));
  };
  rec(rec, 0, 0, detail::UnionFind(m + n));

  if (out.size() != spanning_tree_count(g))
    throw Error(Errc::Internal, "spanning tree enumeration disagrees with matrix-tree count");
  return out;
}

}  // namespace trg

#endif  // TRG_GRAPH_HPP
