// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_COMPAT_HPP
#define TRG_COMPAT_HPP

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "trg/graph.hpp"

namespace trg {

/// Vertex of the union digraph U(F, F'): left 1..m then right 1..n.
struct VertexRef {
  bool right = false;
  int index = 0;  // 1-based within its side
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Directed union of two subgraphs: i -> j for (i,j) in F and j -> i for
/// (i,j) in F'.
struct UnionDigraph {
  int m = 0, n = 0;
  std::vector<Mask> forward;   // per left vertex, arcs into right side (edges of F)
  std::vector<Mask> backward;  // per right vertex, arcs into left side (edges of F')

  bool has_arc(VertexRef a, VertexRef b) const {
    if (!a.right && b.right) return forward[a.index - 1] >> (b.index - 1) & 1;
    if (a.right && !b.right) return backward[a.index - 1] >> (b.index - 1) & 1;
    return false;
  }
};

inline UnionDigraph union_digraph(const Subgraph& f, const Subgraph& fp) {
  UnionDigraph u;
  u.m = f.left_count();
  u.n = f.right_count();
  u.forward = f.rows();
  u.backward.resize(u.n);
  for (int j = 1; j <= u.n; ++j) u.backward[j - 1] = fp.column(j);
  return u;
}

struct CompatResult {
  bool compatible = true;
  /// When incompatible: a simple directed cycle of U(F, F') on >= 4 vertices,
  /// listed in order with the first vertex repeated at the end.
  std::vector<VertexRef> witness;
};

namespace detail {

/// Iterative Tarjan SCC over the <= 64 vertices of U; vertex ids are
/// 0..m-1 (left) then m..m+n-1 (right).
inline std::vector<int> scc_labels(const UnionDigraph& u, int& scc_count) {
  const int size = u.m + u.n;
  auto arcs_of = [&](int v) {
    std::vector<int> out;
    if (v < u.m) {
      Mask r = u.forward[v];
      while (r) {
        out.push_back(u.m + std::countr_zero(r));
        r &= r - 1;
      }
    } else {
      Mask r = u.backward[v - u.m];
      while (r) {
        out.push_back(std::countr_zero(r));
        r &= r - 1;
      }
    }
    return out;
  };

  std::vector<int> low(size, -1), num(size, -1), label(size, -1), stack;
  std::vector<bool> on_stack(size, false);
  int counter = 0;
  scc_count = 0;

  struct Frame {
    int v;
    std::vector<int> succ;
    std::size_t next = 0;
  };
  for (int root = 0; root < size; ++root) {
    if (num[root] >= 0) continue;
    std::vector<Frame> call;
    call.push_back({root, arcs_of(root)});
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.next < fr.succ.size()) {
        int w = fr.succ[fr.next++];
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, arcs_of(w)});
        } else if (on_stack[w]) {
          low[fr.v] = std::min(low[fr.v], num[w]);
        }
      } else {
        if (low[fr.v] == num[fr.v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            label[w] = scc_count;
          } while (w != fr.v);
          ++scc_count;
        }
        int v = fr.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return label;
}

inline VertexRef to_ref(int v, int m) {
  return v < m ? VertexRef{false, v + 1} : VertexRef{true, v - m + 1};
}

/// BFS path a -> b inside one SCC, following arcs of U.
inline std::vector<int> dipath_in_scc(const UnionDigraph& u, const std::vector<int>& label, int a, int b) {
  const int size = u.m + u.n;
  std::vector<int> prev(size, -2);
  std::vector<int> queue{a};
  prev[a] = -1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    if (v == b) break;
    Mask r = v < u.m ? u.forward[v] : u.backward[v - u.m];
    int base = v < u.m ? u.m : 0;
    while (r) {
      int w = base + std::countr_zero(r);
      r &= r - 1;
      if (prev[w] != -2 || label[w] != label[a]) continue;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  std::vector<int> path;
  for (int v = b; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Exact test of the no-long-directed-cycle condition: U(F, F') must not
/// contain a simple directed cycle on >= 4 vertices (2-cycles from shared
/// edges are fine). Incompatibility is certified by one of:
///  - an SCC containing an arc without its reverse (close it with a simple
///    directed path back inside the SCC), or
///  - an undirected cycle made of shared (bidirected) edges inside one SCC.
inline CompatResult is_compatible_witness(const Subgraph& f, const Subgraph& fp) {
  if (!classify(f).is_forest || !classify(fp).is_forest)
    throw Error(Errc::NotAForest, "compatibility is defined for forests");
  const UnionDigraph u = union_digraph(f, fp);
  const int m = u.m;
  int scc_count = 0;
  const std::vector<int> label = detail::scc_labels(u, scc_count);

  CompatResult res;
  auto close_arc = [&](int from, int to) {
    // simple dipath to -> from inside the SCC, then the arc from -> to
    std::vector<int> back = detail::dipath_in_scc(u, label, to, from);
    res.compatible = false;
    res.witness.clear();
    for (int v : back) res.witness.push_back(detail::to_ref(v, m));
    res.witness.push_back(detail::to_ref(to, m));
  };
  // one-directional arc inside an SCC: F \ F' goes left -> right only
  for (int i = 0; i < m; ++i) {
    Mask r = u.forward[i] & ~fp.row(i + 1);
    while (r) {
      int j = std::countr_zero(r);
      r &= r - 1;
      if (label[i] != label[m + j]) continue;
      close_arc(i, m + j);
      return res;
    }
  }
  // and F' \ F goes right -> left only
  for (int j = 0; j < u.n; ++j) {
    Mask r = u.backward[j] & ~f.column(j + 1);
    while (r) {
      int i = std::countr_zero(r);
      r &= r - 1;
      if (label[i] != label[m + j]) continue;
      close_arc(m + j, i);
      return res;
    }
  }

  // undirected cycle among shared edges inside one SCC
  detail::UnionFind uf(m + u.n);
  for (int i = 0; i < m; ++i) {
    Mask shared = u.forward[i] & fp.row(i + 1);
    while (shared) {
      int j = std::countr_zero(shared);
      shared &= shared - 1;
      if (!uf.unite(i, m + j)) {
        // rebuild the cycle: path between i and m+j among shared edges,
        // excluding the closing edge
        res.compatible = false;
        Subgraph sh = f.intersect(fp);
        sh.remove_edge(i + 1, j + 1);
        std::vector<int> prev(m + u.n, -2);
        std::vector<int> queue{i};
        prev[i] = -1;
        for (std::size_t h = 0; h < queue.size(); ++h) {
          int v = queue[h];
          if (v == m + j) break;
          if (v < m) {
            Mask rr = sh.row(v + 1);
            while (rr) {
              int w = m + std::countr_zero(rr);
              rr &= rr - 1;
              if (prev[w] == -2) {
                prev[w] = v;
                queue.push_back(w);
              }
            }
          } else {
            Mask rr = sh.column(v - m + 1);
            while (rr) {
              int w = std::countr_zero(rr);
              rr &= rr - 1;
              if (prev[w] == -2) {
                prev[w] = v;
                queue.push_back(w);
              }
            }
          }
        }
        std::vector<int> path;
        for (int v = m + j; v != -1; v = prev[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        for (int v : path) res.witness.push_back(detail::to_ref(v, m));
        res.witness.push_back(detail::to_ref(i, m));
        return res;
      }
    }
  }
  return res;
}

inline bool is_compatible(const Subgraph& f, const Subgraph& fp) {
  return is_compatible_witness(f, fp).compatible;
}

/// Brute-force translation of the defining condition: no pair of distinct
/// partial matchings M in F, M' in F' with equal left and right supports.
inline bool is_compatible_oracle(const Subgraph& f, const Subgraph& fp) {
  if (!classify(f).is_forest || !classify(fp).is_forest)
    throw Error(Errc::NotAForest, "compatibility is defined for forests");
  if (f.edge_count() > 16 || fp.edge_count() > 16)
    throw Error(Errc::TooLarge, "oracle enumerates 2^edges partial matchings");

  auto matchings_by_support = [](const Subgraph& s) {
    std::map<std::pair<Mask, Mask>, std::set<std::vector<Mask>>> out;
    const std::vector<Edge> edges = s.edges();
    const int k = static_cast<int>(edges.size());
    for (Mask pick = 0; pick < (Mask{1} << k); ++pick) {
      Subgraph msub(s.left_count(), s.right_count());
      Mask used_l = 0, used_r = 0;
      bool ok = true;
      for (int t = 0; t < k && ok; ++t) {
        if (!(pick >> t & 1)) continue;
        Mask bl = Mask{1} << (edges[t].i - 1), br = Mask{1} << (edges[t].j - 1);
        if ((used_l & bl) || (used_r & br)) ok = false;
        used_l |= bl;
        used_r |= br;
        msub.add_edge(edges[t].i, edges[t].j);
      }
      if (ok) out[{used_l, used_r}].insert(msub.rows());
    }
    return out;
  };

  auto a = matchings_by_support(f);
  auto b = matchings_by_support(fp);
  for (const auto& [sup, ms] : a) {
    auto it = b.find(sup);
    if (it == b.end()) continue;
    const auto& ms2 = it->second;
    // need M != M' with this common support
    if (ms.size() > 1 || ms2.size() > 1 || *ms.begin() != *ms2.begin()) return false;
  }
  return true;
}

}  // namespace trg

#endif  // TRG_COMPAT_HPP
