// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TRG_SEARCH_HPP
#define TRG_SEARCH_HPP

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "trg/compat.hpp"
#include "trg/graph.hpp"
#include "trg/lattice.hpp"
#include "trg/triangulation.hpp"
#include "trg/trianguloid.hpp"

namespace trg {

struct EnumOptions {
  std::optional<std::size_t> limit;
  bool throw_on_limit = false;  // throw LimitExceeded instead of truncating
  int jobs = 1;
};

enum class SearchMethod { Trees, Axioms };

struct EnumerationReport {
  int m = 0, n = 0, graph_edges = 0;
  std::string method;
  std::size_t count = 0;
  bool truncated = false;
  double elapsed_ms = 0.0;
};

namespace detail {

/// Deterministic prefix-parallel backtracking driver. `work(k, cap)` explores
/// prefix k completely (emitting at most cap results); the final result is
/// the concatenation in prefix order, cut at the limit — independent of the
/// worker count.
template <class Item>
std::pair<std::vector<Item>, bool> run_prefixes(
    std::size_t prefix_count, const EnumOptions& opts,
    const std::function<std::vector<Item>(std::size_t, std::optional<std::size_t>)>& work) {
  const std::optional<std::size_t> cap = opts.limit;
  std::vector<std::vector<Item>> results(prefix_count);
  std::vector<char> done(prefix_count, 0);

  std::mutex mu;
  std::size_t contiguous_done = 0, contiguous_found = 0;
  std::atomic<bool> enough{false};
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      if (enough.load(std::memory_order_relaxed)) return;
      std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= prefix_count) return;
      std::vector<Item> r = work(k, cap);
      std::lock_guard<std::mutex> lock(mu);
      results[k] = std::move(r);
      done[k] = 1;
      while (contiguous_done < prefix_count && done[contiguous_done]) {
        contiguous_found += results[contiguous_done].size();
        ++contiguous_done;
      }
      if (cap && contiguous_found >= *cap) enough.store(true, std::memory_order_relaxed);
    }
  };

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<Item> merged;
  bool truncated = false;
  for (std::size_t k = 0; k < prefix_count; ++k) {
    if (!done[k]) break;  // only possible past the limit cut
    for (Item& it : results[k]) {
      if (cap && merged.size() >= *cap) {
        truncated = true;
        break;
      }
      merged.push_back(std::move(it));
    }
    if (truncated) break;
  }
  if (cap && !truncated) {
    // did the (possibly unfinished) tail hide more results?
    for (std::size_t k = 0; k < prefix_count; ++k)
      if (!done[k]) truncated = merged.size() >= *cap;
  }
  return {std::move(merged), truncated};
}

/// Symmetric lazily-memoized compatibility table over a fixed tree list.
class CompatTable {
 public:
  explicit CompatTable(const std::vector<Subgraph>* trees)
      : trees_(trees), cell_(trees->size() * (trees->size() + 1) / 2) {
    for (auto& c : cell_) c.store(0, std::memory_order_relaxed);
  }

  bool compatible(std::size_t p, std::size_t q) const {
    if (p == q) return true;
    if (p > q) std::swap(p, q);
    std::atomic<unsigned char>& c = cell_[q * (q + 1) / 2 + p];
    unsigned char v = c.load(std::memory_order_relaxed);
    if (v == 0) {
      v = is_compatible((*trees_)[p], (*trees_)[q]) ? 1 : 2;
      c.store(v, std::memory_order_relaxed);
    }
    return v == 1;
  }

 private:
  const std::vector<Subgraph>* trees_;
  mutable std::vector<std::atomic<unsigned char>> cell_;
};

}  // namespace detail

/// All triangulations of Q_G: backtracking over the points of P_G^- in
/// fail-first order, one spanning tree per point, pairwise compatible.
/// Deterministic; with a limit, the first `limit` families in search order
/// are returned. Output is canonically sorted.
inline std::vector<Triangulation> enumerate_triangulations(
    std::shared_ptr<const LatticeContext> ctx, const EnumOptions& opts = {},
    bool* truncated_out = nullptr) {
  const BipartiteGraph& g = ctx->graph();
  std::vector<Subgraph> trees = enumerate_spanning_trees(g);
  if (trees.size() > 6000)
    throw Error(Errc::TooLarge, "spanning tree family too large for the pairwise table");
  const PointSet& keys = ctx->pgminus();
  const std::size_t npts = keys.size();

  std::vector<std::vector<int>> bucket(npts);
  for (std::size_t t = 0; t < trees.size(); ++t) {
    int b = keys.index_of(ld_minus(trees[t]));
    if (b < 0) throw Error(Errc::Internal, "spanning tree degree vector outside P_G^-");
    bucket[b].push_back(static_cast<int>(t));
  }

  // fail-first: scarce points first
  std::vector<int> order(npts);
  for (std::size_t k = 0; k < npts; ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (bucket[x].size() != bucket[y].size()) return bucket[x].size() < bucket[y].size();
    return x < y;
  });

  detail::CompatTable table(&trees);

  // prefixes over the first two levels
  struct Prefix {
    int c0 = -1, c1 = -1;
  };
  std::vector<Prefix> prefixes;
  if (npts == 1) {
    for (int t : bucket[order[0]]) prefixes.push_back({t, -1});
  } else {
    for (int t0 : bucket[order[0]])
      for (int t1 : bucket[order[1]])
        if (table.compatible(t0, t1)) prefixes.push_back({t0, t1});
  }

  auto work = [&](std::size_t k, std::optional<std::size_t> cap) {
    std::vector<std::vector<int>> found;
    std::vector<int> chosen;
    chosen.push_back(prefixes[k].c0);
    if (prefixes[k].c1 >= 0) chosen.push_back(prefixes[k].c1);
    std::function<bool()> dfs = [&]() -> bool {  // returns false when capped
      if (chosen.size() == npts) {
        found.push_back(chosen);
        return !(cap && found.size() >= *cap);
      }
      for (int t : bucket[order[chosen.size()]]) {
        bool ok = true;
        for (int prev : chosen)
          if (!table.compatible(prev, t)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(t);
        bool keep = dfs();
        chosen.pop_back();
        if (!keep) return false;
      }
      return true;
    };
    dfs();
    return found;
  };

  auto [families, truncated] = detail::run_prefixes<std::vector<int>>(prefixes.size(), opts, work);
  if (truncated && opts.throw_on_limit)
    throw Error(Errc::LimitExceeded, "triangulation enumeration exceeded the limit");
  if (truncated_out) *truncated_out = truncated;

  std::vector<Triangulation> out;
  out.reserve(families.size());
  for (const std::vector<int>& fam : families) {
    std::vector<Subgraph> ts;
    ts.reserve(npts);
    for (std::size_t d = 0; d < npts; ++d) ts.push_back(trees[fam[d]]);
    out.push_back(validate(ctx, ts));
  }
  std::sort(out.begin(), out.end(),
            [](const Triangulation& a, const Triangulation& b) { return a.key() < b.key(); });
  return out;
}

inline std::vector<Triangulation> enumerate_triangulations(const BipartiteGraph& g,
                                                           const EnumOptions& opts = {},
                                                           bool* truncated_out = nullptr) {
  return enumerate_triangulations(std::make_shared<LatticeContext>(g), opts, truncated_out);
}

/// All trianguloids of G, found by assigning the entry partition point by
/// point over P_G in lex order, pruning with the containment and hexagon
/// axioms. Independent of any tree machinery.
inline std::vector<Trianguloid> enumerate_trianguloids(
    std::shared_ptr<const LatticeContext> ctx, const EnumOptions& opts = {},
    bool* truncated_out = nullptr) {
  const BipartiteGraph& g = ctx->graph();
  const int m = g.left_count(), n = g.right_count();
  const PointSet& pg = ctx->pg();
  const std::size_t npts = pg.size();
  auto gx = GammaIndex::build(ctx);

  // entry[point][dir-1]; only dirs with a_dir > 0 are meaningful
  struct Neighbor {
    int other;  // pg index of a' = a + e_i - e_j (upper) or a - e_i + e_j (lower)
    int dir;    // the shared direction i
    bool upper; // true: entry(a,dir) subset of entry(other,dir)
  };
  std::vector<std::vector<Neighbor>> nbrs(npts);
  for (std::size_t ai = 0; ai < npts; ++ai) {
    const Point& a = pg[ai];
    for (int i = 1; i <= m; ++i) {
      if (a[i - 1] == 0) continue;
      for (int j = 1; j <= m; ++j) {
        if (j == i || a[j - 1] == 0) continue;
        Point a2 = a;
        ++a2[i - 1];
        --a2[j - 1];
        int oi = pg.index_of(a2);
        if (oi >= 0) nbrs[ai].push_back({oi, i, true});
      }
      // lower neighbors a'' with a = a'' + e_i - e_j
      for (int j = 1; j <= m; ++j) {
        if (j == i) continue;
        Point a2 = a;
        --a2[i - 1];
        ++a2[j - 1];
        if (a2[i - 1] == 0) continue;  // entry at a'' in dir i is empty anyway
        int oi = pg.index_of(a2);
        if (oi >= 0) nbrs[ai].push_back({oi, i, false});
      }
    }
  }

  // hexagons trigger at their lex-largest involved point
  std::vector<Hexagon> hexes = enumerate_hexagons(*ctx);
  std::vector<std::vector<int>> hex_at(npts);
  std::vector<char> hex_cj_in_pgminus(hexes.size(), 0);
  for (std::size_t h = 0; h < hexes.size(); ++h) {
    int last = std::max(hexes[h].xi, std::max(hexes[h].yi, hexes[h].zi));
    hex_at[last].push_back(static_cast<int>(h));
    hex_cj_in_pgminus[h] = ctx->pgminus().contains(detail::plus_e(hexes[h].c, hexes[h].j)) ? 1 : 0;
  }

  using State = std::vector<std::vector<Mask>>;  // [point][dir-1]

  auto hexagon_ok = [&](const State& st, int h) {
    const Hexagon& hx = hexes[h];
    if (st[hx.xi][hx.j - 1] == st[hx.yi][hx.j - 1]) return true;
    return hex_cj_in_pgminus[h] && st[hx.zi][hx.k - 1] == st[hx.yi][hx.k - 1] &&
           st[hx.xi][hx.i - 1] == st[hx.zi][hx.i - 1];
  };

  // enumerate the admissible partitions at one point, given already-assigned
  // neighbors; yields masks-by-direction in deterministic order
  auto assignments_at = [&](const State& st, std::size_t ai, std::size_t assigned_upto,
                            const std::function<bool(const std::vector<Mask>&)>& sink) {
    const Point& a = pg[ai];
    std::vector<Mask> cap(m, full_mask(n)), must(m, 0);
    for (const Neighbor& nb : nbrs[ai]) {
      if (static_cast<std::size_t>(nb.other) >= assigned_upto) continue;
      if (nb.upper)
        cap[nb.dir - 1] &= st[nb.other][nb.dir - 1];
      else
        must[nb.dir - 1] |= st[nb.other][nb.dir - 1];
    }
    std::vector<int> capacity(m);
    for (int i = 0; i < m; ++i) capacity[i] = a[i];
    std::vector<Mask> cur(m, 0);
    std::function<bool(int)> place = [&](int j) -> bool {
      if (j == n) return sink(cur);
      Mask bit = Mask{1} << j;
      int forced = -1;
      for (int i = 0; i < m; ++i)
        if (must[i] & bit) {
          if (forced >= 0) return true;  // contradictory constraints: prune branch
          forced = i;
        }
      for (int i = 0; i < m; ++i) {
        if (forced >= 0 && i != forced) continue;
        if (capacity[i] == 0) continue;
        if (!(g.right_neighborhood(j + 1) >> i & 1)) continue;
        if (!(cap[i] & bit)) continue;
        --capacity[i];
        cur[i] |= bit;
        if (!place(j + 1)) return false;
        cur[i] &= ~bit;
        ++capacity[i];
      }
      return true;
    };
    place(0);
  };

  // prefixes = joint assignments of the first one or two points
  std::vector<State> prefixes;
  {
    State st(npts, std::vector<Mask>(m, 0));
    auto sink0 = [&](const std::vector<Mask>& s0) {
      st[0] = s0;
      bool ok = true;
      for (int h : hex_at[0]) ok &= hexagon_ok(st, h) != 0;
      if (!ok) return true;
      if (npts == 1) {
        prefixes.push_back(st);
        return true;
      }
      auto sink1 = [&](const std::vector<Mask>& s1) {
        st[1] = s1;
        bool ok1 = true;
        for (int h : hex_at[1]) ok1 &= hexagon_ok(st, h) != 0;
        if (ok1) prefixes.push_back(st);
        return true;
      };
      assignments_at(st, 1, 1, sink1);
      return true;
    };
    assignments_at(st, 0, 0, sink0);
  }

  const std::size_t prefix_depth = npts == 1 ? 1 : 2;

  auto work = [&](std::size_t k, std::optional<std::size_t> cap) {
    std::vector<State> found;
    State st = prefixes[k];
    std::function<bool(std::size_t)> dfs = [&](std::size_t ai) -> bool {
      if (ai == npts) {
        found.push_back(st);
        return !(cap && found.size() >= *cap);
      }
      bool keep = true;
      auto sink = [&](const std::vector<Mask>& s) {
        st[ai] = s;
        bool ok = true;
        for (int h : hex_at[ai]) ok &= hexagon_ok(st, h) != 0;
        if (ok) keep = dfs(ai + 1);
        st[ai].assign(m, 0);
        return keep;
      };
      assignments_at(st, ai, ai, sink);
      return keep;
    };
    dfs(prefix_depth);
    return found;
  };

  auto [states, truncated] = detail::run_prefixes<State>(prefixes.size(), opts, work);
  if (truncated && opts.throw_on_limit)
    throw Error(Errc::LimitExceeded, "trianguloid enumeration exceeded the limit");
  if (truncated_out) *truncated_out = truncated;

  std::vector<Trianguloid> out;
  out.reserve(states.size());
  for (const State& st : states) {
    std::vector<Mask> entries(gx->edges.size());
    for (std::size_t e = 0; e < gx->edges.size(); ++e) {
      const GammaEdge& ge = gx->edges[e];
      entries[e] = st[pg.index_of(ge.to)][ge.dir - 1];
    }
    out.emplace_back(gx, std::move(entries));
  }
  std::sort(out.begin(), out.end(),
            [](const Trianguloid& a, const Trianguloid& b) { return a.entries() < b.entries(); });
  return out;
}

inline std::vector<Trianguloid> enumerate_trianguloids(const BipartiteGraph& g,
                                                       const EnumOptions& opts = {},
                                                       bool* truncated_out = nullptr) {
  return enumerate_trianguloids(std::make_shared<LatticeContext>(g), opts, truncated_out);
}

struct PhiInjectivity {
  bool injective = true;
  std::size_t first = 0, second = 0;  // witness indices when not injective
};

/// Distinctness of the maps phi over all triangulations of G.
inline PhiInjectivity phi_injectivity(const BipartiteGraph& g, const EnumOptions& opts = {}) {
  std::vector<Triangulation> all = enumerate_triangulations(g, opts);
  std::map<std::string, std::size_t> seen;
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto [it, fresh] = seen.insert({phi(all[k]).canonical_key(), k});
    if (!fresh) return {false, it->second, k};
  }
  return {true, 0, 0};
}

struct FlipProbe {
  std::size_t total = 0;
  std::size_t reached_from_first = 0;
  std::size_t components = 0;
};

/// Reachability data over the enumerated set where two triangulations are
/// adjacent when they differ in exactly one indexed tree, by a single edge
/// exchange. Recorded, not asserted: nothing in the theory promises this
/// graph is connected.
inline FlipProbe flip_probe(const std::vector<Triangulation>& all) {
  FlipProbe probe;
  probe.total = all.size();
  if (all.empty()) return probe;
  auto adjacent = [&](const Triangulation& a, const Triangulation& b) {
    int diff_points = 0;
    int diff_edges = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a.trees()[k] == b.trees()[k]) continue;
      ++diff_points;
      if (diff_points > 1) return false;
      for (int i = 1; i <= a.graph().left_count(); ++i)
        diff_edges += std::popcount(a.trees()[k].row(i) & ~b.trees()[k].row(i));
    }
    return diff_points == 1 && diff_edges == 1;
  };
  std::vector<int> label(all.size(), -1);
  int comp = 0;
  for (std::size_t s = 0; s < all.size(); ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> queue{s};
    label[s] = comp;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t t = 0; t < all.size(); ++t)
        if (label[t] < 0 && adjacent(all[queue[h]], all[t])) {
          label[t] = comp;
          queue.push_back(t);
        }
    ++comp;
  }
  probe.components = comp;
  for (int l : label) probe.reached_from_first += l == 0;
  return probe;
}

}  // namespace trg

#endif  // TRG_SEARCH_HPP
