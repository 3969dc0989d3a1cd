// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "trg/json_io.hpp"
#include "trg/trianguloid.hpp"

using namespace trg;
using test::sub;

namespace {

Triangulation fig1_tau() { return triangulation_from_json(test::load_fixture("fig1.json")); }
Trianguloid fig1_loid() { return trianguloid_from_json(test::load_fixture("fig1_trianguloid.json")); }
Trianguloid fig3_loid() { return trianguloid_from_json(test::load_fixture("fig3_trianguloid.json")); }

Triangulation fig6_tau() {
  Collection coll = collection_from_json(test::load_fixture("fig6_rsm.json"));
  return reconstruct(coll.graph, coll.subgraphs, CollectionKind::Rsm);
}

Mask set_of(std::initializer_list<int> js) {
  Mask s = 0;
  for (int j : js) s |= Mask{1} << (j - 1);
  return s;
}

/// Path-lemma property: for every simple tree path starting at a right vertex
/// and ending at a left vertex, labels propagate to all later entry points.
void check_path_lemma(const Trianguloid& t, const Point& b, const Subgraph& tree) {
  const int m = tree.left_count(), n = tree.right_count();
  // adjacency; vertices 0..m-1 left, m..m+n-1 right
  std::vector<std::vector<int>> adj(m + n);
  for (const Edge& e : tree.edges()) {
    adj[e.i - 1].push_back(m + e.j - 1);
    adj[m + e.j - 1].push_back(e.i - 1);
  }
  for (int j0 = 0; j0 < n; ++j0) {
    for (int i_end = 0; i_end < m; ++i_end) {
      // unique tree path from right j0 to left i_end, if connected
      std::vector<int> prev(m + n, -2);
      std::vector<int> queue{m + j0};
      prev[m + j0] = -1;
      for (std::size_t h = 0; h < queue.size(); ++h)
        for (int w : adj[queue[h]])
          if (prev[w] == -2) {
            prev[w] = queue[h];
            queue.push_back(w);
          }
      if (prev[i_end] == -2) continue;
      std::vector<int> path;
      for (int v = i_end; v != -1; v = prev[v]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      if (path.size() % 2 != 0) continue;  // must end on the left side
      const std::size_t r = path.size() / 2;
      // path = j_1, i_1, j_2, i_2, ..., j_r, i_r
      for (std::size_t s = 1; s <= r; ++s) {
        int js = path[2 * (s - 1)] - m + 1;
        int is = path[2 * (s - 1) + 1] + 1;
        REQUIRE(tree.has_edge(is, js));
        for (std::size_t tt = s; tt <= r; ++tt) {
          int it = path[2 * (tt - 1) + 1] + 1;
          Point a = b;
          ++a[it - 1];
          CAPTURE(b, path, s, tt);
          CHECK((t.entry_into(a, is) >> (js - 1) & 1) == 1);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("encoding the reference triangulation reproduces the transcribed arrows") {
  Trianguloid built = from_triangulation(fig1_tau());
  Trianguloid fixture = fig1_loid();
  CHECK(built == fixture);
  CHECK(built.entry_into(Point{1, 1, 2}, 3) == set_of({3, 4}));
  CHECK(built.entry_into(Point{4, 0, 0}, 1) == set_of({1, 2, 3, 4}));
}

TEST_CASE("general-graph encoding uses right semi-matchings") {
  Triangulation tau = fig6_tau();
  Trianguloid t = from_triangulation(tau);
  CHECK(t.entry_into(Point{1, 1, 3}, 3) == set_of({3, 4, 5}));
  // arrows out of P_G^- match the trees (the two definitions agree)
  for (const Point& b : t.context().pgminus()) {
    Subgraph tree = tau.tree_at(b);
    for (int i = 1; i <= 3; ++i) {
      Point a = b;
      ++a[i - 1];
      CHECK(t.entry_into(a, i) == tree.row(i));
    }
  }
  CHECK(check_axioms(t).is_trianguloid());
}

TEST_CASE("trees read off a pre-trianguloid") {
  Trianguloid t1 = fig1_loid();
  CHECK(tree_of(t1, {1, 1, 1}).edges() ==
        std::vector<Edge>{{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});

  Trianguloid t3 = fig3_loid();
  CHECK(tree_of(t3, {0, 0, 1}).edges() == std::vector<Edge>{{1, 2}, {2, 1}, {3, 1}, {3, 2}});

  // at a corner of the complete graph, one left vertex carries everything
  Subgraph corner = tree_of(t1, {3, 0, 0});
  CHECK(corner.left_degree(1) == 4);

  for (const Point& b : t3.context().pgminus()) CHECK(classify(tree_of(t3, b)).is_spanning_tree);
}

TEST_CASE("axiom checks") {
  AxiomReport good = check_axioms(fig1_loid());
  CHECK(good.t1);
  CHECK(good.t2);
  CHECK(good.t3);
  CHECK(good.t4);
  CHECK(good.partition);
  CHECK(good.is_trianguloid());
  CHECK(good.violations.empty());

  AxiomReport bad = check_axioms(fig3_loid());
  CHECK(bad.t1);
  CHECK(bad.t2);
  CHECK(bad.t3);
  CHECK(bad.partition);
  CHECK_FALSE(bad.t4);
  CHECK(bad.is_pre());
  CHECK_FALSE(bad.is_trianguloid());
  REQUIRE_FALSE(bad.violations.empty());
  bool found_location = false;
  for (const AxiomViolation& v : bad.violations)
    found_location |= v.axiom == "T4'" && v.at == Point{0, 0, 0} && v.dirs == std::vector<int>{1, 2, 3};
  CHECK(found_location);

  // breaking one entry's size breaks T1'
  Trianguloid t = fig1_loid();
  std::vector<Mask> entries = t.entries();
  entries[0] ^= 1;
  AxiomReport broken = check_axioms(Trianguloid(t.gamma_ptr(), entries));
  CHECK_FALSE(broken.t1);
}

TEST_CASE("round trips through triangulations") {
  Triangulation tau = fig1_tau();
  Trianguloid t = from_triangulation(tau);
  Triangulation back = to_triangulation(t);
  CHECK(back == tau);

  Triangulation tau6 = fig6_tau();
  CHECK(to_triangulation(from_triangulation(tau6)) == tau6);

  CHECK_THROWS_MATCHES(to_triangulation(fig3_loid()), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::NotTrianguloid; }));
}

TEST_CASE("edge coloring matches the transcription") {
  EdgeColoring built = encode_coloring(fig1_loid());
  EdgeColoring fixture = coloring_from_json(test::load_fixture("fig4_coloring.json"));
  REQUIRE(built.colors.size() == fixture.colors.size());
  CHECK(built.colors == fixture.colors);

  auto color_of = [&](Point from, Point to) {
    for (const ColoredLambdaEdge& e : built.colors)
      if (e.from == from && e.to == to) return e.color;
    return -1;
  };
  CHECK(color_of({0, 2, 1}, {1, 1, 1}) == 4);
  CHECK(color_of({1, 1, 1}, {0, 2, 1}) == 1);
}

TEST_CASE("coloring decodes back to the map") {
  Trianguloid t1 = fig1_loid();
  CHECK(decode_coloring(t1.graph(), encode_coloring(t1)) == t1);

  // pre-trianguloids (not only trianguloids) are reconstructible
  Trianguloid t3 = fig3_loid();
  CHECK(decode_coloring(t3.graph(), encode_coloring(t3)) == t3);

  // tampering with one color is caught
  EdgeColoring c = encode_coloring(t1);
  c.colors[0].color = c.colors[0].color % 4 + 1;
  CHECK_THROWS_MATCHES(decode_coloring(t1.graph(), c), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::InconsistentColoring;
                       }));

  // colorings are a complete-graph feature
  Trianguloid t6 = from_triangulation(fig6_tau());
  CHECK_THROWS_MATCHES(encode_coloring(t6), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::NotComplete;
                       }));
}

TEST_CASE("label support") {
  Trianguloid t1 = fig1_loid();
  for (int j = 1; j <= 4; ++j) CHECK(label_support(t1, j) == t1.context().pg());

  Trianguloid t6 = from_triangulation(fig6_tau());
  const LatticeContext& ctx = t6.context();
  for (int j = 1; j <= 5; ++j) {
    std::vector<Point> expect;
    Mask nb = t6.graph().right_neighborhood(j);
    for (const Point& b : ctx.pgminus()) {
      Mask r = nb;
      while (r) {
        int i = std::countr_zero(r) + 1;
        r &= r - 1;
        Point a = b;
        ++a[i - 1];
        expect.push_back(std::move(a));
      }
    }
    CHECK(label_support(t6, j) == PointSet(std::move(expect)));
  }
}

TEST_CASE("path lemma") {
  Trianguloid t1 = fig1_loid();
  for (const Point& b : t1.context().pgminus()) check_path_lemma(t1, b, tree_of_unchecked(t1, b));

  Trianguloid t3 = fig3_loid();
  for (const Point& b : t3.context().pgminus()) check_path_lemma(t3, b, tree_of_unchecked(t3, b));

  Trianguloid t6 = from_triangulation(fig6_tau());
  for (const Point& b : t6.context().pgminus()) check_path_lemma(t6, b, tree_of_unchecked(t6, b));
}
