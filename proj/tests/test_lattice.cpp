// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "trg/lattice.hpp"

using namespace trg;

namespace {

std::set<Point> as_set(const PointSet& ps) { return {ps.begin(), ps.end()}; }

}  // namespace

TEST_CASE("P_G lattice points") {
  CHECK(points_pg(BipartiteGraph::complete(3, 4)).size() == 15);
  CHECK(points_pg(test::fig6_graph()).size() == 16);

  BipartiteGraph path = BipartiteGraph::create(2, 1, {{1, 2}});
  CHECK(as_set(points_pg(path)) == std::set<Point>{{1, 0}, {0, 1}});
}

TEST_CASE("P_G^- lattice points") {
  PointSet k34 = points_pgminus(BipartiteGraph::complete(3, 4));
  CHECK(k34.size() == 10);
  for (const Point& b : k34) CHECK(b[0] + b[1] + b[2] == 3);

  CHECK(points_pgminus(test::fig6_graph()).size() == 10);
  CHECK(as_set(points_pgminus(BipartiteGraph::complete(2, 2))) == std::set<Point>{{1, 0}, {0, 1}});
}

TEST_CASE("P_G^+- lattice points") {
  for (auto [m, n] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
    BipartiteGraph g = BipartiteGraph::complete(m, n);
    CHECK(points_pgpm(g) == points_pgminus(g));
  }

  BipartiteGraph fig6 = test::fig6_graph();
  PointSet pm = points_pgpm(fig6), minus = points_pgminus(fig6);
  for (const Point& b : minus) CHECK(pm.contains(b));
  CHECK(pm.size() > minus.size());

  BipartiteGraph path = BipartiteGraph::create(2, 1, {{1, 2}});
  CHECK(as_set(points_pgpm(path)) == std::set<Point>{{0, 0}});
}

TEST_CASE("P_G^- equals the trimmed degree vectors of spanning trees") {
  for (const BipartiteGraph& g :
       {BipartiteGraph::complete(2, 2), BipartiteGraph::complete(2, 3), BipartiteGraph::complete(3, 3),
        BipartiteGraph::complete(3, 4), test::fig6_graph()}) {
    std::set<Point> image;
    for (const Subgraph& t : enumerate_spanning_trees(g))
      image.insert(degree_vector(t, Side::Left, true).entries);
    CHECK(image == as_set(points_pgminus(g)));
  }
}

TEST_CASE("P_G equals left-degree vectors of right-degree-one subgraphs and of RSM forests") {
  for (const BipartiteGraph& g : {BipartiteGraph::complete(2, 3), BipartiteGraph::complete(3, 3),
                                  test::fig6_graph()}) {
    std::set<Point> all_rd1, rsm_only;
    for (const Subgraph& f : test::all_subgraphs(g)) {
      bool rd1 = true;
      for (int j = 1; j <= g.right_count(); ++j) rd1 &= f.right_degree(j) == 1;
      if (!rd1) continue;
      all_rd1.insert(degree_vector(f, Side::Left, false).entries);
      if (classify(f).is_rsm) rsm_only.insert(degree_vector(f, Side::Left, false).entries);
    }
    CHECK(all_rd1 == as_set(points_pg(g)));
    CHECK(rsm_only == all_rd1);
  }
}

TEST_CASE("Hall membership agrees with the Minkowski-difference test") {
  for (const BipartiteGraph& g : {BipartiteGraph::complete(2, 3), BipartiteGraph::complete(3, 3),
                                  BipartiteGraph::complete(3, 4), test::fig6_graph()}) {
    LatticeContext ctx(g);
    const int m = g.left_count(), n = g.right_count();
    std::vector<int> v(m, 0);
    auto next = [&]() {
      for (int i = 0; i < m; ++i) {
        if (v[i] < n) {
          ++v[i];
          return true;
        }
        v[i] = 0;
      }
      return false;
    };
    do {
      bool hall = ctx.in_pgminus(v);
      bool shift = ctx.in_pgminus_shift(v);
      CAPTURE(v);
      CHECK(hall == shift);
      CHECK(hall == ctx.pgminus().contains(v));
      CHECK(ctx.in_pg(v) == ctx.pg().contains(v));
    } while (next());
  }
}

TEST_CASE("containment chain of the three point sets") {
  for (const BipartiteGraph& g : {BipartiteGraph::complete(3, 4), test::fig6_graph()}) {
    LatticeContext ctx(g);
    const int n = g.right_count();
    for (const Point& b : ctx.pgminus()) CHECK(ctx.pgpm().contains(b));
    for (const Point& b : ctx.pgpm()) {
      int sum = 0;
      for (int x : b) {
        CHECK(x >= 0);
        sum += x;
      }
      CHECK(sum == n - 1);
    }
  }
}

TEST_CASE("matching support pairs") {
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  std::vector<std::pair<Mask, Mask>> ij = ij_supports(k22);
  CHECK(ij.size() == 6);
  CHECK(std::count(ij.begin(), ij.end(), std::pair<Mask, Mask>{0, 0}) == 1);
  CHECK(std::count(ij.begin(), ij.end(), std::pair<Mask, Mask>{0b11, 0b11}) == 1);

  // brute-force oracle over all subgraphs
  auto oracle = [](const BipartiteGraph& g) {
    std::set<std::pair<Mask, Mask>> out;
    for (const Subgraph& f : test::all_subgraphs(g)) {
      if (!classify(f).is_pm) continue;
      out.insert(supports(f));
    }
    return out;
  };

  for (const BipartiteGraph& g : {k22, BipartiteGraph::complete(2, 3), BipartiteGraph::complete(3, 3),
                                  test::fig6_graph()}) {
    std::vector<std::pair<Mask, Mask>> got = ij_supports(g);
    std::set<std::pair<Mask, Mask>> want = oracle(g);
    CHECK(std::set<std::pair<Mask, Mask>>(got.begin(), got.end()) == want);
    CHECK(got.size() == want.size());
  }

  CHECK(ij_supports(BipartiteGraph::complete(3, 3)).size() == 20);
}

TEST_CASE("gamma and lambda edges") {
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  std::vector<GammaEdge> ge = gamma_edges(k22);
  CHECK(ge.size() == 4);
  std::set<std::pair<Point, Point>> got;
  for (const GammaEdge& e : ge) {
    got.insert({e.from, e.to});
    Point expect = e.from;
    ++expect[e.dir - 1];
    CHECK(expect == e.to);
  }
  CHECK(got == std::set<std::pair<Point, Point>>{{{1, 0}, {2, 0}},
                                                 {{1, 0}, {1, 1}},
                                                 {{0, 1}, {1, 1}},
                                                 {{0, 1}, {0, 2}}});

  std::vector<LambdaEdge> le = lambda_edges(k22);
  CHECK(le.size() == 2);
  CHECK(le[0].from == Point{0, 1});
  CHECK(le[0].to == Point{1, 0});
  CHECK(le[1].from == Point{1, 0});
  CHECK(le[1].to == Point{0, 1});

  CHECK(gamma_edges(BipartiteGraph::complete(3, 4)).size() == 30);
}
