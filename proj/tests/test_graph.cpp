// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "trg/graph.hpp"

using namespace trg;
using test::sub;

TEST_CASE("graph construction") {
  BipartiteGraph k34 = BipartiteGraph::create(3, 4, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  CHECK(k34 == BipartiteGraph::complete(3, 4));
  CHECK(k34.edge_count() == 12);
  CHECK(k34.is_complete());

  BipartiteGraph fig6 = test::fig6_graph();
  CHECK(fig6.edge_count() == 11);
  CHECK(fig6.right_neighborhood(2) == 0b011);
  CHECK_FALSE(fig6.is_complete());

  CHECK_THROWS_MATCHES(BipartiteGraph::create(2, 2, {{1}, {2}}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::Disconnected; }));
  CHECK_THROWS_AS(BipartiteGraph::create(0, 2, {{1}, {1}}), Error);
  CHECK_THROWS_AS(BipartiteGraph::create(33, 1, {{1}}), Error);
  CHECK_THROWS_AS(BipartiteGraph::create(2, 2, {{1, 3}, {2}}), Error);
}

TEST_CASE("dual graphs") {
  CHECK(BipartiteGraph::complete(3, 4).dual() == BipartiteGraph::complete(4, 3));

  BipartiteGraph d = test::fig6_graph().dual();
  CHECK(d.left_count() == 5);
  CHECK(d.right_count() == 3);
  CHECK(d.right_neighborhood(1) == 0b01011);   // {1,2,4}
  CHECK(d.right_neighborhood(2) == 0b10111);   // {1,2,3,5}
  CHECK(d.right_neighborhood(3) == 0b11101);   // {1,3,4,5}
  CHECK(d.dual() == test::fig6_graph());

  BipartiteGraph path = BipartiteGraph::create(2, 1, {{1, 2}});
  CHECK(path.dual() == BipartiteGraph::create(1, 2, {{1}, {1}}));
  CHECK(path.dual().dual() == path);
}

TEST_CASE("degree vectors") {
  BipartiteGraph k34 = BipartiteGraph::complete(3, 4);
  Subgraph center = sub(k34, {{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});
  CHECK(degree_vector(center, Side::Left, true).entries == std::vector<int>{1, 1, 1});
  CHECK(degree_vector(center, Side::Right, false).entries == std::vector<int>{1, 1, 2, 2});

  Subgraph empty(k34.left_count(), k34.right_count());
  CHECK(degree_vector(empty, Side::Left, false).entries == std::vector<int>{0, 0, 0});
}

TEST_CASE("classification") {
  BipartiteGraph k34 = BipartiteGraph::complete(3, 4);
  Subgraph center = sub(k34, {{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});
  Classification c = classify(center);
  CHECK(c.is_forest);
  CHECK(c.is_spanning_tree);
  CHECK_FALSE(c.is_rsm);

  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  Classification pm = classify(sub(k22, {{1, 1}, {2, 2}}));
  CHECK(pm.is_forest);
  CHECK(pm.is_pm);
  CHECK(pm.is_rsm);
  CHECK(pm.is_lsm);
  CHECK_FALSE(pm.is_spanning_tree);

  Classification cyc = classify(sub(k22, {{1, 1}, {2, 1}, {1, 2}, {2, 2}}));
  CHECK_FALSE(cyc.is_forest);
  CHECK_FALSE(cyc.is_spanning_tree);
}

TEST_CASE("classification matches a DFS cycle check on all small subgraphs") {
  for (const BipartiteGraph& g : {BipartiteGraph::complete(2, 2), BipartiteGraph::complete(2, 3),
                                  BipartiteGraph::complete(3, 3)}) {
    for (const Subgraph& f : test::all_subgraphs(g)) {
      CAPTURE(f.rows());
      CHECK(classify(f).is_forest == test::acyclic_by_dfs(f));
    }
  }
}

TEST_CASE("supports") {
  BipartiteGraph k34 = BipartiteGraph::complete(3, 4);
  auto [left, right] = supports(sub(k34, {{1, 2}, {3, 1}}));
  CHECK(left == 0b101);
  CHECK(right == 0b11);

  auto [el, er] = supports(Subgraph(3, 4));
  CHECK(el == 0);
  CHECK(er == 0);

  Subgraph center = sub(k34, {{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});
  CHECK_THROWS_MATCHES(supports(center), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::NotPartialMatching;
                       }));
}

TEST_CASE("supports have equal sizes on every partial matching") {
  BipartiteGraph g = test::fig6_graph();
  for (const Subgraph& f : test::all_subgraphs(BipartiteGraph::complete(2, 3))) {
    if (!classify(f).is_pm) continue;
    auto [l, r] = supports(f);
    CHECK(std::popcount(l) == std::popcount(r));
  }
  for (const Subgraph& f : test::all_subgraphs(g)) {
    if (!classify(f).is_pm) continue;
    auto [l, r] = supports(f);
    CHECK(std::popcount(l) == std::popcount(r));
  }
}

TEST_CASE("components") {
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  Components empty = components(Subgraph(2, 2));
  CHECK(empty.count == 4);

  Components tree = components(sub(k22, {{1, 1}, {1, 2}, {2, 2}}));
  CHECK(tree.count == 1);

  Components one = components(sub(k22, {{1, 1}}));
  CHECK(one.count == 3);
  CHECK(one.same(1, 1));
  CHECK_FALSE(one.same(2, 1));
  CHECK_FALSE(one.same(2, 2));
}

TEST_CASE("spanning tree enumeration") {
  auto brute_count = [](const BipartiteGraph& g) {
    std::size_t c = 0;
    for (const Subgraph& f : test::all_subgraphs(g)) c += classify(f).is_spanning_tree;
    return c;
  };

  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  CHECK(enumerate_spanning_trees(k22).size() == 4);
  CHECK(brute_count(k22) == 4);

  BipartiteGraph k23 = BipartiteGraph::complete(2, 3);
  CHECK(enumerate_spanning_trees(k23).size() == 12);
  CHECK(brute_count(k23) == 12);

  CHECK(enumerate_spanning_trees(BipartiteGraph::complete(3, 3)).size() == 81);
  CHECK(spanning_tree_count(BipartiteGraph::complete(3, 4)) == 432);
  CHECK(spanning_tree_count(BipartiteGraph::complete(4, 4)) == 4096);

  // canonical order and uniqueness
  std::vector<Subgraph> trees = enumerate_spanning_trees(k23);
  CHECK(std::is_sorted(trees.begin(), trees.end(),
                       [](const Subgraph& a, const Subgraph& b) { return a.edges() < b.edges(); }));
  for (const Subgraph& t : trees) CHECK(classify(t).is_spanning_tree);
}

TEST_CASE("tree degree sums") {
  for (const BipartiteGraph& g : {BipartiteGraph::complete(3, 3), test::fig6_graph()}) {
    const int m = g.left_count(), n = g.right_count();
    for (const Subgraph& t : enumerate_spanning_trees(g)) {
      int lsum = 0, rsum = 0;
      for (int v : degree_vector(t, Side::Left, true).entries) lsum += v;
      for (int v : degree_vector(t, Side::Right, true).entries) rsum += v;
      CHECK(lsum == n - 1);
      CHECK(rsum == m - 1);
    }
  }
}

TEST_CASE("degree vectors transpose under dual") {
  BipartiteGraph g = test::fig6_graph();
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    Subgraph f = test::random_forest(g, rng);
    Subgraph ft = f.transpose();
    CHECK(degree_vector(f, Side::Left, false).entries ==
          degree_vector(ft, Side::Right, false).entries);
    CHECK(degree_vector(f, Side::Right, false).entries ==
          degree_vector(ft, Side::Left, false).entries);
  }
}
