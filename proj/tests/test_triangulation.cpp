// Copyright (c) 2026 The trianguloids authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "trg/json_io.hpp"
#include "trg/triangulation.hpp"

using namespace trg;
using test::sub;

namespace {

Triangulation fig1() { return triangulation_from_json(test::load_fixture("fig1.json")); }

Triangulation k22_tau() {
  BipartiteGraph g = BipartiteGraph::complete(2, 2);
  return validate(g, {sub(g, {{1, 1}, {1, 2}, {2, 2}}), sub(g, {{1, 1}, {2, 1}, {2, 2}})});
}

Triangulation fig6_tau() {
  Collection coll = collection_from_json(test::load_fixture("fig6_rsm.json"));
  return reconstruct(coll.graph, coll.subgraphs, CollectionKind::Rsm);
}

std::set<std::vector<Mask>> rows_set(const std::vector<Subgraph>& fs) {
  std::set<std::vector<Mask>> out;
  for (const Subgraph& f : fs) out.insert(f.rows());
  return out;
}

}  // namespace

TEST_CASE("validation accepts the reference family") {
  Triangulation tau = fig1();
  CHECK(tau.size() == 10);
  CHECK(tau.graph() == BipartiteGraph::complete(3, 4));
  Subgraph center = tau.tree_at({1, 1, 1});
  CHECK(center.edges() == std::vector<Edge>{{1, 1}, {1, 4}, {2, 2}, {2, 3}, {3, 3}, {3, 4}});
}

TEST_CASE("validation rejects incompatible families") {
  auto [g, trees] = triangulation_input_from_json(test::load_fixture("fig3_family.json"));
  ValidationReport rep = validate_report(std::make_shared<LatticeContext>(g), trees);
  CHECK_FALSE(rep.ok);
  CHECK(rep.error == Errc::IncompatiblePair);
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("validation failure modes") {
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  auto ctx = std::make_shared<LatticeContext>(k22);

  ValidationReport not_tree =
      validate_report(ctx, {sub(k22, {{1, 1}}), sub(k22, {{1, 1}, {2, 1}, {2, 2}})});
  CHECK(not_tree.error == Errc::NotSpanningTree);

  Subgraph t = sub(k22, {{1, 1}, {1, 2}, {2, 2}});
  ValidationReport dup = validate_report(ctx, {t, t});
  CHECK(dup.error == Errc::DuplicateDegreeVector);

  ValidationReport cover = validate_report(ctx, {t});
  CHECK(cover.error == Errc::CoverageMismatch);
  CHECK(cover.missing == std::vector<Point>{{0, 1}});
}

TEST_CASE("a one-point family is a triangulation") {
  BipartiteGraph path = BipartiteGraph::create(2, 1, {{1, 2}});
  Triangulation tau = validate(path, {sub(path, {{1, 1}, {2, 1}})});
  CHECK(tau.size() == 1);
}

TEST_CASE("forest collections of the reference family") {
  Triangulation tau = fig1();
  CHECK(rsm_set(tau).size() == 15);
  std::vector<Subgraph> pms = pm_set(tau);
  CHECK(rows_set(pms).count(std::vector<Mask>{0, 0, 0}) == 1);

  Triangulation t6 = fig6_tau();
  std::vector<Subgraph> rsm6 = rsm_set(t6);
  CHECK(rsm6.size() == 16);
  Collection coll = collection_from_json(test::load_fixture("fig6_rsm.json"));
  CHECK(rows_set(rsm6) == rows_set(coll.subgraphs));

  // every forest of the complex is a subforest of a tree and vice versa
  std::vector<Subgraph> forests = forests_of(k22_tau());
  for (const Subgraph& f : forests) CHECK(classify(f).is_forest);
  CHECK(rows_set(forests).count(std::vector<Mask>{0, 0}) == 1);
}

TEST_CASE("right semi-matching lookup") {
  Triangulation t6 = fig6_tau();
  CHECK(rsm_at(t6, {1, 1, 3}).edges() ==
        std::vector<Edge>{{1, 1}, {2, 2}, {3, 3}, {3, 4}, {3, 5}});
  CHECK(rsm_at(t6, {3, 1, 1}).edges() ==
        std::vector<Edge>{{1, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}});
  CHECK_THROWS_MATCHES(rsm_at(t6, {5, 0, 0}), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::PointOutsidePG;
                       }));

  Triangulation k22 = k22_tau();
  CHECK(rsm_at(k22, {2, 0}).edges() == std::vector<Edge>{{1, 1}, {1, 2}});
}

TEST_CASE("phi") {
  Triangulation tau = fig1();
  PhiMap map = phi(tau);
  CHECK(map.values[map.domain.index_of({1, 1, 1})] == Point{0, 0, 1, 1});
  CHECK(map.values[map.domain.index_of({3, 0, 0})] == Point{0, 1, 1, 0});
  const int m = tau.graph().left_count();
  for (const Point& v : map.values) {
    int sum = 0;
    for (int x : v) sum += x;
    CHECK(sum == m - 1);
  }

  BipartiteGraph k13 = BipartiteGraph::complete(1, 3);
  Triangulation trivial = validate(k13, {sub(k13, {{1, 1}, {1, 2}, {1, 3}})});
  PhiMap tm = phi(trivial);
  CHECK(tm.domain.size() == 1);
  CHECK(tm.values[0] == Point{0, 0, 0});
}

TEST_CASE("reconstruction from collections") {
  Triangulation tau = k22_tau();
  for (CollectionKind kind :
       {CollectionKind::Trees, CollectionKind::Rsm, CollectionKind::Lsm, CollectionKind::Pm}) {
    std::vector<Subgraph> coll = kind == CollectionKind::Trees ? tau.trees()
                                 : kind == CollectionKind::Rsm ? rsm_set(tau)
                                 : kind == CollectionKind::Lsm ? lsm_set(tau)
                                                               : pm_set(tau);
    Triangulation back = reconstruct(tau.context_ptr(), coll, kind);
    CHECK(back == tau);
  }

  Triangulation t1 = fig1();
  CHECK(reconstruct(t1.context_ptr(), t1.trees(), CollectionKind::Trees) == t1);

  // a junk collection cannot reconstruct
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  CHECK_THROWS_MATCHES(
      reconstruct(k22, {sub(k22, {{1, 1}, {2, 2}}), sub(k22, {{1, 2}, {2, 1}})}, CollectionKind::Pm),
      Error, Catch::Matchers::Predicate<Error>(
                 [](const Error& e) { return e.code() == Errc::ReconstructionFailed; }));
}

TEST_CASE("forest-level reconstruction on small graphs") {
  // the forest set of the complex equals all forests compatible with each
  // defining collection
  for (Triangulation tau : {k22_tau()}) {
    std::vector<Subgraph> all_forests;
    for (const Subgraph& f : test::all_subgraphs(tau.graph()))
      if (classify(f).is_forest) all_forests.push_back(f);
    std::set<std::vector<Mask>> complex_forests = rows_set(forests_of(tau));
    for (CollectionKind kind :
         {CollectionKind::Trees, CollectionKind::Rsm, CollectionKind::Lsm, CollectionKind::Pm}) {
      std::vector<Subgraph> coll = kind == CollectionKind::Trees ? tau.trees()
                                   : kind == CollectionKind::Rsm ? rsm_set(tau)
                                   : kind == CollectionKind::Lsm ? lsm_set(tau)
                                                                 : pm_set(tau);
      std::set<std::vector<Mask>> filtered;
      for (const Subgraph& f : all_forests) {
        bool ok = true;
        for (const Subgraph& x : coll)
          if (!is_compatible(f, x)) {
            ok = false;
            break;
          }
        if (ok) filtered.insert(f.rows());
      }
      CHECK(filtered == complex_forests);
    }
  }
}

TEST_CASE("replaceable edges") {
  BipartiteGraph k22 = BipartiteGraph::complete(2, 2);
  Subgraph t = sub(k22, {{1, 1}, {1, 2}, {2, 2}});
  CHECK(is_replaceable(k22, t, {1, 2}));
  CHECK_FALSE(is_replaceable(k22, t, {1, 1}));
  CHECK_THROWS_MATCHES(is_replaceable(k22, t, {2, 1}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::EdgeNotInTree; }));

  // a path graph is its own unique triangulation; no edge is replaceable
  BipartiteGraph path = BipartiteGraph::create(2, 2, {{1}, {1, 2}});
  Subgraph whole = sub(path, {{1, 1}, {1, 2}, {2, 2}});
  for (const Edge& e : whole.edges()) CHECK_FALSE(is_replaceable(path, whole, e));
}

TEST_CASE("flips") {
  Triangulation tau = k22_tau();
  Point b2 = flip(tau, {1, 0}, {1, 2});
  CHECK(b2 == Point{0, 1});
  CHECK(flip(tau, b2, {2, 1}) == Point{1, 0});

  CHECK_THROWS_MATCHES(flip(tau, {1, 0}, {1, 1}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::NotReplaceable; }));

  Triangulation t1 = fig1();
  Point b = {1, 1, 1};
  Point bp = flip(t1, b, {1, 4});
  const Subgraph& ta = t1.tree_at(b);
  const Subgraph& tb = t1.tree_at(bp);
  int removed = 0, added = 0;
  for (int i = 1; i <= 3; ++i) {
    removed += std::popcount(ta.row(i) & ~tb.row(i));
    added += std::popcount(tb.row(i) & ~ta.row(i));
  }
  CHECK(removed == 1);
  CHECK(added == 1);
  CHECK_FALSE(tb.has_edge(1, 4));
  // trees sharing all but one edge are compatible
  CHECK(is_compatible(ta, tb));
}
