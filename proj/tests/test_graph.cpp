#include <catch_amalgamated.hpp>

#include "avt/graph.hpp"

using namespace avt;

TEST_CASE("edges normalize endpoints and reject self-loops") {
  const Edge e = make_edge(4, 1);
  CHECK(e.u == 1);
  CHECK(e.v == 4);
  CHECK(make_edge(1, 4) == e);
  CHECK_THROWS_AS(make_edge(2, 2), GraphError);
}

TEST_CASE("snapshot construction validates input") {
  const Snapshot tri = Snapshot::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(tri.m == 3);
  CHECK(tri.degree(0) == 2);
  CHECK(tri.has_edge(2, 0));
  CHECK_FALSE(tri.has_edge(0, 0));

  CHECK_THROWS_AS(Snapshot::from_edges(3, {{0, 1}, {0, 1}}), GraphError);
  CHECK_THROWS_AS(Snapshot::from_edges(3, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(Snapshot::from_edges(3, {{1, 1}}), GraphError);
}

TEST_CASE("degree sum equals twice the edge count") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 20; ++c) {
    const Snapshot s = random_gnp_snapshot(30, 0.1, rng);
    std::size_t sum = 0;
    for (Vertex v = 0; v < s.n; ++v) sum += s.degree(v);
    CHECK(sum == 2 * s.m);
  }
}

TEST_CASE("apply_delta applies inserts before deletes") {
  const Snapshot s = Snapshot::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}});

  SECTION("empty delta is the identity") {
    const Snapshot r = apply_delta(s, {});
    CHECK(r.edges() == s.edges());
  }
  SECTION("delete updates degrees") {
    const Snapshot r = apply_delta(s, EdgeDelta{{}, {{3, 4}}});
    const std::vector<int> want{3, 2, 2, 1, 0};
    for (Vertex v = 0; v < 5; ++v) CHECK(r.degree(v) == want[v]);
  }
  SECTION("insert of an existing edge fails") {
    CHECK_THROWS_AS(apply_delta(s, EdgeDelta{{{0, 1}}, {}}), GraphError);
  }
  SECTION("delete of a missing edge fails") {
    CHECK_THROWS_AS(apply_delta(s, EdgeDelta{{}, {{1, 4}}}), GraphError);
  }
  SECTION("a delete may target an edge inserted by the same delta") {
    const Snapshot r = apply_delta(s, EdgeDelta{{{1, 4}}, {{3, 4}}});
    CHECK(r.has_edge(1, 4));
    CHECK_FALSE(r.has_edge(3, 4));
    CHECK(r.m == s.m);
  }
  SECTION("out-of-range endpoint fails") {
    CHECK_THROWS_AS(apply_delta(s, EdgeDelta{{{0, 7}}, {}}), GraphError);
  }
  SECTION("overlapping insert and delete lists fail") {
    CHECK_THROWS_AS(apply_delta(s, EdgeDelta{{{1, 4}}, {{1, 4}}}), GraphError);
  }
}

TEST_CASE("generate_series respects churn bounds and stays valid") {
  const EvolvingGraph g = generate_series(100, 300, 5, 10, 20, 1);
  REQUIRE(g.deltas.size() == 4);
  Snapshot cur = g.base;
  for (const EdgeDelta& d : g.deltas) {
    CHECK(d.inserts.size() == d.deletes.size());
    CHECK(d.inserts.size() >= 10);
    CHECK(d.inserts.size() <= 20);
    d.validate(cur.n);
    cur = apply_delta(cur, d);  // throws if any step is inconsistent
  }
}

TEST_CASE("generate_series with one snapshot has no deltas") {
  const EvolvingGraph g = generate_series(10, 20, 1, 0, 0, 7);
  CHECK(g.deltas.empty());
  CHECK(g.base.m == 20);
}

TEST_CASE("generate_series is deterministic per seed") {
  const EvolvingGraph a = generate_series(50, 150, 4, 5, 9, 123);
  const EvolvingGraph b = generate_series(50, 150, 4, 5, 9, 123);
  CHECK(a.base.edges() == b.base.edges());
  REQUIRE(a.deltas.size() == b.deltas.size());
  for (std::size_t i = 0; i < a.deltas.size(); ++i) {
    CHECK(a.deltas[i].inserts == b.deltas[i].inserts);
    CHECK(a.deltas[i].deletes == b.deltas[i].deletes);
  }
}

TEST_CASE("generate_series rejects infeasible parameters") {
  CHECK_THROWS_AS(generate_series(5, 20, 3, 1, 2, 1), GraphError);   // m0 > n(n-1)/2
  CHECK_THROWS_AS(generate_series(10, 20, 3, 25, 30, 1), GraphError);  // churn > m0
}
