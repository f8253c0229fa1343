#include <catch_amalgamated.hpp>

#include "avt/maintain.hpp"
#include "avt/oracle.hpp"

using namespace avt;

namespace {

const Snapshot& six_vertex() {
  static const Snapshot s =
      Snapshot::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
  return s;
}

void require_valid(const KOrderState& st, const Snapshot& s) {
  const ValidationResult ok = validate_order(st, s);
  INFO(ok.reason);
  REQUIRE(ok.ok);
}

}  // namespace

TEST_CASE("empty batches leave the state untouched") {
  const Snapshot s = six_vertex();
  KOrderState st = decompose(s);
  const std::vector<int> cores = st.core;

  const MaintenanceReport ri = edge_insert(st, s, {}, 2);
  CHECK(ri.v_i.empty());
  CHECK(ri.touched == 0);
  const MaintenanceReport rr = edge_remove(st, s, {}, 2);
  CHECK(rr.v_r.empty());
  CHECK(st.core == cores);
  require_valid(st, s);
}

TEST_CASE("insert closing a long cycle promotes the path") {
  const Snapshot before = six_vertex();
  KOrderState st = decompose(before);
  const Snapshot after = apply_delta(before, EdgeDelta{{{1, 5}}, {}});

  const MaintenanceReport rep = edge_insert(st, after, {{1, 5}}, 3);
  CHECK(st.core == std::vector<int>{2, 2, 2, 2, 2, 2});
  CHECK(rep.v_i == std::vector<Vertex>{3, 4, 5});
  require_valid(st, after);

  SECTION("removing the same edge demotes the path again") {
    const MaintenanceReport rem = edge_remove(st, before, {{1, 5}}, 2);
    CHECK(st.core == std::vector<int>{2, 2, 2, 1, 1, 1});
    CHECK(rem.v_r == std::vector<Vertex>{3, 4, 5});
    require_valid(st, before);
  }
  SECTION("with k=3 the demoted vertices end below k-1 and v_r is empty") {
    const MaintenanceReport rem = edge_remove(st, before, {{1, 5}}, 3);
    CHECK(rem.v_r.empty());
    require_valid(st, before);
  }
}

TEST_CASE("insert inside the top core keeps every core number") {
  // octahedron: 4-regular, core 4 everywhere; add one missing diagonal
  const Snapshot before = Snapshot::from_edges(
      6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4},
          {3, 5}, {4, 5}});
  KOrderState st = decompose(before);
  const std::vector<int> cores = st.core;
  const Snapshot after = apply_delta(before, EdgeDelta{{{0, 5}}, {}});

  edge_insert(st, after, {{0, 5}}, 5);
  CHECK(st.core == cores);
  require_valid(st, after);
}

TEST_CASE("insert touching only late-order vertices moves nothing") {
  // two disjoint triangles bridged by the new edge
  const Snapshot before =
      Snapshot::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  KOrderState st = decompose(before);
  const std::vector<int> cores = st.core;
  const Snapshot after = apply_delta(before, EdgeDelta{{{2, 3}}, {}});

  const MaintenanceReport rep = edge_insert(st, after, {{2, 3}}, 3);
  CHECK(st.core == cores);
  CHECK(rep.v_i.empty());
  CHECK(rep.touched == 0);
  require_valid(st, after);
}

TEST_CASE("deleting a pendant edge drops the endpoint out of the shells") {
  const Snapshot before = six_vertex();
  KOrderState st = decompose(before);
  const Snapshot after = apply_delta(before, EdgeDelta{{}, {{4, 5}}});

  edge_remove(st, after, {{4, 5}}, 2);
  CHECK(st.core[5] == 0);
  CHECK(st.core == std::vector<int>{2, 2, 2, 1, 1, 0});
  require_valid(st, after);
}

TEST_CASE("previously isolated endpoints join the order on insertion") {
  const Snapshot before = Snapshot::from_edges(4, {});
  KOrderState st = decompose(before);
  const Snapshot after = Snapshot::from_edges(4, {{0, 1}, {2, 3}});

  edge_insert(st, after, {{0, 1}, {2, 3}}, 2);
  CHECK(st.core == std::vector<int>{1, 1, 1, 1});
  require_valid(st, after);
}

TEST_CASE("one batch can promote vertices by several levels") {
  const Snapshot before = Snapshot::from_edges(5, {});
  std::vector<Edge> all;
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) all.push_back({u, v});
  const Snapshot after = Snapshot::from_edges(5, all);

  KOrderState st = decompose(before);
  const MaintenanceReport rep = edge_insert(st, after, all, 5);
  CHECK(st.core == std::vector<int>{4, 4, 4, 4, 4});
  CHECK(rep.v_i == std::vector<Vertex>{0, 1, 2, 3, 4});
  require_valid(st, after);
}

TEST_CASE("inconsistent batches are rejected") {
  const Snapshot s = six_vertex();
  KOrderState st = decompose(s);
  CHECK_THROWS_AS(edge_insert(st, s, {{1, 5}}, 2), GraphError);  // not present in s
  CHECK_THROWS_AS(edge_remove(st, s, {{0, 1}}, 2), GraphError);  // still present in s
}

TEST_CASE("validate_order flags injected faults") {
  const Snapshot s = six_vertex();
  KOrderState st = decompose(s);
  CHECK(validate_order(st, s).ok);

  SECTION("tampered deg_plus") {
    ++st.deg_plus[0];
    const ValidationResult r = validate_order(st, s);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.reason.empty());
  }
  SECTION("tampered core") {
    st.core[3] = 2;
    CHECK_FALSE(validate_order(st, s).ok);
  }
  SECTION("tampered mcd") {
    ++st.mcd[4];
    CHECK_FALSE(validate_order(st, s).ok);
  }
}

TEST_CASE("insert-then-remove restores the original core numbers") {
  std::mt19937_64 rng(17);
  for (int c = 0; c < 100; ++c) {
    const Snapshot s = random_gnp_snapshot(30, 0.1, rng);
    KOrderState st = decompose(s);
    const std::vector<int> cores = st.core;

    std::vector<Edge> batch;
    std::uniform_int_distribution<Vertex> vd(0, 29);
    while (batch.size() < 5) {
      const Vertex a = vd(rng), b = vd(rng);
      if (a == b || s.has_edge(a, b)) continue;
      const Edge e = make_edge(a, b);
      if (std::find(batch.begin(), batch.end(), e) == batch.end()) batch.push_back(e);
    }
    const Snapshot mid = apply_delta(s, EdgeDelta{batch, {}});
    edge_insert(st, mid, batch, 2);
    require_valid(st, mid);
    edge_remove(st, s, batch, 2);
    CHECK(st.core == cores);
    require_valid(st, s);
  }
}

TEST_CASE("soak: long chains of random batch maintenance stay valid") {
  std::mt19937_64 rng(23);
  Snapshot s = random_gnm_snapshot(100, 250, rng);
  KOrderState st = decompose(s);
  std::uniform_int_distribution<int> sz(0, 8);
  std::uniform_int_distribution<Vertex> vd(0, 99);

  for (int step = 0; step < 300; ++step) {
    std::vector<Edge> ins;
    for (int tries = 0, want = sz(rng); static_cast<int>(ins.size()) < want && tries < 100;
         ++tries) {
      const Vertex a = vd(rng), b = vd(rng);
      if (a == b || s.has_edge(a, b)) continue;
      const Edge e = make_edge(a, b);
      if (std::find(ins.begin(), ins.end(), e) == ins.end()) ins.push_back(e);
    }
    std::vector<Edge> present = s.edges();
    std::shuffle(present.begin(), present.end(), rng);
    present.resize(std::min<std::size_t>(present.size(), sz(rng)));

    const Snapshot mid = apply_delta(s, EdgeDelta{ins, {}});
    const MaintenanceReport ri = edge_insert(st, mid, ins, 3);
    s = apply_delta(mid, EdgeDelta{{}, present});
    const MaintenanceReport rr = edge_remove(st, s, present, 3);

    for (Vertex v : ri.v_i) CHECK(st.core[v] == 2);
    for (Vertex v : rr.v_r) CHECK(st.core[v] == 2);
    if (step % 10 == 0) require_valid(st, s);
  }
  require_valid(st, s);
}
