#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace avt {

using Vertex = int;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Undirected edge, endpoints normalized so u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v;
  }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

inline Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw GraphError("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

// One snapshot of the evolving graph. Immutable after construction: all
// mutation goes through apply_delta, which builds a new Snapshot.
struct Snapshot {
  int n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Vertex>> adj;  // sorted neighbor lists

  int degree(Vertex v) const { return static_cast<int>(adj[v].size()); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) return false;
    const auto& nb = adj[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : adj[u])
        if (u < v) out.push_back(Edge{u, v});
    return out;
  }

  static Snapshot from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    Snapshot s;
    s.n = n;
    s.adj.assign(n, {});
    for (const Edge& e : edges) {
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw GraphError("vertex id out of range in edge (" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + "), n=" + std::to_string(n));
      s.adj[e.u].push_back(e.v);
      s.adj[e.v].push_back(e.u);
    }
    for (Vertex u = 0; u < n; ++u) {
      auto& nb = s.adj[u];
      std::sort(nb.begin(), nb.end());
      if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
        throw GraphError("duplicate edge at vertex " + std::to_string(u));
    }
    s.m = edges.size();
    return s;
  }
};

// Edge changes from one snapshot to the next. Inserts are applied before
// deletes, and the two lists are disjoint.
struct EdgeDelta {
  std::vector<Edge> inserts;
  std::vector<Edge> deletes;

  bool empty() const { return inserts.empty() && deletes.empty(); }

  void validate(int n) const {
    auto check_list = [&](const std::vector<Edge>& list, const char* name) {
      std::vector<Edge> sorted = list;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw GraphError(std::string("duplicate edge in ") + name + " list");
      for (const Edge& e : sorted) {
        if (e.u == e.v) throw GraphError("self-loop in delta");
        if (e.u < 0 || e.v >= n)
          throw GraphError("vertex id out of range in delta edge (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
      }
    };
    check_list(inserts, "insert");
    check_list(deletes, "delete");
    std::vector<Edge> a = inserts, b = deletes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<Edge> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (!both.empty())
      throw GraphError("edge (" + std::to_string(both[0].u) + "," + std::to_string(both[0].v) +
                       ") appears in both insert and delete lists");
  }
};

// Base snapshot plus the ordered deltas producing snapshots 2..T.
struct EvolvingGraph {
  Snapshot base;
  std::vector<EdgeDelta> deltas;

  int snapshot_count() const { return static_cast<int>(deltas.size()) + 1; }
};

inline Snapshot apply_delta(const Snapshot& s, const EdgeDelta& d) {
  d.validate(s.n);
  std::vector<Edge> edges = s.edges();
  for (const Edge& e : d.inserts) {
    if (s.has_edge(e.u, e.v))
      throw GraphError("insert of existing edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  for (const Edge& e : d.deletes) {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || !(*it == e))
      throw GraphError("delete of missing edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ")");
    edges.erase(it);
  }
  return Snapshot::from_edges(s.n, edges);
}

// Uniform random graph with exactly m distinct edges.
inline Snapshot random_gnm_snapshot(int n, std::size_t m, std::mt19937_64& rng) {
  const std::size_t max_m = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (m > max_m) throw GraphError("requested edge count exceeds n(n-1)/2");
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  std::vector<Edge> edges;
  std::vector<Edge> sorted;
  while (edges.size() < m) {
    Vertex a = pick(rng), b = pick(rng);
    if (a == b) continue;
    Edge e = make_edge(a, b);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
    if (it != sorted.end() && *it == e) continue;
    sorted.insert(it, e);
    edges.push_back(e);
  }
  return Snapshot::from_edges(n, edges);
}

// G(n,p) random graph.
inline Snapshot random_gnp_snapshot(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back(Edge{u, v});
  return Snapshot::from_edges(n, edges);
}

// Synthetic snapshot series: per step, remove a random count of present
// edges drawn from [churn_min, churn_max], then insert the same count of
// pairs that were absent in the previous snapshot. Deterministic per seed.
inline EvolvingGraph generate_series(int n, std::size_t m0, int T, std::size_t churn_min,
                                     std::size_t churn_max, std::uint64_t seed) {
  if (T < 1) throw GraphError("snapshot count must be at least 1");
  if (churn_min > churn_max) throw GraphError("invalid churn range");
  if (churn_max > m0) throw GraphError("churn exceeds initial edge count");
  const std::size_t max_m = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (m0 > max_m) throw GraphError("initial edge count exceeds n(n-1)/2");

  std::mt19937_64 rng(seed);
  EvolvingGraph g;
  g.base = random_gnm_snapshot(n, m0, rng);

  Snapshot cur = g.base;
  std::uniform_int_distribution<std::size_t> churn(churn_min, churn_max);
  for (int t = 1; t < T; ++t) {
    const std::size_t c = churn(rng);
    if (c > cur.m) throw GraphError("not enough present edges to remove");
    if (c > max_m - cur.m)
      throw GraphError("not enough absent pairs to insert");

    EdgeDelta d;
    std::vector<Edge> present = cur.edges();
    for (std::size_t i = 0; i < c; ++i) {
      std::uniform_int_distribution<std::size_t> idx(0, present.size() - 1);
      std::size_t j = idx(rng);
      d.deletes.push_back(present[j]);
      present[j] = present.back();
      present.pop_back();
    }
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    std::vector<Edge> chosen;
    while (chosen.size() < c) {
      Vertex a = pick(rng), b = pick(rng);
      if (a == b) continue;
      Edge e = make_edge(a, b);
      if (cur.has_edge(e.u, e.v)) continue;  // must be absent before this step
      auto it = std::lower_bound(chosen.begin(), chosen.end(), e);
      if (it != chosen.end() && *it == e) continue;
      chosen.insert(it, e);
      d.inserts.push_back(e);
    }
    cur = apply_delta(cur, d);
    g.deltas.push_back(std::move(d));
  }
  return g;
}

}  // namespace avt
