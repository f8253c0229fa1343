#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "avt/graph.hpp"

namespace avt {

// Core number sentinel for anchored vertices: larger than any real core.
inline constexpr int kAnchorCore = std::numeric_limits<int>::max() / 2;

// Core decomposition result plus the removal order ("K-order"), kept as one
// doubly linked list per shell with 64-bit order labels so that precedes()
// is a label comparison. Vertices with core 0 (isolated) live outside the
// shells; anchored vertices (core == kAnchorCore) likewise.
struct KOrderState {
  static constexpr std::uint64_t kLabelStride = std::uint64_t{1} << 20;

  int n = 0;
  std::vector<int> core;
  std::vector<int> deg_plus;
  std::vector<int> deg_minus;  // transient, zero at rest
  std::vector<int> mcd;
  std::vector<Vertex> next_, prev_;       // shell list links, -1 terminated
  std::vector<std::uint64_t> label_;      // order label within the shell
  std::vector<Vertex> shell_head_, shell_tail_;  // indexed by shell number

  bool in_shell(Vertex v) const { return core[v] >= 1 && core[v] != kAnchorCore; }

  int max_core() const { return static_cast<int>(shell_head_.size()) - 1; }

  // Strict total order over vertices with core >= 1 (anchors come last).
  bool precedes(Vertex u, Vertex v) const {
    if (core[u] < 1 || core[v] < 1)
      throw GraphError("precedes() queried for a vertex outside the order");
    if (core[u] != core[v]) return core[u] < core[v];
    if (u == v) return false;
    return label_[u] < label_[v];
  }

  std::vector<Vertex> shell(int k) const {
    std::vector<Vertex> out;
    if (k < 1 || k > max_core()) return out;
    for (Vertex v = shell_head_[k]; v != -1; v = next_[v]) out.push_back(v);
    return out;
  }

  // Debug dump, one line per nonempty shell: "O<k>: v1 v2 ...".
  std::string dump_shells() const {
    std::ostringstream os;
    for (int k = 1; k <= max_core(); ++k) {
      if (shell_head_[k] == -1) continue;
      os << 'O' << k << ':';
      for (Vertex v = shell_head_[k]; v != -1; v = next_[v]) os << ' ' << v;
      os << '\n';
    }
    return os.str();
  }

  // --- shell list maintenance -------------------------------------------

  void ensure_shell(int k) {
    if (k >= static_cast<int>(shell_head_.size())) {
      shell_head_.resize(k + 1, -1);
      shell_tail_.resize(k + 1, -1);
    }
  }

  void detach(Vertex v) {
    const int k = core[v];
    if (prev_[v] != -1) next_[prev_[v]] = next_[v]; else shell_head_[k] = next_[v];
    if (next_[v] != -1) prev_[next_[v]] = prev_[v]; else shell_tail_[k] = prev_[v];
    next_[v] = prev_[v] = -1;
  }

  void relabel_shell(int k) {
    std::uint64_t lab = kLabelStride;
    for (Vertex v = shell_head_[k]; v != -1; v = next_[v], lab += kLabelStride) label_[v] = lab;
  }

  void push_back_shell(int k, Vertex v) {
    ensure_shell(k);
    core[v] = k;
    prev_[v] = shell_tail_[k];
    next_[v] = -1;
    if (shell_tail_[k] != -1) next_[shell_tail_[k]] = v; else shell_head_[k] = v;
    shell_tail_[k] = v;
    label_[v] = (prev_[v] == -1) ? kLabelStride : label_[prev_[v]] + kLabelStride;
  }

  void push_front_shell(int k, Vertex v) {
    ensure_shell(k);
    core[v] = k;
    next_[v] = shell_head_[k];
    prev_[v] = -1;
    if (shell_head_[k] != -1) prev_[shell_head_[k]] = v; else shell_tail_[k] = v;
    shell_head_[k] = v;
    if (next_[v] == -1) {
      label_[v] = kLabelStride;
    } else if (label_[next_[v]] >= 2) {
      label_[v] = label_[next_[v]] / 2;
    } else {
      relabel_shell(k);
    }
  }

  // Insert v immediately after u in u's shell.
  void insert_after(Vertex u, Vertex v) {
    const int k = core[u];
    core[v] = k;
    next_[v] = next_[u];
    prev_[v] = u;
    if (next_[u] != -1) prev_[next_[u]] = v; else shell_tail_[k] = v;
    next_[u] = v;
    const std::uint64_t lo = label_[u];
    const std::uint64_t hi = (next_[v] == -1) ? lo + 2 * kLabelStride : label_[next_[v]];
    if (hi - lo >= 2) {
      label_[v] = lo + (hi - lo) / 2;
    } else {
      relabel_shell(k);
    }
  }
};

namespace detail {

inline void init_order_arrays(KOrderState& st, int n) {
  st.n = n;
  st.core.assign(n, 0);
  st.deg_plus.assign(n, 0);
  st.deg_minus.assign(n, 0);
  st.mcd.assign(n, 0);
  st.next_.assign(n, -1);
  st.prev_.assign(n, -1);
  st.label_.assign(n, 0);
  st.shell_head_.assign(1, -1);
  st.shell_tail_.assign(1, -1);
}

inline void recompute_all_mcd(const Snapshot& s, KOrderState& st) {
  for (Vertex u = 0; u < s.n; ++u) {
    int c = 0;
    for (Vertex w : s.adj[u])
      if (st.core[w] >= st.core[u]) ++c;
    st.mcd[u] = c;
  }
}

// Min-degree peel; `exempt[v]` vertices are never removed and end with
// core == kAnchorCore. Ties broken by smallest vertex id.
inline KOrderState peel_decompose(const Snapshot& s, const std::vector<char>* exempt) {
  KOrderState st;
  init_order_arrays(st, s.n);

  std::vector<int> deg(s.n);
  std::set<std::pair<int, Vertex>> queue;  // (current degree, id)
  for (Vertex v = 0; v < s.n; ++v) {
    deg[v] = s.degree(v);
    if (exempt && (*exempt)[v]) {
      st.core[v] = kAnchorCore;
    } else {
      queue.insert({deg[v], v});
    }
  }

  std::vector<char> removed(s.n, 0);
  int cur_k = 0;
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    if (d > cur_k) cur_k = d;
    st.core[v] = cur_k;
    st.deg_plus[v] = deg[v];
    removed[v] = 1;
    if (cur_k >= 1) st.push_back_shell(cur_k, v);
    for (Vertex w : s.adj[v]) {
      if (removed[w] || (exempt && (*exempt)[w])) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.insert({deg[w], w});
    }
  }
  // push_back_shell overwrote core with the shell index; same value, but
  // isolated vertices keep core 0 and never entered a shell.
  recompute_all_mcd(s, st);
  return st;
}

}  // namespace detail

inline KOrderState decompose(const Snapshot& s) {
  return detail::peel_decompose(s, nullptr);
}

// Decomposition with an anchored set exempt from the degree constraint.
// Anchors end with core kAnchorCore; followers of the anchors show up as
// ordinary vertices whose core rose relative to the plain decomposition.
inline KOrderState anchored_decompose(const Snapshot& s, const std::vector<Vertex>& anchors) {
  std::vector<char> exempt(s.n, 0);
  for (Vertex a : anchors) exempt[a] = 1;
  return detail::peel_decompose(s, &exempt);
}

inline std::vector<Vertex> kcore(const Snapshot& s, int k) {
  std::vector<Vertex> out;
  if (k <= 0) {
    out.resize(s.n);
    for (Vertex v = 0; v < s.n; ++v) out[v] = v;
    return out;
  }
  KOrderState st = decompose(s);
  for (Vertex v = 0; v < s.n; ++v)
    if (st.core[v] >= k) out.push_back(v);
  return out;
}

// Count of u's neighbors with core number >= core(u), straight from the
// definition; pure.
inline int recompute_mcd(const Snapshot& s, const KOrderState& st, Vertex u) {
  int c = 0;
  for (Vertex w : s.adj[u])
    if (st.core[w] >= st.core[u]) ++c;
  return c;
}

}  // namespace avt
