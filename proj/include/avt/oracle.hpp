#pragma once

#include <algorithm>
#include <vector>

#include "avt/anchor.hpp"
#include "avt/graph.hpp"

namespace avt {

// Brute-force references. Deliberately naive and independent of the K-order
// machinery: plain adjacency scans and iterated deletion only.

inline std::vector<int> oracle_core_numbers(const Snapshot& s) {
  std::vector<int> core(s.n, 0);
  for (int k = 1;; ++k) {
    std::vector<char> alive(s.n, 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex v = 0; v < s.n; ++v) {
        if (!alive[v]) continue;
        int d = 0;
        for (Vertex w : s.adj[v])
          if (alive[w]) ++d;
        if (d < k) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    bool any = false;
    for (Vertex v = 0; v < s.n; ++v)
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    if (!any) return core;
  }
}

namespace detail {

// Survivors of anchor-exempt iterated deletion at threshold k.
inline std::vector<char> oracle_anchored_survivors(const Snapshot& s,
                                                   const std::vector<Vertex>& anchors, int k) {
  std::vector<char> anchor(s.n, 0);
  for (Vertex a : anchors) anchor[a] = 1;
  std::vector<char> alive(s.n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < s.n; ++v) {
      if (!alive[v] || anchor[v]) continue;
      int d = 0;
      for (Vertex w : s.adj[v])
        if (alive[w]) ++d;
      if (d < k) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  return alive;
}

}  // namespace detail

inline std::vector<Vertex> oracle_followers(const Snapshot& s, const std::vector<Vertex>& anchors,
                                            int k) {
  const std::vector<char> with = detail::oracle_anchored_survivors(s, anchors, k);
  const std::vector<char> without = detail::oracle_anchored_survivors(s, {}, k);
  std::vector<char> anchor(s.n, 0);
  for (Vertex a : anchors) anchor[a] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < s.n; ++v)
    if (with[v] && !without[v] && !anchor[v]) out.push_back(v);
  return out;
}

// Exhaustive optimum over all <= l subsets of vertices outside the k-core,
// lexicographically first among maxima. Exponential; guarded.
inline std::pair<std::vector<Vertex>, std::size_t> oracle_best_anchor_set(const Snapshot& s,
                                                                          const AVTConfig& cfg) {
  cfg.validate();
  const std::vector<int> core = oracle_core_numbers(s);
  std::vector<Vertex> noncore;
  for (Vertex v = 0; v < s.n; ++v)
    if (core[v] < cfg.k) noncore.push_back(v);

  const std::size_t c = noncore.size();
  double total = 1;  // subsets of size <= l
  double binom = 1;
  for (int i = 1; i <= cfg.l && static_cast<std::size_t>(i) <= c; ++i) {
    binom = binom * static_cast<double>(c - i + 1) / i;
    total += binom;
  }
  if (total > 2e6)
    throw GraphError("oracle_best_anchor_set: subset enumeration too large (" +
                     std::to_string(static_cast<long long>(total)) + " subsets)");

  std::vector<Vertex> best;
  std::size_t best_f = 0;
  for (int size = 1; size <= cfg.l && static_cast<std::size_t>(size) <= c; ++size) {
    std::vector<std::size_t> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<Vertex> anchors;
      for (std::size_t j : idx) anchors.push_back(noncore[j]);
      const std::size_t f = oracle_followers(s, anchors, cfg.k).size();
      if (f > best_f) {
        best_f = f;
        best = anchors;
      }
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == c - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {best, best_f};
}

}  // namespace avt
