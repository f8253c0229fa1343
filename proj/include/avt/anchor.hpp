#pragma once

#include <algorithm>
#include <chrono>
#include <deque>
#include <vector>

#include "avt/graph.hpp"
#include "avt/maintain.hpp"
#include "avt/peel.hpp"

namespace avt {

struct AVTConfig {
  int k = 2;  // core threshold
  int l = 1;  // anchor budget per snapshot

  void validate() const {
    if (k < 1) throw GraphError("core threshold k must be >= 1");
    if (l < 1) throw GraphError("anchor budget l must be >= 1");
  }
};

struct AnchorSolution {
  std::vector<Vertex> anchors;
  std::vector<Vertex> followers;
  int anchored_core_size = 0;
  std::size_t candidates_probed = 0;
  double elapsed_ms = 0.0;
};

// kcore(s,k) ∪ anchors ∪ followers, via a peel with anchors exempt.
inline std::vector<Vertex> anchored_kcore(const Snapshot& s, const std::vector<Vertex>& anchors,
                                          int k) {
  KOrderState st = anchored_decompose(s, anchors);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < s.n; ++v)
    if (st.core[v] >= k) out.push_back(v);
  return out;
}

// Vertices that can possibly gain followers: x with a neighbor v in the
// (k-1)-shell such that x comes no later than v in the K-order. Vertices
// already at core >= k never qualify.
inline std::vector<Vertex> candidate_anchors(const Snapshot& s, const KOrderState& st, int k) {
  std::vector<Vertex> out;
  for (Vertex x = 0; x < s.n; ++x) {
    if (st.core[x] < 1 || st.core[x] >= k) continue;
    for (Vertex w : s.adj[x]) {
      if (st.core[w] == k - 1 && st.precedes(x, w)) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

// Marginal follower evaluation against a fixed (possibly anchored) state.
// A single extra anchor can only promote vertices whose current core is
// exactly k-1, so each probe runs a promotion fixpoint over that shell:
// start with every shell vertex optimistically promoted, then peel back
// vertices lacking k supporters among higher cores, the probe anchor, and
// surviving shell vertices. Read-only with respect to the probed state.
class FollowerProbe {
 public:
  FollowerProbe(const Snapshot& s, const KOrderState& st, int k)
      : s_(s), st_(st), k_(k), sup_hi_(s.n, 0), in_shell_(s.n, 0), alive_(s.n, 0), cnt_(s.n, 0) {
    for (Vertex v = 0; v < s.n; ++v)
      if (st.core[v] == k - 1) {
        shell_.push_back(v);
        in_shell_[v] = 1;
      }
    for (Vertex v : shell_)
      for (Vertex w : s_.adj[v])
        if (st_.core[w] >= k_) ++sup_hi_[v];
  }

  std::vector<Vertex> probe(Vertex u) {
    std::vector<Vertex> out;
    if (st_.core[u] >= k_) return out;

    for (Vertex v : shell_) {
      alive_[v] = in_shell_[v];
      cnt_[v] = sup_hi_[v];
    }
    if (in_shell_[u]) alive_[u] = 0;
    for (Vertex v : shell_) {
      if (!alive_[v]) continue;
      for (Vertex w : s_.adj[v])
        if (alive_[w]) ++cnt_[v];
    }
    for (Vertex w : s_.adj[u])
      if (alive_[w]) ++cnt_[w];

    std::deque<Vertex> dead;
    for (Vertex v : shell_)
      if (alive_[v] && cnt_[v] < k_) dead.push_back(v);
    while (!dead.empty()) {
      const Vertex v = dead.front();
      dead.pop_front();
      alive_[v] = 0;
      for (Vertex w : s_.adj[v]) {
        if (!alive_[w]) continue;
        if (--cnt_[w] == k_ - 1) dead.push_back(w);
      }
    }
    for (Vertex v : shell_)
      if (alive_[v]) out.push_back(v);
    return out;  // shell_ is ascending, so out is sorted
  }

 private:
  const Snapshot& s_;
  const KOrderState& st_;
  int k_;
  std::vector<Vertex> shell_;
  std::vector<int> sup_hi_;  // neighbors with core >= k
  std::vector<char> in_shell_, alive_;
  std::vector<int> cnt_;
};

// Marginal followers of u given committed anchors; st must be the state
// with `committed` already anchored (core == kAnchorCore).
inline std::vector<Vertex> compute_followers(const Snapshot& s, const KOrderState& st,
                                             const std::vector<Vertex>& committed, Vertex u,
                                             int k) {
  for (Vertex a : committed)
    if (a == u) throw GraphError("candidate " + std::to_string(u) + " is already anchored");
  FollowerProbe p(s, st, k);
  return p.probe(u);
}

// Followers of the whole anchor set: vertices lifted to core >= k by the
// anchor-exempt peel that were below k without anchors.
inline std::vector<Vertex> followers_of(const Snapshot& s, const KOrderState& plain,
                                        const std::vector<Vertex>& anchors, int k) {
  KOrderState a = anchored_decompose(s, anchors);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < s.n; ++v)
    if (a.core[v] >= k && a.core[v] != kAnchorCore && plain.core[v] < k) out.push_back(v);
  return out;
}

// Same follower set as followers_of, but computed as a fixpoint over only
// the vertices outside the plain k-core: start with all of them
// optimistically kept, then peel back anyone (non-anchor) with fewer than k
// surviving neighbors. The plain k-core never shrinks under anchoring, so
// the peel never has to revisit it.
class SetFollowerEval {
 public:
  SetFollowerEval(const Snapshot& s, const KOrderState& plain, int k)
      : s_(s), k_(k), outside_flag_(s.n, 0), is_anchor_(s.n, 0), alive_(s.n, 0), cnt_(s.n, 0) {
    for (Vertex v = 0; v < s.n; ++v)
      if (plain.core[v] < k) {
        outside_.push_back(v);
        outside_flag_[v] = 1;
      }
  }

  std::vector<Vertex> followers(const std::vector<Vertex>& anchors) {
    for (Vertex a : anchors) is_anchor_[a] = 1;
    for (Vertex v : outside_) {
      alive_[v] = static_cast<char>(!is_anchor_[v]);
      cnt_[v] = s_.degree(v);  // every neighbor is core>=k, anchor, or alive
    }
    std::deque<Vertex> dead;
    for (Vertex v : outside_)
      if (alive_[v] && cnt_[v] < k_) dead.push_back(v);
    while (!dead.empty()) {
      const Vertex v = dead.front();
      dead.pop_front();
      alive_[v] = 0;
      for (Vertex w : s_.adj[v]) {
        if (!outside_flag_[w] || !alive_[w]) continue;
        if (--cnt_[w] == k_ - 1) dead.push_back(w);
      }
    }
    std::vector<Vertex> out;
    for (Vertex v : outside_)
      if (alive_[v]) out.push_back(v);
    for (Vertex a : anchors) is_anchor_[a] = 0;
    return out;
  }

 private:
  const Snapshot& s_;
  int k_;
  std::vector<Vertex> outside_;
  std::vector<char> outside_flag_, is_anchor_, alive_;
  std::vector<int> cnt_;
};

namespace detail {

struct SolveOutcome {
  std::vector<Vertex> anchors;
  std::vector<Vertex> followers;
  std::size_t probed = 0;
};

inline SolveOutcome greedy_solve(const Snapshot& s, const KOrderState& plain,
                                 const AVTConfig& cfg) {
  SolveOutcome out;
  std::vector<Vertex> committed;
  KOrderState work = plain;
  for (int it = 0; it < cfg.l; ++it) {
    const std::vector<Vertex> cands = candidate_anchors(s, work, cfg.k);
    FollowerProbe probe(s, work, cfg.k);
    Vertex best = -1;
    std::size_t best_gain = 0;
    for (Vertex c : cands) {
      const std::size_t gain = probe.probe(c).size();
      ++out.probed;
      if (gain > best_gain) {  // ties keep the smallest id
        best_gain = gain;
        best = c;
      }
    }
    if (best == -1 || best_gain == 0) break;
    committed.push_back(best);
    work = anchored_decompose(s, committed);
  }
  std::sort(committed.begin(), committed.end());
  out.anchors = committed;
  for (Vertex v = 0; v < s.n; ++v)
    if (work.core[v] >= cfg.k && work.core[v] != kAnchorCore && plain.core[v] < cfg.k)
      out.followers.push_back(v);
  return out;
}

inline AnchorSolution make_solution(const Snapshot& s, const KOrderState& plain,
                                    std::vector<Vertex> anchors, std::vector<Vertex> followers,
                                    int k, std::size_t probed, double elapsed_ms) {
  AnchorSolution sol;
  sol.anchors = std::move(anchors);
  sol.followers = std::move(followers);
  int core_size = 0;
  for (Vertex v = 0; v < s.n; ++v)
    if (plain.core[v] >= k) ++core_size;
  int extra_anchors = 0;
  for (Vertex a : sol.anchors)
    if (plain.core[a] < k) ++extra_anchors;
  sol.anchored_core_size = core_size + extra_anchors + static_cast<int>(sol.followers.size());
  sol.candidates_probed = probed;
  sol.elapsed_ms = elapsed_ms;
  return sol;
}

using SolveClock = std::chrono::steady_clock;

inline double ms_since(SolveClock::time_point t0) {
  return std::chrono::duration<double, std::milli>(SolveClock::now() - t0).count();
}

inline std::vector<Snapshot> materialize(const EvolvingGraph& g) {
  std::vector<Snapshot> snaps{g.base};
  for (const EdgeDelta& d : g.deltas) snaps.push_back(apply_delta(snaps.back(), d));
  return snaps;
}

}  // namespace detail

inline AnchorSolution greedy_snapshot(const Snapshot& s, const KOrderState& st,
                                      const AVTConfig& cfg) {
  cfg.validate();
  const auto t0 = detail::SolveClock::now();
  detail::SolveOutcome out = detail::greedy_solve(s, st, cfg);
  return detail::make_solution(s, st, std::move(out.anchors), std::move(out.followers), cfg.k,
                               out.probed, detail::ms_since(t0));
}

// From-scratch baseline: fresh decomposition and full greedy per snapshot.
inline std::vector<AnchorSolution> greedy_avt(const EvolvingGraph& g, const AVTConfig& cfg) {
  cfg.validate();
  std::vector<AnchorSolution> sols;
  const std::vector<Snapshot> snaps = detail::materialize(g);
  for (const Snapshot& s : snaps) {
    const auto t0 = detail::SolveClock::now();
    KOrderState st = decompose(s);
    detail::SolveOutcome out = detail::greedy_solve(s, st, cfg);
    sols.push_back(detail::make_solution(s, st, std::move(out.anchors), std::move(out.followers),
                                         cfg.k, out.probed, detail::ms_since(t0)));
  }
  return sols;
}

// Weak baseline: solve the first snapshot, then carry the anchor set
// unchanged and just re-evaluate it.
inline std::vector<AnchorSolution> carry_avt(const EvolvingGraph& g, const AVTConfig& cfg) {
  cfg.validate();
  std::vector<AnchorSolution> sols;
  const std::vector<Snapshot> snaps = detail::materialize(g);
  std::vector<Vertex> anchors;
  for (std::size_t t = 0; t < snaps.size(); ++t) {
    const Snapshot& s = snaps[t];
    const auto t0 = detail::SolveClock::now();
    KOrderState st = decompose(s);
    std::size_t probed = 0;
    std::vector<Vertex> followers;
    if (t == 0) {
      detail::SolveOutcome out = detail::greedy_solve(s, st, cfg);
      anchors = out.anchors;
      followers = std::move(out.followers);
      probed = out.probed;
    } else {
      followers = followers_of(s, st, anchors, cfg.k);
    }
    sols.push_back(detail::make_solution(s, st, anchors, std::move(followers), cfg.k, probed,
                                         detail::ms_since(t0)));
  }
  return sols;
}

// Incremental tracker: greedy on the first snapshot, then per snapshot the
// K-order is maintained through the edge delta and only vertices near the
// impacted sets are probed as replacement anchors. A carried anchor is
// swapped out when some probed vertex strictly improves the follower count,
// and dropped when the k-core absorbed it and no swap helps.
inline std::vector<AnchorSolution> inc_avt(const EvolvingGraph& g, const AVTConfig& cfg) {
  cfg.validate();
  std::vector<AnchorSolution> sols;
  const std::vector<Snapshot> snaps = detail::materialize(g);
  const int k = cfg.k;

  Snapshot s = snaps[0];
  auto t0 = detail::SolveClock::now();
  KOrderState st = decompose(s);
  detail::SolveOutcome first = detail::greedy_solve(s, st, cfg);
  std::vector<Vertex> anchors = first.anchors;
  sols.push_back(detail::make_solution(s, st, first.anchors, std::move(first.followers), k,
                                       first.probed, detail::ms_since(t0)));

  for (std::size_t t = 1; t < snaps.size(); ++t) {
    const EdgeDelta& d = g.deltas[t - 1];
    t0 = detail::SolveClock::now();

    Snapshot mid = apply_delta(s, EdgeDelta{d.inserts, {}});
    MaintenanceReport ins = edge_insert(st, mid, d.inserts, k);
    s = snaps[t];
    MaintenanceReport rem = edge_remove(st, s, d.deletes, k);

    // Probe pool: impacted vertices and their neighbors that meet the
    // candidate-anchor condition in the new K-order.
    std::vector<Vertex> seeds = ins.v_i;
    seeds.insert(seeds.end(), rem.v_r.begin(), rem.v_r.end());
    std::vector<Vertex> pool;
    for (Vertex v : detail::with_neighbors(s, std::move(seeds))) {
      if (st.core[v] < 1 || st.core[v] >= k) continue;
      for (Vertex w : s.adj[v]) {
        if (st.core[w] == k - 1 && st.precedes(v, w)) {
          pool.push_back(v);
          break;
        }
      }
    }

    std::size_t probed = 0;
    SetFollowerEval eval(s, st, k);
    std::size_t best_f = eval.followers(anchors).size();
    std::size_t i = 0;
    while (i < anchors.size()) {
      const Vertex u = anchors[i];
      std::vector<Vertex> trial;
      for (Vertex a : anchors)
        if (a != u) trial.push_back(a);
      trial.push_back(u);  // placeholder slot for the probed vertex

      Vertex swap_to = -1;
      std::size_t swap_f = best_f;
      for (Vertex v : pool) {
        if (std::find(anchors.begin(), anchors.end(), v) != anchors.end()) continue;
        trial.back() = v;
        const std::size_t total = eval.followers(trial).size();
        ++probed;
        if (total > swap_f) {  // strict improvement only; ties keep u
          swap_f = total;
          swap_to = v;
        }
      }
      if (swap_to != -1) {
        anchors[i] = swap_to;
        best_f = swap_f;
        ++i;
      } else if (st.core[u] >= k) {
        // The k-core grew over this anchor; it contributes nothing now.
        anchors.erase(anchors.begin() + i);
      } else {
        ++i;
      }
    }
    std::sort(anchors.begin(), anchors.end());

    std::vector<Vertex> followers = eval.followers(anchors);
    sols.push_back(
        detail::make_solution(s, st, anchors, std::move(followers), k, probed,
                              detail::ms_since(t0)));
  }
  return sols;
}

}  // namespace avt
