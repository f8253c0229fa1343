#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "avt/graph.hpp"
#include "avt/peel.hpp"

namespace avt {

// Impacted-vertex sets from one maintenance phase. v_i / v_r hold vertices
// whose core or order position changed and whose post-update core is k-1;
// they seed the incremental candidate probe.
struct MaintenanceReport {
  std::vector<Vertex> v_i;
  std::vector<Vertex> v_r;
  std::size_t touched = 0;
};

struct ValidationResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

namespace detail {

enum SweepStat : char { kUntouched = 0, kDone = 1, kCand = 2, kEvicted = 3 };

// Scratch for the insertion sweeps, reset per shell via the touched lists.
struct InsertScratch {
  std::vector<char> stat;
  std::vector<int> join_idx;
  std::vector<Vertex> stat_touched;
  std::vector<Vertex> dm_touched;

  explicit InsertScratch(int n) : stat(n, kUntouched), join_idx(n, -1) {}

  void reset(KOrderState& st) {
    for (Vertex v : stat_touched) {
      stat[v] = kUntouched;
      join_idx[v] = -1;
    }
    for (Vertex v : dm_touched) st.deg_minus[v] = 0;
    stat_touched.clear();
    dm_touched.clear();
  }
};

// Promotion sweep over shell i: walks O_i in order, optimistically pulls
// vertices with deg_plus + deg_minus > i out as promotion candidates, and
// unwinds over-optimistic candidates when a vertex with pending candidate
// degree fails the test. Evicted candidates are re-inserted after the
// failing vertex in eviction order, which is itself a legal peel order.
// Returns the surviving candidates in join order; they belong in front of
// O_{i+1}.
inline std::vector<Vertex> insert_sweep_shell(KOrderState& st, const Snapshot& s, int i,
                                              InsertScratch& scr, std::vector<char>& moved) {
  std::vector<Vertex> cand;
  if (i > st.max_core() || st.shell_head_[i] == -1) return cand;

  auto touch_dm = [&](Vertex v) {
    if (st.deg_minus[v] == 0) scr.dm_touched.push_back(v);
  };
  auto touch_stat = [&](Vertex v) {
    if (scr.stat[v] == kUntouched) scr.stat_touched.push_back(v);
  };

  Vertex cur = st.shell_head_[i];
  while (cur != -1) {
    const Vertex nxt = st.next_[cur];
    if (st.deg_plus[cur] + st.deg_minus[cur] > i) {
      touch_stat(cur);
      scr.stat[cur] = kCand;
      scr.join_idx[cur] = static_cast<int>(cand.size());
      cand.push_back(cur);
      if (!moved[cur]) moved[cur] = 1;
      st.detach(cur);
      for (Vertex w : s.adj[cur]) {
        if (st.core[w] == i && scr.stat[w] == kUntouched) {
          touch_dm(w);
          ++st.deg_minus[w];
        }
      }
    } else if (st.deg_minus[cur] == 0) {
      touch_stat(cur);
      scr.stat[cur] = kDone;
    } else {
      // cur keeps core i; its counted supporters either get promoted past
      // it or are evicted to a position after it, so absorbing deg_minus
      // into deg_plus is exact in both outcomes.
      st.deg_plus[cur] += st.deg_minus[cur];
      st.deg_minus[cur] = 0;
      touch_stat(cur);
      scr.stat[cur] = kDone;

      // Retract cur's upward support from candidates; cascade.
      std::deque<Vertex> retract{cur};
      Vertex insert_pos = cur;
      while (!retract.empty()) {
        const Vertex x = retract.front();
        retract.pop_front();
        for (Vertex w : s.adj[x]) {
          if (st.core[w] != i) continue;
          if (scr.stat[w] == kCand) {
            // Attribute x's lost support to the right counter: an earlier-
            // joined candidate contributed to w's deg_minus, anything else
            // was counted in w's deg_plus.
            if (scr.stat[x] == kEvicted && scr.join_idx[x] < scr.join_idx[w])
              --st.deg_minus[w];
            else
              --st.deg_plus[w];
            if (st.deg_plus[w] + st.deg_minus[w] <= i) {
              scr.stat[w] = kEvicted;
              st.deg_plus[w] += st.deg_minus[w];
              st.deg_minus[w] = 0;
              st.insert_after(insert_pos, w);
              insert_pos = w;
              retract.push_back(w);
            }
          } else if (scr.stat[w] == kUntouched && scr.stat[x] == kEvicted) {
            --st.deg_minus[w];
          }
        }
      }
    }
    cur = nxt;
  }

  std::vector<Vertex> promoted;
  for (Vertex v : cand)
    if (scr.stat[v] == kCand) promoted.push_back(v);
  return promoted;
}

// Definitional refresh of deg_plus and mcd for a vertex set.
inline void refresh_degrees(KOrderState& st, const Snapshot& s, const std::vector<Vertex>& set) {
  for (Vertex u : set) {
    int dp = 0, mc = 0;
    for (Vertex w : s.adj[u]) {
      if (st.core[w] >= st.core[u]) ++mc;
      if (st.core[u] >= 1) {
        if (st.core[w] > st.core[u] ||
            (st.core[w] == st.core[u] && st.label_[u] < st.label_[w]))
          ++dp;
      }
    }
    st.deg_plus[u] = (st.core[u] >= 1) ? dp : 0;
    st.mcd[u] = mc;
  }
}

inline std::vector<Vertex> with_neighbors(const Snapshot& s, std::vector<Vertex> set) {
  std::vector<Vertex> out = set;
  for (Vertex u : set)
    for (Vertex w : s.adj[u]) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// K-order maintenance for a batch of inserted edges. `s` is the snapshot
// with e_plus already applied; `st` describes s minus e_plus on entry and
// s exactly on return.
inline MaintenanceReport edge_insert(KOrderState& st, const Snapshot& s,
                                     const std::vector<Edge>& e_plus, int k) {
  MaintenanceReport rep;
  if (e_plus.empty()) return rep;
  for (const Edge& e : e_plus)
    if (!s.has_edge(e.u, e.v))
      throw GraphError("edge_insert: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") not present in the snapshot");

  std::vector<char> moved(st.n, 0);     // order position or core changed
  std::vector<char> promoted_any(st.n, 0);  // core actually rose

  // Previously isolated endpoints gain their first edges; they enter the
  // front of O_1 and the level-1 sweep sorts out anything further.
  std::vector<char> was_isolated(st.n, 0);
  std::vector<Vertex> newly;
  for (const Edge& e : e_plus) {
    for (Vertex x : {e.u, e.v}) {
      if (st.core[x] == 0 && !was_isolated[x]) {
        was_isolated[x] = 1;
        newly.push_back(x);
      }
    }
  }
  std::sort(newly.begin(), newly.end());
  for (auto it = newly.rbegin(); it != newly.rend(); ++it) st.push_front_shell(1, *it);
  for (Vertex z : newly) {
    moved[z] = 1;
    promoted_any[z] = 1;
  }

  int m_max = newly.empty() ? 0 : 1;
  for (const Edge& e : e_plus) {
    if (was_isolated[e.u] || was_isolated[e.v]) {
      m_max = std::max(m_max, 1);
      continue;  // fresh deg_plus below
    }
    const Vertex earlier = st.precedes(e.u, e.v) ? e.u : e.v;
    ++st.deg_plus[earlier];
    m_max = std::max(m_max, std::min(st.core[e.u], st.core[e.v]));
  }
  for (Vertex z : newly) {
    int dp = 0;
    for (Vertex w : s.adj[z])
      if (st.core[w] > 1 || (st.core[w] == 1 && st.label_[z] < st.label_[w])) ++dp;
    st.deg_plus[z] = dp;
  }

  detail::InsertScratch scr(st.n);
  for (int i = 1; i <= m_max; ++i) {
    std::vector<Vertex> promoted = detail::insert_sweep_shell(st, s, i, scr, moved);
    scr.reset(st);
    if (!promoted.empty()) {
      for (auto it = promoted.rbegin(); it != promoted.rend(); ++it)
        st.push_front_shell(i + 1, *it);
      for (Vertex p : promoted) promoted_any[p] = 1;
      // Fresh remaining degree from the block's final position.
      for (Vertex p : promoted) {
        int dp = 0;
        for (Vertex w : s.adj[p])
          if (st.core[w] > i + 1 || (st.core[w] == i + 1 && st.label_[p] < st.label_[w])) ++dp;
        st.deg_plus[p] = dp;
      }
      m_max = std::max(m_max, i + 1);
    }
  }

  std::vector<Vertex> moved_list;
  for (Vertex v = 0; v < st.n; ++v)
    if (moved[v]) moved_list.push_back(v);
  rep.touched = moved_list.size();
  // Seed set for the incremental probe: only genuine core changes landing
  // at k-1 open new anchoring opportunities worth scanning.
  for (Vertex v : moved_list)
    if (promoted_any[v] && st.core[v] == k - 1) rep.v_i.push_back(v);

  std::vector<Vertex> recalc = moved_list;
  for (const Edge& e : e_plus) {
    recalc.push_back(e.u);
    recalc.push_back(e.v);
  }
  detail::refresh_degrees(st, s, detail::with_neighbors(s, std::move(recalc)));
  return rep;
}

// K-order maintenance for a batch of deleted edges. `s` is the snapshot
// with e_minus already removed; `st` describes s plus e_minus on entry.
// Core numbers are repaired by cascading on the max-core-degree condition;
// demoted vertices are appended to the end of their new shell in an order
// that is itself a legal peel of the demoted group.
inline MaintenanceReport edge_remove(KOrderState& st, const Snapshot& s,
                                     const std::vector<Edge>& e_minus, int k) {
  MaintenanceReport rep;
  if (e_minus.empty()) return rep;
  for (const Edge& e : e_minus)
    if (s.has_edge(e.u, e.v))
      throw GraphError("edge_remove: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") still present in the snapshot");

  std::deque<Vertex> work;
  for (const Edge& e : e_minus) {
    work.push_back(e.u);
    work.push_back(e.v);
  }
  std::vector<char> detached(st.n, 0), demoted(st.n, 0);
  while (!work.empty()) {
    const Vertex u = work.front();
    work.pop_front();
    if (st.core[u] <= 0) {
      if (st.core[u] < 0) st.core[u] = 0;
      continue;
    }
    int mc = 0;
    for (Vertex w : s.adj[u])
      if (st.core[w] >= st.core[u]) ++mc;
    if (mc < st.core[u]) {
      if (!detached[u]) {
        st.detach(u);
        detached[u] = 1;
      }
      --st.core[u];
      demoted[u] = 1;
      work.push_back(u);
      for (Vertex w : s.adj[u])
        if (st.core[w] >= st.core[u]) work.push_back(w);
    }
  }

  std::vector<Vertex> demoted_list;
  int top = 0;
  for (Vertex v = 0; v < st.n; ++v)
    if (demoted[v]) {
      demoted_list.push_back(v);
      top = std::max(top, st.core[v]);
    }

  // Place each demoted group at the end of its new shell; order within the
  // group by a peel so every vertex lands with deg_plus <= core.
  for (int i = top; i >= 1; --i) {
    std::vector<Vertex> group;
    for (Vertex v : demoted_list)
      if (st.core[v] == i) group.push_back(v);
    std::vector<char> pending(st.n, 0);
    for (Vertex v : group) pending[v] = 1;
    std::size_t left = group.size();
    while (left > 0) {
      Vertex pick = -1;
      for (Vertex v : group) {
        if (!pending[v]) continue;
        int cnt = 0;
        for (Vertex w : s.adj[v])
          if (st.core[w] > i || (pending[w] && w != v)) ++cnt;
        if (cnt <= i) {
          pick = v;
          break;
        }
      }
      if (pick == -1) pick = *std::find_if(group.begin(), group.end(),
                                           [&](Vertex v) { return pending[v]; });
      pending[pick] = 0;
      st.push_back_shell(i, pick);
      --left;
    }
  }

  rep.touched = demoted_list.size();
  for (Vertex v : demoted_list)
    if (st.core[v] == k - 1) rep.v_r.push_back(v);

  std::vector<Vertex> recalc = demoted_list;
  for (const Edge& e : e_minus) {
    recalc.push_back(e.u);
    recalc.push_back(e.v);
  }
  detail::refresh_degrees(st, s, detail::with_neighbors(s, std::move(recalc)));
  return rep;
}

// Test oracle hook: true iff st is a coherent K-order description of s.
inline ValidationResult validate_order(const KOrderState& st, const Snapshot& s) {
  auto fail = [](std::string why) { return ValidationResult{false, std::move(why)}; };
  if (st.n != s.n) return fail("vertex count mismatch");

  KOrderState fresh = decompose(s);
  for (Vertex v = 0; v < s.n; ++v)
    if (st.core[v] != fresh.core[v])
      return fail("core mismatch at vertex " + std::to_string(v) + ": " +
                  std::to_string(st.core[v]) + " vs " + std::to_string(fresh.core[v]));

  // Structural pass: every core>=1 vertex in exactly the shell matching its
  // core, labels strictly increasing along each shell.
  std::vector<char> seen(s.n, 0);
  for (int kk = 1; kk <= st.max_core(); ++kk) {
    std::uint64_t last = 0;
    bool first = true;
    for (Vertex v = st.shell_head_[kk]; v != -1; v = st.next_[v]) {
      if (seen[v]) return fail("vertex " + std::to_string(v) + " appears in two shells");
      seen[v] = 1;
      if (st.core[v] != kk)
        return fail("vertex " + std::to_string(v) + " in shell " + std::to_string(kk) +
                    " but core " + std::to_string(st.core[v]));
      if (!first && st.label_[v] <= last)
        return fail("labels not increasing in shell " + std::to_string(kk));
      last = st.label_[v];
      first = false;
    }
  }
  for (Vertex v = 0; v < s.n; ++v) {
    if (st.core[v] >= 1 && !seen[v])
      return fail("vertex " + std::to_string(v) + " missing from its shell");
    if (st.core[v] == 0 && seen[v])
      return fail("core-0 vertex " + std::to_string(v) + " present in a shell");
  }

  // Replay the shells as a deletion order.
  std::vector<char> removed(s.n, 0);
  for (Vertex v = 0; v < s.n; ++v)
    if (st.core[v] == 0) removed[v] = 1;
  for (int kk = 1; kk <= st.max_core(); ++kk) {
    for (Vertex v = st.shell_head_[kk]; v != -1; v = st.next_[v]) {
      int remaining = 0;
      for (Vertex w : s.adj[v])
        if (!removed[w]) ++remaining;
      if (remaining > kk)
        return fail("illegal order: vertex " + std::to_string(v) + " has " +
                    std::to_string(remaining) + " remaining neighbors in shell " +
                    std::to_string(kk));
      if (remaining != st.deg_plus[v])
        return fail("deg_plus mismatch at vertex " + std::to_string(v) + ": stored " +
                    std::to_string(st.deg_plus[v]) + ", replay " + std::to_string(remaining));
      removed[v] = 1;
    }
  }

  for (Vertex v = 0; v < s.n; ++v) {
    if (st.deg_minus[v] != 0)
      return fail("deg_minus nonzero at rest for vertex " + std::to_string(v));
    if (st.mcd[v] != recompute_mcd(s, st, v))
      return fail("mcd mismatch at vertex " + std::to_string(v));
    if (st.core[v] >= 1 && st.mcd[v] < st.core[v])
      return fail("mcd below core at vertex " + std::to_string(v));
  }
  return {};
}

}  // namespace avt
