#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "avt/graph.hpp"

namespace avt {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  std::string out = (pos == std::string::npos) ? line : line.substr(0, pos);
  while (!out.empty() && (out.back() == ' ' || out.back() == '\t' || out.back() == '\r'))
    out.pop_back();
  std::size_t b = 0;
  while (b < out.size() && (out[b] == ' ' || out[b] == '\t')) ++b;
  return out.substr(b);
}

[[noreturn]] inline void parse_fail(const std::string& path, int line, const std::string& why) {
  throw GraphError(path + ":" + std::to_string(line) + ": " + why);
}

}  // namespace detail

// Snapshot file: `n=<count>` header, then one `<u> <v>` edge per line.
// `#` starts a comment.
inline Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::string raw;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (n < 0) {
      if (line.rfind("n=", 0) != 0) detail::parse_fail(path, lineno, "expected n=<count> header");
      try {
        n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        detail::parse_fail(path, lineno, "bad vertex count '" + line.substr(2) + "'");
      }
      if (n < 0) detail::parse_fail(path, lineno, "negative vertex count");
      continue;
    }
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a >> b) || (ls >> std::ws, !ls.eof()))
      detail::parse_fail(path, lineno, "expected '<u> <v>'");
    if (a == b) detail::parse_fail(path, lineno, "self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n)
      detail::parse_fail(path, lineno, "vertex id out of range (n=" + std::to_string(n) + ")");
    const Edge e = make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!seen.insert(e).second) detail::parse_fail(path, lineno, "duplicate edge");
    edges.push_back(e);
  }
  if (n < 0) throw GraphError(path + ": missing n=<count> header");
  return Snapshot::from_edges(n, edges);
}

inline void save_snapshot(const Snapshot& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << "n=" << s.n << "\n";
  for (const Edge& e : s.edges()) out << e.u << ' ' << e.v << "\n";
  if (!out) throw GraphError("write failed for " + path);
}

// Delta file: `+ <u> <v>` / `- <u> <v>` lines; all inserts are applied
// before deletes regardless of interleaving in the file.
inline EdgeDelta load_delta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  EdgeDelta d;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    char op;
    long long a, b;
    if (!(ls >> op >> a >> b) || (op != '+' && op != '-') || (ls >> std::ws, !ls.eof()))
      detail::parse_fail(path, lineno, "expected '+ <u> <v>' or '- <u> <v>'");
    if (a == b) detail::parse_fail(path, lineno, "self-loop");
    if (a < 0 || b < 0) detail::parse_fail(path, lineno, "negative vertex id");
    const Edge e = make_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    (op == '+' ? d.inserts : d.deletes).push_back(e);
  }
  return d;
}

inline void save_delta(const EdgeDelta& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  for (const Edge& e : d.inserts) out << "+ " << e.u << ' ' << e.v << "\n";
  for (const Edge& e : d.deletes) out << "- " << e.u << ' ' << e.v << "\n";
  if (!out) throw GraphError("write failed for " + path);
}

// Series manifest: a directory holding base.edges plus step_*.delta files
// consumed in lexicographic order.
inline EvolvingGraph load_series(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw GraphError(dir + " is not a directory");
  EvolvingGraph g;
  g.base = load_snapshot((root / "base.edges").string());
  std::vector<std::string> steps;
  for (const auto& entry : fs::directory_iterator(root)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.substr(name.size() - 6) == ".delta") steps.push_back(name);
  }
  std::sort(steps.begin(), steps.end());
  for (const std::string& name : steps) g.deltas.push_back(load_delta((root / name).string()));
  return g;
}

inline void save_series(const EvolvingGraph& g, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_snapshot(g.base, (fs::path(dir) / "base.edges").string());
  for (std::size_t i = 0; i < g.deltas.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "step_%04zu.delta", i + 1);
    save_delta(g.deltas[i], (fs::path(dir) / name).string());
  }
}

}  // namespace avt
