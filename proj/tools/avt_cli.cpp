#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "avt/anchor.hpp"
#include "avt/graph.hpp"
#include "avt/io.hpp"
#include "avt/maintain.hpp"
#include "avt/oracle.hpp"
#include "avt/peel.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

std::pair<std::size_t, std::size_t> parse_churn(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
    throw avt::GraphError("churn must be '<min>:<max>', got '" + text + "'");
  try {
    const long long a = std::stoll(text.substr(0, pos));
    const long long b = std::stoll(text.substr(pos + 1));
    if (a < 0 || b < a) throw avt::GraphError("churn range must satisfy 0 <= min <= max");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
  } catch (const avt::GraphError&) {
    throw;
  } catch (const std::exception&) {
    throw avt::GraphError("churn must be '<min>:<max>', got '" + text + "'");
  }
}

std::vector<avt::AnchorSolution> solve(const avt::EvolvingGraph& g, const avt::AVTConfig& cfg,
                                       const std::string& algo) {
  if (algo == "greedy") return avt::greedy_avt(g, cfg);
  if (algo == "inc") return avt::inc_avt(g, cfg);
  if (algo == "carry") return avt::carry_avt(g, cfg);
  throw avt::GraphError("unknown algorithm '" + algo + "'");
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw avt::GraphError("cannot write " + out_path);
  out << text;
}

json solution_record(int t, const avt::AnchorSolution& sol) {
  return json{{"t", t},
              {"anchors", sol.anchors},
              {"followers", sol.followers.size()},
              {"anchored_core_size", sol.anchored_core_size},
              {"candidates_probed", sol.candidates_probed},
              {"elapsed_ms", sol.elapsed_ms}};
}

std::string csv_rows(const std::string& algo, const std::vector<avt::AnchorSolution>& sols) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    os << (i + 1) << ',' << algo << ',' << sols[i].elapsed_ms << ',' << sols[i].candidates_probed
       << ',' << sols[i].followers.size() << "\n";
  }
  return os.str();
}

int cmd_run(const std::string& series, int k, int l, const std::string& algo,
            const std::string& out_path, const std::string& format, std::uint64_t seed) {
  const avt::EvolvingGraph g = avt::load_series(series);
  const avt::AVTConfig cfg{k, l};
  const std::vector<avt::AnchorSolution> sols = solve(g, cfg, algo);

  if (format == "csv") {
    write_text(out_path, "t,algo,elapsed_ms,candidates_probed,followers\n" + csv_rows(algo, sols));
    return 0;
  }
  json report;
  report["k"] = k;
  report["l"] = l;
  report["algo"] = algo;
  report["seed"] = seed;
  json records = json::array();
  std::size_t total_f = 0, total_probed = 0;
  double total_ms = 0;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    records.push_back(solution_record(static_cast<int>(i) + 1, sols[i]));
    total_f += sols[i].followers.size();
    total_probed += sols[i].candidates_probed;
    total_ms += sols[i].elapsed_ms;
  }
  report["snapshots"] = std::move(records);
  report["totals"] =
      json{{"followers", total_f}, {"candidates_probed", total_probed}, {"elapsed_ms", total_ms}};
  write_text(out_path, report.dump(2) + "\n");
  return 0;
}

int cmd_gen(int n, std::size_t m, int T, const std::string& churn, std::uint64_t seed,
            const std::string& out_dir) {
  const auto [lo, hi] = parse_churn(churn);
  const avt::EvolvingGraph g = avt::generate_series(n, m, T, lo, hi, seed);
  avt::save_series(g, out_dir);
  std::cout << "wrote " << out_dir << ": base with " << g.base.m << " edges, " << g.deltas.size()
            << " delta steps\n";
  return 0;
}

int cmd_bench(const std::string& series, int k, int l, const std::string& out_path) {
  const avt::EvolvingGraph g = avt::load_series(series);
  const avt::AVTConfig cfg{k, l};
  std::string text = "t,algo,elapsed_ms,candidates_probed,followers\n";
  for (const std::string algo : {"greedy", "inc", "carry"})
    text += csv_rows(algo, solve(g, cfg, algo));
  write_text(out_path, text);
  return 0;
}

// --- verify: fast paths vs brute-force references -------------------------

std::string describe(const avt::Snapshot& s) {
  std::ostringstream os;
  os << "n=" << s.n << " edges:";
  for (const avt::Edge& e : s.edges()) os << " (" << e.u << ',' << e.v << ')';
  return os.str();
}

bool verify_decompose(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    std::uniform_int_distribution<int> nd(1, 60);
    std::uniform_real_distribution<double> pd(0.0, 0.25);
    const avt::Snapshot s = avt::random_gnp_snapshot(nd(rng), pd(rng), rng);
    const avt::KOrderState st = avt::decompose(s);
    const std::vector<int> want = avt::oracle_core_numbers(s);
    for (avt::Vertex v = 0; v < s.n; ++v) {
      if (st.core[v] != want[v]) {
        std::cout << "decompose mismatch (case " << c << "): vertex " << v << " got "
                  << st.core[v] << " expected " << want[v] << "\n  " << describe(s) << "\n";
        return false;
      }
    }
    const avt::ValidationResult ok = avt::validate_order(st, s);
    if (!ok) {
      std::cout << "decompose order invalid (case " << c << "): " << ok.reason << "\n  "
                << describe(s) << "\n";
      return false;
    }
  }
  std::cout << "decompose vs oracle: " << cases << " cases ok\n";
  return true;
}

bool verify_maintenance(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed + 1);
  for (int c = 0; c < cases; ++c) {
    std::uniform_int_distribution<int> nd(2, 200);
    const int n = nd(rng);
    std::uniform_int_distribution<std::size_t> md(0, std::min<std::size_t>(
        static_cast<std::size_t>(n) * (n - 1) / 2, static_cast<std::size_t>(3 * n)));
    avt::Snapshot s = avt::random_gnm_snapshot(n, md(rng), rng);
    avt::KOrderState st = avt::decompose(s);

    std::uniform_int_distribution<int> batch(0, 20);
    avt::EdgeDelta d;
    std::uniform_int_distribution<avt::Vertex> vd(0, n - 1);
    for (int tries = 0, want = batch(rng); static_cast<int>(d.inserts.size()) < want && tries < 200;
         ++tries) {
      avt::Vertex a = vd(rng), b = vd(rng);
      if (a == b || s.has_edge(a, b)) continue;
      const avt::Edge e = avt::make_edge(a, b);
      if (std::find(d.inserts.begin(), d.inserts.end(), e) == d.inserts.end())
        d.inserts.push_back(e);
    }
    std::vector<avt::Edge> present = s.edges();
    std::shuffle(present.begin(), present.end(), rng);
    const int del = std::min<int>(batch(rng), static_cast<int>(present.size()));
    d.deletes.assign(present.begin(), present.begin() + del);

    const avt::Snapshot mid = avt::apply_delta(s, avt::EdgeDelta{d.inserts, {}});
    avt::edge_insert(st, mid, d.inserts, 2);
    const avt::Snapshot after = avt::apply_delta(mid, avt::EdgeDelta{{}, d.deletes});
    avt::edge_remove(st, after, d.deletes, 2);

    const avt::ValidationResult ok = avt::validate_order(st, after);
    if (!ok) {
      std::cout << "maintenance invalid (case " << c << "): " << ok.reason << "\n  before: "
                << describe(s) << "\n  +" << d.inserts.size() << " -" << d.deletes.size() << "\n";
      return false;
    }
  }
  std::cout << "maintenance vs recomputation: " << cases << " cases ok\n";
  return true;
}

bool verify_followers(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed + 2);
  for (int c = 0; c < cases; ++c) {
    std::uniform_int_distribution<int> nd(1, 60);
    std::uniform_real_distribution<double> pd(0.0, 0.25);
    const avt::Snapshot s = avt::random_gnp_snapshot(nd(rng), pd(rng), rng);
    const avt::KOrderState st = avt::decompose(s);
    for (int k = 2; k <= 4; ++k) {
      const std::vector<avt::Vertex> cands = avt::candidate_anchors(s, st, k);
      avt::FollowerProbe probe(s, st, k);
      for (avt::Vertex u = 0; u < s.n; ++u) {
        const std::vector<avt::Vertex> want = avt::oracle_followers(s, {u}, k);
        const std::vector<avt::Vertex> got =
            (st.core[u] >= k) ? std::vector<avt::Vertex>{} : probe.probe(u);
        if (got != want) {
          std::cout << "follower mismatch (case " << c << ", k=" << k << ", u=" << u << ")\n  "
                    << describe(s) << "\n";
          return false;
        }
        if (!want.empty() && std::find(cands.begin(), cands.end(), u) == cands.end()) {
          std::cout << "pruning dropped productive anchor " << u << " (case " << c << ", k=" << k
                    << ")\n  " << describe(s) << "\n";
          return false;
        }
      }
    }
  }
  std::cout << "followers & pruning vs oracle: " << cases << " cases ok\n";
  return true;
}

int cmd_verify(std::uint64_t seed, int cases) {
  bool ok = verify_decompose(seed, cases);
  ok = ok && verify_maintenance(seed, cases);
  ok = ok && verify_followers(seed, std::max(1, cases / 10));
  std::cout << (ok ? "verify: PASS\n" : "verify: FAIL\n");
  return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anchored k-core tracking over evolving graph snapshots"};
  app.require_subcommand(1);

  std::string series, out_path, algo = "greedy", format = "json", churn = "10:20";
  int k = 2, l = 1, n = 100, T = 5, cases = 300;
  std::size_t m = 300;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "solve a snapshot series");
  run->add_option("--series", series, "series manifest directory")->required();
  run->add_option("--k", k, "core threshold");
  run->add_option("--l", l, "anchor budget per snapshot");
  run->add_option("--algo", algo, "greedy|inc|carry")
      ->check(CLI::IsMember({"greedy", "inc", "carry"}));
  run->add_option("--out", out_path, "output path (default stdout)");
  run->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed, "seed echoed into the report");

  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic series");
  gen->add_option("--n", n, "vertex count");
  gen->add_option("--m", m, "initial edge count");
  gen->add_option("--T", T, "snapshot count");
  gen->add_option("--churn", churn, "per-step edge swap range '<min>:<max>'");
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--out", out_path, "output directory")->required();

  CLI::App* verify = app.add_subcommand("verify", "check fast paths against brute force");
  verify->add_option("--seed", seed, "rng seed");
  verify->add_option("--cases", cases, "random cases per suite");

  CLI::App* bench = app.add_subcommand("bench", "per-snapshot timings for all algorithms");
  bench->add_option("--series", series, "series manifest directory")->required();
  bench->add_option("--k", k, "core threshold");
  bench->add_option("--l", l, "anchor budget per snapshot");
  bench->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(series, k, l, algo, out_path, format, seed);
    if (gen->parsed()) return cmd_gen(n, m, T, churn, seed, out_path);
    if (verify->parsed()) return cmd_verify(seed, cases);
    if (bench->parsed()) return cmd_bench(series, k, l, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
