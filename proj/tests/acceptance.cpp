// Acceptance suite: one line per criterion, PASS/FAIL/SKIP, nonzero exit on
// any FAIL. The two full-scale pipeline reproductions (criteria 5 and 6)
// are gated behind --full and need the pre-generated graph6 streams; the
// README lists the genstream invocations.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "k55/canonical.hpp"
#include "k55/cayley_menger.hpp"
#include "k55/enumerate.hpp"
#include "k55/graph.hpp"
#include "k55/graph6.hpp"
#include "k55/pipeline.hpp"
#include "k55/rigidity.hpp"
#include "k55/rng.hpp"

using Json = nlohmann::ordered_json;
using k55::Rng;
using k55::graphs::Graph;
using k55::linalg::Rational;

namespace {

struct Options {
  bool full = false;
  std::string streams_dir = "streams";
  std::string out_dir = "acceptance_out";
  std::string geng_path;
  std::uint64_t seed = 20250808;
};

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds) {
  if (!ok) ++failures;
  std::printf("[criterion %d] %s: %s (%.1fs)\n", criterion, ok ? "PASS" : "FAIL", what.c_str(),
              seconds);
  std::fflush(stdout);
}

void skip(int criterion, const std::string& why) {
  std::printf("[criterion %d] SKIP: %s\n", criterion, why.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool file_exists(const std::string& p) { return std::ifstream(p).good(); }

// ---- criterion 1: dimension-1 circuits are exactly the single-cycle edge sets ----

bool edge_set_is_single_cycle(const Graph& g) {
  if (g.edge_count() < 3) return false;
  int edge_components = 0;
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int deg = g.degree(v);
    if (deg != 0 && deg != 2) return false;
    if (deg == 0 || seen[v]) continue;
    ++edge_components;
    std::vector<int> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < g.vertex_count(); ++w)
        if (g.has_edge(u, w) && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return edge_components == 1;
}

void criterion1(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t classes = 0;
  for (int n = 1; n <= 6 && ok; ++n) {
    k55::graphs::enumerate_small(n, {}, [&](const Graph& g) {
      if (g.edge_count() == 0) return;
      ++classes;
      const bool predicted = k55::rigidity::is_circuit(g, 1, opt.seed).is_circuit;
      if (predicted != edge_set_is_single_cycle(g)) ok = false;
    });
  }
  report(1, "d=1 circuits match the cycle oracle on all " + std::to_string(classes) +
                " nonempty classes with <= 6 vertices",
         ok, seconds_since(t0));
}

void criterion2(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  using k55::rigidity::is_circuit;
  bool ok = true;
  auto expect_circuit = [&](const Graph& g, int dim) {
    auto r = is_circuit(g, dim, opt.seed);
    ok &= r.is_circuit && r.certified;
  };
  expect_circuit(Graph::complete(4), 2);
  expect_circuit(Graph::complete(5), 3);
  expect_circuit(Graph::wheel(5), 2);
  expect_circuit(Graph::wheel(6), 2);
  expect_circuit(Graph::complete_bipartite(5, 5), 3);
  ok &= !is_circuit(Graph::complete(5).without_edge(0), 3, opt.seed).is_circuit;
  ok &= !is_circuit(Graph::complete_bipartite(5, 5).without_edge(12), 3, opt.seed).is_circuit;
  report(2, "K4, K5, W5, W6, K55 certified circuits; K5-e and K55-e are not", ok,
         seconds_since(t0));
}

void criterion3(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = k55::pipeline::run_lemma_br_checks(opt.seed, 10);
  report(3,
         "10 regular rational K55 configurations: stress dimension 1, all vertex sums 0, "
         "total sum 0 (exact)",
         rep.all_passed() && rep.checks.size() == 10, seconds_since(t0));
}

void criterion4(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rep = k55::pipeline::run_prop1_checks(opt.seed);
  std::string detail = "bordered-determinant checks:";
  for (const auto& [name, ok] : rep.checks)
    if (!ok) detail += " " + name + "=FAIL";
  if (rep.all_passed()) detail += " support, 100x 3d-vanishing, 10x 4d-nonzero, gradient, expansions";
  report(4, detail, rep.all_passed(), seconds_since(t0));
}

struct StreamPaths {
  std::string n10, n11, n12;
  bool have_prop2 = false, have_prop3 = false;
};

StreamPaths locate_streams(const Options& opt) {
  StreamPaths s;
  s.n10 = opt.streams_dir + "/n10_e25_d4_c2.g6";
  s.n11 = opt.streams_dir + "/n11_e25_d4_c1.g6";
  s.n12 = opt.streams_dir + "/n12_e25_d4_c1.g6";
  s.have_prop2 = file_exists(s.n10);
  s.have_prop3 = file_exists(s.n11) && file_exists(s.n12);
  return s;
}

k55::pipeline::PipelineConfig run_config(const Options& opt, const std::string& label) {
  k55::pipeline::PipelineConfig cfg;
  cfg.seed = opt.seed;
  cfg.input_label = label;
  return cfg;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path);
  for (const auto& l : lines) f << l << "\n";
}

void criterion5(const Options& opt, const StreamPaths& streams) {
  if (!opt.full) {
    skip(5, "full-scale prop3 reproduction is gated behind --full");
    return;
  }
  if (!streams.have_prop3) {
    skip(5, "streams missing at " + streams.n11 + " (generate with: genstream -n 11 -e 25 -d 4 "
                "-c 1 -o <file>; same for n 12)");
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto lines = k55::pipeline::read_graph6_lines(streams.n11, 0);
  auto more = k55::pipeline::read_graph6_lines(streams.n12, 0);
  lines.insert(lines.end(), more.begin(), more.end());
  auto res = k55::pipeline::run_prop3(run_config(opt, "acceptance-prop3"), lines);
  write_lines(opt.out_dir + "/prop3_full.jsonl", res.lines);
  const auto& s = res.summary;
  const bool ok = s.at("stage1_survivors") == 1246 && s.at("stage2_survivors") == 113 &&
                  s.at("stage3_survivors") == 0 && s.at("verdicts").at("UNRESOLVED") == 0 &&
                  res.exit_code == 0;
  report(5,
         "prop3 stage counts over " + std::to_string(lines.size()) +
             " graphs: " + s.at("stage1_survivors").dump() + "/" +
             s.at("stage2_survivors").dump() + "/" + s.at("stage3_survivors").dump() +
             " (want 1246/113/0)",
         ok, seconds_since(t0));
}

void criterion6(const Options& opt, const StreamPaths& streams) {
  if (!opt.full) {
    skip(6, "full-scale prop2 reproduction is gated behind --full");
    return;
  }
  if (!streams.have_prop2) {
    skip(6, "stream missing at " + streams.n10 +
                " (generate with: genstream -n 10 -e 25 -d 4 -c 2 -o <file>)");
    return;
  }
  // smoke mode first: --limit 10000 must finish inside five minutes
  auto t0 = std::chrono::steady_clock::now();
  auto lines = k55::pipeline::read_graph6_lines(streams.n10, 0);
  auto smoke_cfg = run_config(opt, "acceptance-prop2-smoke");
  smoke_cfg.limit = 10000;
  auto smoke = k55::pipeline::run_prop2(smoke_cfg, lines);
  const double smoke_s = seconds_since(t0);
  const bool smoke_ok =
      smoke.summary.at("verdicts").at("UNRESOLVED") == 0 && smoke_s < 300.0;
  report(6, "prop2 smoke (--limit 10000): zero UNRESOLVED within five minutes", smoke_ok,
         smoke_s);

  t0 = std::chrono::steady_clock::now();
  auto res = k55::pipeline::run_prop2(run_config(opt, "acceptance-prop2"), lines);
  write_lines(opt.out_dir + "/prop2_full.jsonl", res.lines);
  const auto& s = res.summary;
  const bool ok = s.at("verdicts").at("UNRESOLVED") == 0 && s.at("balanced_non_k55") == 0 &&
                  s.at("verdicts").at("isomorphic-to-K55") == 1 && res.exit_code == 0;
  report(6,
         "prop2 over " + std::to_string(lines.size()) +
             " graphs: every non-rank-24 graph certified, unique balanced graph is K55",
         ok, seconds_since(t0));
}

void criterion7(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  // verdict pool: the full-scale outputs when present, else fresh smoke runs
  std::vector<std::string> pool;
  for (const char* name : {"/prop2_full.jsonl", "/prop3_full.jsonl"}) {
    std::ifstream f(opt.out_dir + name);
    std::string line;
    while (std::getline(f, line)) {
      Json j = Json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.contains("verdict") && j.at("verdict") != "UNRESOLVED")
        pool.push_back(line);
    }
  }
  if (pool.empty()) {
    skip(7, "no pipeline outputs under " + opt.out_dir + " (run with --full and streams)");
    return;
  }
  Rng rng(opt.seed);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(i + 1)]);
  const std::size_t take = std::min<std::size_t>(1000, order.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < take; ++i)
    if (!k55::pipeline::verify_verdict_line(pool[order[i]], false).empty()) ++bad;
  // prime-field vs rational agreement on a subsample
  std::size_t bad_exact = 0;
  const std::size_t exact_take = std::min<std::size_t>(50, order.size());
  for (std::size_t i = 0; i < exact_take; ++i)
    if (!k55::pipeline::verify_verdict_line(pool[order[i]], true).empty()) ++bad_exact;
  report(7,
         "verify re-validated " + std::to_string(take) + " sampled verdicts (" +
             std::to_string(bad) + " failures) and " + std::to_string(exact_take) +
             " rational escalations (" + std::to_string(bad_exact) + " disagreements)",
         bad == 0 && bad_exact == 0, seconds_since(t0));
}

void criterion8(const Options& opt, const StreamPaths& streams) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> lines;
  if (streams.have_prop3) {
    lines = k55::pipeline::read_graph6_lines(streams.n12, 20000);
  } else {
    // deterministic small pool: every 25-edge min-degree-4 class on 11
    // vertices is too big to build here, so fall back to the K55 family
    lines.push_back(k55::graphs::graph6_encode(Graph::complete_bipartite(5, 5)));
  }
  auto cfg = run_config(opt, "determinism");
  const bool prop3_mode = streams.have_prop3;
  auto run = [&](int jobs) {
    auto c = cfg;
    c.jobs = jobs;
    return prop3_mode ? k55::pipeline::run_prop3(c, lines) : k55::pipeline::run_prop2(c, lines);
  };
  auto a = run(1), b = run(1), c = run(3);
  const bool ok = a.lines == b.lines && a.lines == c.lines;
  report(8,
         "byte-identical reruns over " + std::to_string(lines.size()) +
             " graphs, --jobs leaves output unchanged",
         ok, seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << a << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--full")
      opt.full = true;
    else if (a == "--streams")
      opt.streams_dir = next();
    else if (a == "--out-dir")
      opt.out_dir = next();
    else if (a == "--seed")
      opt.seed = std::strtoull(next().c_str(), nullptr, 10);
    else {
      std::cerr << "usage: acceptance [--full] [--streams DIR] [--out-dir DIR] [--seed N]\n";
      return 2;
    }
  }
  if (std::system(("mkdir -p '" + opt.out_dir + "'").c_str()) != 0) {
    std::cerr << "cannot create " << opt.out_dir << "\n";
    return 2;
  }

  const StreamPaths streams = locate_streams(opt);
  criterion1(opt);
  criterion2(opt);
  criterion3(opt);
  criterion4(opt);
  criterion5(opt, streams);
  criterion6(opt, streams);
  criterion7(opt);
  criterion8(opt, streams);

  if (failures) {
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("acceptance: all executed criteria passed\n");
  return 0;
}
