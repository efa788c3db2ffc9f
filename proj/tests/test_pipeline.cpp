#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "k55/graph.hpp"
#include "k55/graph6.hpp"
#include "k55/pipeline.hpp"

using Json = nlohmann::ordered_json;
using k55::graphs::Graph;
using namespace k55::pipeline;

namespace {

std::string g6(const Graph& g) { return k55::graphs::graph6_encode(g); }

// K55 with two bipartite edges swapped for (0,1) and (5,6); still 25 edges,
// min degree 4, 2-connected, but no longer bipartite.
Graph rewired_k55() {
  auto edges = Graph::complete_bipartite(5, 5).edges();
  std::erase(edges, std::pair<int, int>{0, 5});
  std::erase(edges, std::pair<int, int>{1, 6});
  edges.emplace_back(0, 1);
  edges.emplace_back(5, 6);
  return Graph(10, edges);
}

// Two K5 blocks joined by a perfect matching: contains K5, fails the rank
// filter (two independent stresses).
Graph double_k5() {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      edges.emplace_back(u, v);
      edges.emplace_back(u + 5, v + 5);
    }
  for (int i = 0; i < 5; ++i) edges.emplace_back(i, i + 5);
  return Graph(10, edges);
}

// Two octahedron-like blocks sharing the pair {4,5}: 2-connected but not
// 3-connected, and K5-free.
Graph two_cut_graph() {
  std::vector<std::pair<int, int>> edges;
  auto add_block = [&](std::vector<int> vs, std::vector<std::pair<int, int>> missing) {
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        std::pair<int, int> e{vs[a], vs[b]};
        bool skip = false;
        for (auto m : missing) skip |= e == m;
        if (!skip) edges.push_back(e);
      }
  };
  add_block({0, 1, 2, 3, 4, 5}, {{0, 1}, {2, 3}, {4, 5}});
  add_block({4, 5, 6, 7, 8, 9}, {{4, 5}, {6, 7}, {8, 9}});
  edges.emplace_back(0, 1);
  return Graph(10, edges);
}

PipelineConfig test_config() {
  PipelineConfig cfg;
  cfg.seed = 424242;
  cfg.jobs = 1;
  cfg.input_label = "unit-test";
  return cfg;
}

}  // namespace

TEST_CASE("prop2 classifies a synthetic stream with full conservation") {
  Graph k55 = Graph::complete_bipartite(5, 5);
  REQUIRE(k55::graphs::is_k_connected(rewired_k55(), 2));
  REQUIRE(k55::graphs::is_k_connected(two_cut_graph(), 2));
  REQUIRE_FALSE(k55::graphs::is_k_connected(two_cut_graph(), 3));
  REQUIRE_FALSE(k55::graphs::has_k5_subgraph(two_cut_graph()));

  std::vector<std::string> input = {
      g6(k55),           // isomorphic-to-K55
      "%%%not-graph6",   // skip: bad graph6
      g6(rewired_k55()), // some stress verdict
      "Bw",              // skip: wrong vertex count (triangle)
      g6(double_k5()),   // has-K5
      g6(two_cut_graph()),  // not-3-connected
      g6(Graph::complete(10)),  // skip: wrong edge count
  };
  auto res = run_prop2(test_config(), input);

  // header + one line per input + summary
  REQUIRE(res.lines.size() == input.size() + 2);
  CHECK(res.exit_code == 0);

  Json header = Json::parse(res.lines.front());
  CHECK(header.at("type") == "header");
  CHECK(header.at("pipeline") == "prop2");
  CHECK(header.at("seed") == 424242);
  CHECK_FALSE(header.contains("jobs"));  // jobs must not influence output bytes

  Json l1 = Json::parse(res.lines[1]);
  CHECK(l1.at("verdict") == "isomorphic-to-K55");
  CHECK(l1.at("certificate").at("stress_sum") == "0");
  CHECK(l1.at("certificate").at("rational_confirmed") == true);
  CHECK(l1.at("stage") == "stress");

  Json l2 = Json::parse(res.lines[2]);
  CHECK(l2.at("skip").get<std::string>().find("bad-graph6") == 0);

  Json l3 = Json::parse(res.lines[3]);
  CHECK(l3.at("verdict") == "unbalanced-stress");

  Json l4 = Json::parse(res.lines[4]);
  CHECK(l4.at("skip") == "wrong-vertex-count");

  Json l5 = Json::parse(res.lines[5]);
  CHECK(l5.at("verdict") == "has-K5");

  Json l6 = Json::parse(res.lines[6]);
  CHECK(l6.at("verdict") == "not-3-connected");
  CHECK(l6.at("certificate").at("cut").size() == 2);

  Json l7 = Json::parse(res.lines[7]);
  CHECK(l7.at("skip") == "wrong-edge-count");

  Json summary = res.summary;
  CHECK(summary.at("inputs") == input.size());
  CHECK(summary.at("skips") == 3);
  CHECK(summary.at("k55_found") == true);
  CHECK(summary.at("balanced_non_k55") == 0);

  // every verdict line re-validates from scratch, including exactly
  for (std::size_t i = 1; i + 1 < res.lines.size(); ++i) {
    Json j = Json::parse(res.lines[i]);
    if (!j.contains("verdict")) continue;
    CHECK(verify_verdict_line(res.lines[i], false) == "");
    CHECK(verify_verdict_line(res.lines[i], true) == "");
  }
}

TEST_CASE("prop3 classifies a synthetic stream") {
  // near-4-regular circulant with three chords: generically stress-free
  std::vector<std::pair<int, int>> circ;
  for (int v = 0; v < 11; ++v) {
    circ.emplace_back(v, (v + 1) % 11);
    circ.emplace_back(v, (v + 2) % 11);
  }
  circ.emplace_back(0, 5);
  circ.emplace_back(1, 6);
  circ.emplace_back(2, 7);
  Graph independent11(11, circ);
  REQUIRE(independent11.edge_count() == 25);
  REQUIRE(k55::graphs::min_degree(independent11) == 4);

  // K5 + K5 + apex wired to reach 25 edges and min degree 4
  std::vector<std::pair<int, int>> dep;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      dep.emplace_back(u, v);
      dep.emplace_back(u + 5, v + 5);
    }
  dep.emplace_back(10, 0);
  dep.emplace_back(10, 1);
  dep.emplace_back(10, 5);
  dep.emplace_back(10, 6);
  dep.emplace_back(2, 7);
  Graph k5_11(11, dep);
  REQUIRE(k5_11.edge_count() == 25);
  REQUIRE(k55::graphs::min_degree(k5_11) == 4);

  std::vector<std::string> input = {g6(independent11), g6(k5_11), g6(Graph::complete(5))};
  auto res = run_prop3(test_config(), input);
  REQUIRE(res.lines.size() == 5);
  CHECK(res.exit_code == 0);

  Json l1 = Json::parse(res.lines[1]);
  CHECK(l1.at("verdict") == "stress-free-certified");
  CHECK(l1.at("stage") == "stress-free");
  Json l2 = Json::parse(res.lines[2]);
  CHECK(l2.at("verdict") == "has-K5");
  Json l3 = Json::parse(res.lines[3]);
  CHECK(l3.at("skip") == "wrong-vertex-count");

  CHECK(res.summary.at("stage3_survivors") == 0);

  for (std::size_t i = 1; i + 1 < res.lines.size(); ++i) {
    Json j = Json::parse(res.lines[i]);
    if (!j.contains("verdict")) continue;
    CHECK(verify_verdict_line(res.lines[i], true) == "");
  }
}

TEST_CASE("pipelines are byte-deterministic and job-count independent") {
  std::vector<std::string> input = {g6(Graph::complete_bipartite(5, 5)), g6(rewired_k55()),
                                    g6(double_k5()), g6(two_cut_graph())};
  auto a = run_prop2(test_config(), input);
  auto b = run_prop2(test_config(), input);
  CHECK(a.lines == b.lines);

  PipelineConfig threaded = test_config();
  threaded.jobs = 3;
  auto c = run_prop2(threaded, input);
  CHECK(a.lines == c.lines);

  PipelineConfig other_seed = test_config();
  other_seed.seed = 7;
  auto d = run_prop2(other_seed, input);
  CHECK(a.lines != d.lines);
}

TEST_CASE("verify rejects tampered certificates") {
  std::vector<std::string> input = {g6(rewired_k55()), g6(double_k5())};
  auto res = run_prop2(test_config(), input);

  Json unb = Json::parse(res.lines[1]);
  REQUIRE(unb.at("verdict") == "unbalanced-stress");
  Json tampered = unb;
  std::string sum = tampered["certificate"]["stress_sum_mod_p"];
  tampered["certificate"]["stress_sum_mod_p"] = sum + "1";
  CHECK(verify_verdict_line(tampered.dump(), false) != "");

  Json k5line = Json::parse(res.lines[2]);
  REQUIRE(k5line.at("verdict") == "has-K5");
  Json bad_witness = k5line;
  bad_witness["certificate"]["vertices"] = {0, 1, 2, 3, 9};
  CHECK(verify_verdict_line(bad_witness.dump(), false) != "");

  // swapping the verdict graph invalidates the certificate
  Json swapped = unb;
  swapped["graph6"] = g6(Graph::complete_bipartite(5, 5));
  CHECK(verify_verdict_line(swapped.dump(), false) != "");

  CHECK(verify_verdict_line("{\"type\":\"header\"}", false) != "");
  CHECK(verify_verdict_line("not json at all", false) != "");
}

TEST_CASE("graph6 file reading and the geng subprocess plumbing") {
  CHECK_THROWS_WITH_AS(read_graph6_lines("/nonexistent/stream.g6", 0),
                       doctest::Contains("genstream"), std::runtime_error);

  const std::string dir = "/tmp/k55_pipeline_test";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  {
    std::ofstream f(dir + "/lines.g6");
    f << "C~\nBw\n\nD~{\n";
  }
  auto lines = read_graph6_lines(dir + "/lines.g6", 0);
  REQUIRE(lines.size() == 3);  // blank line dropped
  CHECK(lines[0] == "C~");
  CHECK(read_graph6_lines(dir + "/lines.g6", 2).size() == 2);

  // a fake geng stands in for the real binary
  const std::string fake = dir + "/fake_geng";
  {
    std::ofstream f(fake);
    f << "#!/bin/sh\n"
      << "# expected flags: -q -C -d4 <n> <e>:<e>\n"
      << "echo C~\necho D~{\n";
  }
  REQUIRE(std::system(("chmod +x " + fake).c_str()) == 0);
  auto streamed = stream_from_geng(fake, 10, 25, 4, 2, 0);
  REQUIRE(streamed.size() == 2);
  CHECK(streamed[0] == "C~");
  CHECK(streamed[1] == "D~{");
  CHECK(stream_from_geng(fake, 10, 25, 4, 1, 1).size() == 1);

  CHECK_THROWS_WITH_AS(stream_from_geng("/nonexistent/geng", 10, 25, 4, 2, 0),
                       doctest::Contains("install nauty's geng"), std::runtime_error);
}

TEST_CASE("config seeds are reproducible and attempt zero is shared") {
  CHECK(config_seed_for(99, "C~", 0) == 99);
  CHECK(config_seed_for(99, "D~{", 0) == 99);
  CHECK(config_seed_for(99, "C~", 1) == config_seed_for(99, "C~", 1));
  CHECK(config_seed_for(99, "C~", 1) != config_seed_for(99, "C~", 2));
  CHECK(config_seed_for(99, "C~", 1) != config_seed_for(99, "D~{", 1));
}

TEST_CASE("prop1 and lemma-br check reports") {
  auto p1 = run_prop1_checks(8675309);
  CHECK(p1.all_passed());
  CHECK(p1.checks.size() >= 8);

  auto br = run_lemma_br_checks(8675309, 4);
  CHECK(br.all_passed());
  CHECK(br.checks.size() == 4);
}

TEST_CASE("rank-only mode emits re-checkable rank candidates") {
  std::vector<std::string> input = {g6(Graph::complete_bipartite(5, 5)), g6(double_k5())};
  PipelineConfig cfg = test_config();
  cfg.rank_only = true;
  auto res = run_prop2(cfg, input);
  CHECK(res.exit_code == 0);

  Json l1 = Json::parse(res.lines[1]);
  CHECK(l1.at("verdict") == "rank24-circuit-candidate");
  CHECK(l1.at("stage") == "rank");
  CHECK(verify_verdict_line(res.lines[1], true) == "");
  Json l2 = Json::parse(res.lines[2]);
  CHECK(l2.at("verdict") == "has-K5");
  CHECK(res.summary.at("verdicts").at("rank24-circuit-candidate") == 1);
  CHECK(res.summary.at("g_prime") == 1);

  Json tampered = l1;
  tampered["graph6"] = g6(double_k5());
  CHECK(verify_verdict_line(tampered.dump(), false) != "");

  PipelineConfig bad_dim = test_config();
  bad_dim.dim = 2;
  CHECK_THROWS_AS(run_prop2(bad_dim, input), std::invalid_argument);
  CHECK_THROWS_AS(run_prop3(bad_dim, input), std::invalid_argument);
}

TEST_CASE("hopeless arithmetic surfaces as UNRESOLVED, never as silence") {
  // over F_2 every rigidity-matrix entry 2(p_u - p_v) vanishes, so the rank
  // filter can never reach 24 and graphs without combinatorial certificates
  // must be reported unresolved with a nonzero exit
  PipelineConfig cfg = test_config();
  cfg.prime = 2;

  auto res2 = run_prop2(cfg, {g6(rewired_k55()), g6(double_k5())});
  CHECK(res2.exit_code == 1);
  Json l1 = Json::parse(res2.lines[1]);
  CHECK(l1.at("verdict") == "UNRESOLVED");
  CHECK(l1.at("certificate").at("reason") == "rank-below-24-without-combinatorial-certificate");
  Json l2 = Json::parse(res2.lines[2]);
  CHECK(l2.at("verdict") == "has-K5");  // combinatorial certificates still work
  CHECK(res2.summary.at("verdicts").at("UNRESOLVED") == 1);
  // conservation holds even on failing runs
  CHECK(res2.lines.size() == 2 + 2);

  std::vector<std::pair<int, int>> circ;
  for (int v = 0; v < 11; ++v) {
    circ.emplace_back(v, (v + 1) % 11);
    circ.emplace_back(v, (v + 2) % 11);
  }
  circ.emplace_back(0, 5);
  circ.emplace_back(1, 6);
  circ.emplace_back(2, 7);
  auto res3 = run_prop3(cfg, {g6(Graph(11, circ))});
  CHECK(res3.exit_code == 1);
  CHECK(Json::parse(res3.lines[1]).at("verdict") == "UNRESOLVED");
  CHECK(res3.summary.at("stage3_survivors") == 1);
}
