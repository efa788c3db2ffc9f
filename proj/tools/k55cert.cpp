// Command-line front end for the rigidity certificate toolkit: per-graph
// rank/circuit/stress queries, the bordered-determinant checks, the two
// enumeration pipelines, and the independent verdict checker.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "k55/canonical.hpp"
#include "k55/cayley_menger.hpp"
#include "k55/enumerate.hpp"
#include "k55/graph6.hpp"
#include "k55/pipeline.hpp"
#include "k55/rigidity.hpp"

using Json = nlohmann::ordered_json;
using k55::Rng;
using k55::graphs::Graph;
using k55::linalg::Fp;
using k55::linalg::Rational;

namespace {

struct CommonOpts {
  int dim = 3;
  std::uint64_t prime = Fp::kMersenne61;
  std::uint64_t seed = 1;
  int trials = 3;
  std::string input;
  std::string geng_path;
  std::size_t limit = 0;
  std::string out;
  int jobs = 1;
  std::string graph6;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool pipeline_scale) {
  cmd->add_option("--dim", o.dim, "embedding dimension")->capture_default_str();
  cmd->add_option("--prime", o.prime, "prime modulus for randomized rank")
      ->capture_default_str();
  cmd->add_option("--trials", o.trials, "rank sampling attempts")->capture_default_str();
  cmd->add_option("--out", o.out, "write output to this file instead of stdout");
  if (pipeline_scale) {
    cmd->add_option("--seed", o.seed, "run seed (recorded in the output header)")->required();
    cmd->add_option("--input", o.input, "graph6 file, one graph per line");
    cmd->add_option("--geng-path", o.geng_path, "spawn this geng binary instead of reading a file");
    cmd->add_option("--limit", o.limit, "process at most this many graphs");
    cmd->add_option("--jobs", o.jobs, "worker threads (output is order-independent)")
        ->capture_default_str();
  } else {
    cmd->add_option("--seed", o.seed, "seed for randomized evaluation")->capture_default_str();
  }
}

std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out);
  if (!file) throw std::runtime_error("cannot open output file " + o.out);
  return file;
}

std::vector<std::string> gather_graphs(const CommonOpts& o) {
  if (!o.graph6.empty()) return {o.graph6};
  if (!o.input.empty()) return k55::pipeline::read_graph6_lines(o.input, o.limit);
  throw std::runtime_error("supply a graph6 string or --input file");
}

std::vector<std::string> pipeline_input(const CommonOpts& o, int n, int edges, int mindeg) {
  if (!o.input.empty()) return k55::pipeline::read_graph6_lines(o.input, o.limit);
  if (!o.geng_path.empty())
    return k55::pipeline::stream_from_geng(o.geng_path, n, edges, mindeg, 2, o.limit);
  throw std::runtime_error(
      "no input source: pass --input <graph6 file> (pre-generate one with the genstream tool) "
      "or --geng-path <binary>");
}

k55::pipeline::PipelineConfig to_config(const CommonOpts& o) {
  k55::pipeline::PipelineConfig cfg;
  cfg.dim = o.dim;
  cfg.prime = o.prime;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.limit = o.limit;
  cfg.jobs = o.jobs;
  cfg.input_label = !o.input.empty() ? o.input : (!o.geng_path.empty() ? "geng" : "arg");
  return cfg;
}

int emit_report(const k55::pipeline::CheckReport& rep, std::ostream& os, const char* name) {
  for (const auto& [check, ok] : rep.checks)
    os << name << " " << check << ": " << (ok ? "pass" : "FAIL") << "\n";
  os << name << ": " << (rep.all_passed() ? "all checks passed" : "FAILURES present") << "\n";
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorial-rigidity certificates for K_{5,5}"};
  app.require_subcommand(1);

  CommonOpts rank_o, circuit_o, stress_o, cmpoly_o, prop1_o, lemmabr_o, prop2_o, prop3_o,
      verify_o, selftest_o;

  auto* rank_cmd = app.add_subcommand("rank", "generic rank of the rigidity matrix");
  add_common(rank_cmd, rank_o, false);
  rank_cmd->add_option("graph6", rank_o.graph6, "graph6 string");
  rank_cmd->add_option("--input", rank_o.input, "graph6 file");
  rank_cmd->add_option("--limit", rank_o.limit, "max graphs from --input");

  auto* circuit_cmd = app.add_subcommand("circuit", "rigidity-matroid circuit test");
  add_common(circuit_cmd, circuit_o, false);
  circuit_cmd->add_option("graph6", circuit_o.graph6, "graph6 string");
  circuit_cmd->add_option("--input", circuit_o.input, "graph6 file");
  circuit_cmd->add_option("--limit", circuit_o.limit, "max graphs from --input");

  auto* stress_cmd = app.add_subcommand("stress", "stress basis at a seeded configuration");
  add_common(stress_cmd, stress_o, false);
  stress_cmd->add_option("graph6", stress_o.graph6, "graph6 string")->required();
  bool stress_rational = false;
  stress_cmd->add_flag("--rational", stress_rational, "exact rational arithmetic");

  auto* cmpoly_cmd = app.add_subcommand("cm-poly", "dump the bordered determinant expansion");
  add_common(cmpoly_cmd, cmpoly_o, false);

  auto* prop1_cmd = app.add_subcommand("prop1", "bordered-determinant checks");
  add_common(prop1_cmd, prop1_o, false);

  auto* lemmabr_cmd = app.add_subcommand("lemma-br", "balanced-stress checks at regular points");
  add_common(lemmabr_cmd, lemmabr_o, false);
  int lemmabr_samples = 10;
  lemmabr_cmd->add_option("--samples", lemmabr_samples, "seeded configurations to test")
      ->capture_default_str();

  auto* prop2_cmd =
      app.add_subcommand("prop2", "10-vertex 25-edge pipeline (balanced-stress search)");
  add_common(prop2_cmd, prop2_o, true);
  bool prop2_rank_only = false;
  prop2_cmd->add_flag("--rank-only", prop2_rank_only,
                      "stop after the rank filter, emit rank24-circuit-candidate verdicts");

  auto* prop3_cmd =
      app.add_subcommand("prop3", "11/12-vertex 25-edge pipeline (no-circuit certificates)");
  add_common(prop3_cmd, prop3_o, true);

  auto* verify_cmd = app.add_subcommand("verify", "re-validate verdict lines from scratch");
  std::string verify_line;
  verify_cmd->add_option("line", verify_line, "one JSONL verdict line to re-validate");
  verify_cmd->add_option("--in", verify_o.input, "JSONL verdict file");
  std::size_t verify_sample = 0;
  std::uint64_t verify_seed = 1;
  bool verify_exact = false;
  verify_cmd->add_option("--sample", verify_sample, "verify this many randomly chosen lines");
  verify_cmd->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();
  verify_cmd->add_flag("--exact", verify_exact, "re-check prime-field certificates rationally");
  verify_cmd->add_option("--out", verify_o.out, "write the report here");

  auto* selftest_cmd = app.add_subcommand("selftest", "quick library self-checks");
  add_common(selftest_cmd, selftest_o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream file;

    if (rank_cmd->parsed()) {
      std::ostream& os = open_out(rank_o, file);
      for (const auto& g6 : gather_graphs(rank_o)) {
        Graph g = k55::graphs::graph6_decode(g6);
        Json j;
        j["graph6"] = g6;
        j["dim"] = rank_o.dim;
        j["edge_count"] = g.edge_count();
        j["generic_rank"] =
            k55::rigidity::generic_rank(g, rank_o.dim, rank_o.seed, rank_o.trials, rank_o.prime);
        j["maxwell_bound"] =
            k55::rigidity::maxwell_bound(g.vertex_count(), rank_o.dim, g.edge_count());
        j["seed"] = rank_o.seed;
        j["prime"] = rank_o.prime;
        os << j.dump() << "\n";
      }
      return 0;
    }

    if (circuit_cmd->parsed()) {
      std::ostream& os = open_out(circuit_o, file);
      for (const auto& g6 : gather_graphs(circuit_o)) {
        Graph g = k55::graphs::graph6_decode(g6);
        auto res =
            k55::rigidity::is_circuit(g, circuit_o.dim, circuit_o.seed, circuit_o.trials,
                                      circuit_o.prime);
        Json j;
        j["graph6"] = g6;
        j["dim"] = circuit_o.dim;
        j["is_circuit"] = res.is_circuit;
        j["level"] = res.certified ? "certified" : "probabilistic";
        j["seed"] = circuit_o.seed;
        os << j.dump() << "\n";
      }
      return 0;
    }

    if (stress_cmd->parsed()) {
      std::ostream& os = open_out(stress_o, file);
      Graph g = k55::graphs::graph6_decode(stress_o.graph6);
      Json j;
      j["graph6"] = stress_o.graph6;
      j["dim"] = stress_o.dim;
      j["config_seed"] = stress_o.seed;
      Rng rng(stress_o.seed);
      if (stress_rational) {
        auto cfg = k55::rigidity::random_int_configuration(g.vertex_count(), stress_o.dim, rng);
        auto basis = k55::rigidity::stress_basis(g, cfg);
        j["field"] = "rational";
        j["rank"] = g.edge_count() - static_cast<int>(basis.size());
        j["stress_dim"] = basis.size();
        Json stresses = Json::array(), sums = Json::array();
        for (const auto& s : basis) {
          Json w = Json::array();
          for (const auto& x : s.weights()) w.push_back(k55::linalg::to_string(x));
          stresses.push_back(w);
          sums.push_back(k55::linalg::to_string(k55::rigidity::stress_sum(s)));
        }
        j["stresses"] = stresses;
        j["stress_sums"] = sums;
      } else {
        auto cfg = k55::rigidity::random_fp_configuration(g.vertex_count(), stress_o.dim, rng,
                                                          stress_o.prime);
        auto basis = k55::rigidity::stress_basis(g, cfg);
        j["field"] = "fp";
        j["prime"] = stress_o.prime;
        j["rank"] = g.edge_count() - static_cast<int>(basis.size());
        j["stress_dim"] = basis.size();
        Json stresses = Json::array(), sums = Json::array();
        for (const auto& s : basis) {
          Json w = Json::array();
          for (const auto& x : s.weights()) w.push_back(std::to_string(x.value()));
          stresses.push_back(w);
          sums.push_back(std::to_string(k55::rigidity::stress_sum(s).value()));
        }
        j["stresses"] = stresses;
        j["stress_sums"] = sums;
      }
      os << j.dump() << "\n";
      return 0;
    }

    if (cmpoly_cmd->parsed()) {
      std::ostream& os = open_out(cmpoly_o, file);
      const auto f = k55::cm::expand_determinant(k55::cm::build_bordered_matrix());
      Json arr = Json::array();
      for (const auto& [mono, coeff] : f.terms()) {
        Json term;
        Json vars = Json::array();
        for (auto v : mono) vars.push_back(k55::cm::variable_name(v));
        term["monomial"] = vars;
        term["coefficient"] = coeff.get_str();
        arr.push_back(term);
      }
      os << arr.dump() << "\n";
      return 0;
    }

    if (prop1_cmd->parsed()) {
      std::ostream& os = open_out(prop1_o, file);
      return emit_report(k55::pipeline::run_prop1_checks(prop1_o.seed), os, "prop1");
    }

    if (lemmabr_cmd->parsed()) {
      std::ostream& os = open_out(lemmabr_o, file);
      return emit_report(k55::pipeline::run_lemma_br_checks(lemmabr_o.seed, lemmabr_samples), os,
                         "lemma-br");
    }

    if (prop2_cmd->parsed()) {
      std::ostream& os = open_out(prop2_o, file);
      auto lines = pipeline_input(prop2_o, 10, 25, 4);
      auto cfg = to_config(prop2_o);
      cfg.rank_only = prop2_rank_only;
      auto res = k55::pipeline::run_prop2(cfg, lines);
      for (const auto& line : res.lines) os << line << "\n";
      return res.exit_code;
    }

    if (prop3_cmd->parsed()) {
      std::ostream& os = open_out(prop3_o, file);
      std::vector<std::string> lines;
      if (!prop3_o.input.empty()) {
        lines = k55::pipeline::read_graph6_lines(prop3_o.input, prop3_o.limit);
      } else if (!prop3_o.geng_path.empty()) {
        // the candidate set spans 11 and 12 vertices
        lines = k55::pipeline::stream_from_geng(prop3_o.geng_path, 11, 25, 4, 1,
                                                prop3_o.limit);
        auto more = k55::pipeline::stream_from_geng(prop3_o.geng_path, 12, 25, 4, 1,
                                                    prop3_o.limit);
        lines.insert(lines.end(), more.begin(), more.end());
      } else {
        throw std::runtime_error(
            "no input source: pass --input <graph6 file> (pre-generate one with the genstream "
            "tool) or --geng-path <binary>");
      }
      auto res = k55::pipeline::run_prop3(to_config(prop3_o), lines);
      for (const auto& line : res.lines) os << line << "\n";
      return res.exit_code;
    }

    if (verify_cmd->parsed()) {
      std::ostream& os = open_out(verify_o, file);
      if (!verify_line.empty()) {
        const std::string err = k55::pipeline::verify_verdict_line(verify_line, verify_exact);
        os << (err.empty() ? "verify: ok" : "verify: FAIL: " + err) << "\n";
        return err.empty() ? 0 : 1;
      }
      if (verify_o.input.empty())
        throw std::runtime_error("pass a verdict line or --in <jsonl file>");
      std::ifstream in(verify_o.input);
      if (!in) throw std::runtime_error("cannot open " + verify_o.input);
      std::vector<std::string> verdicts;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        if (!j.is_discarded() && j.contains("verdict") &&
            j.at("verdict").get<std::string>() != "UNRESOLVED")
          verdicts.push_back(line);
      }
      std::vector<std::size_t> order(verdicts.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      if (verify_sample && verify_sample < order.size()) {
        Rng rng(verify_seed);
        for (std::size_t i = order.size() - 1; i > 0; --i)
          std::swap(order[i], order[rng.below(i + 1)]);
        order.resize(verify_sample);
      }
      std::size_t failures = 0;
      for (std::size_t i : order) {
        const std::string err = k55::pipeline::verify_verdict_line(verdicts[i], verify_exact);
        if (!err.empty()) {
          ++failures;
          os << "FAIL line " << i << ": " << err << "\n" << verdicts[i] << "\n";
        }
      }
      os << "verify: checked " << order.size() << " verdict lines, " << failures
         << " failures\n";
      return failures == 0 ? 0 : 1;
    }

    if (selftest_cmd->parsed()) {
      std::ostream& os = open_out(selftest_o, file);
      int rc = emit_report(k55::pipeline::run_prop1_checks(selftest_o.seed), os, "prop1");
      rc |= emit_report(k55::pipeline::run_lemma_br_checks(selftest_o.seed, 3), os, "lemma-br");
      bool counts_ok = true;
      std::size_t c = 0;
      k55::graphs::enumerate_small(4, {}, [&](const Graph&) { ++c; });
      counts_ok &= c == 11;
      auto circ = k55::rigidity::is_circuit(Graph::complete_bipartite(5, 5), 3, selftest_o.seed);
      counts_ok &= circ.is_circuit && circ.certified;
      os << "selftest core: " << (counts_ok ? "pass" : "FAIL") << "\n";
      rc |= counts_ok ? 0 : 1;
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
