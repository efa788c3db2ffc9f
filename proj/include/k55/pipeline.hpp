#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "k55/fp.hpp"

namespace k55::pipeline {

using Json = nlohmann::ordered_json;

struct PipelineConfig {
  int dim = 3;  // both pipelines are specific to dimension 3
  std::uint64_t prime = linalg::Fp::kMersenne61;
  std::uint64_t seed = 0;
  int trials = 3;
  std::size_t limit = 0;  // 0: unlimited
  int jobs = 1;
  bool rank_only = false;  // stop after the rank filter, skip stress tests
  std::string input_label;  // echoed in the output header
};

struct RunResult {
  std::vector<std::string> lines;  // header, one line per input, summary
  Json summary;
  int exit_code = 0;
};

// Balanced-stress search over 10-vertex 25-edge graphs: rank filter at a
// shared random configuration, combinatorial certificates for the rank
// failures, stress-sum test for the rank-24 class, exact rational
// confirmation for any balanced claim.
RunResult run_prop2(const PipelineConfig& cfg, const std::vector<std::string>& graph6_lines);

// No-circuit certification over 11/12-vertex 25-edge graphs: stress-free
// certificates, then K5 subgraphs, then dense 6-vertex subgraphs; anything
// surviving all three stages fails the run.
RunResult run_prop3(const PipelineConfig& cfg, const std::vector<std::string>& graph6_lines);

struct CheckReport {
  std::vector<std::pair<std::string, bool>> checks;

  bool all_passed() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

// Bordered-determinant checks: expansion cross-check, monomial support,
// vanishing/non-vanishing evaluations, automorphism action, gradient vs
// stress proportionality.
CheckReport run_prop1_checks(std::uint64_t seed);

// Unique balanced stress at seeded regular rational configurations.
CheckReport run_lemma_br_checks(std::uint64_t seed, int samples = 10);

// Re-validates one verdict line from scratch; returns an empty string on
// success, else the failure reason. With `exact`, prime-field certificates
// are additionally recomputed over the rationals.
std::string verify_verdict_line(const std::string& line, bool exact);

// Input plumbing. Both throw std::runtime_error with remediation text.
// connectivity: 1 asks geng for connected graphs (-c), 2 for biconnected (-C).
std::vector<std::string> read_graph6_lines(const std::string& path, std::size_t limit);
std::vector<std::string> stream_from_geng(const std::string& geng_path, int n, int edges,
                                          int min_degree, int connectivity, std::size_t limit);

// Seed for the configuration used on retry `attempt` of a graph; attempt 0
// is the run-wide shared configuration.
std::uint64_t config_seed_for(std::uint64_t run_seed, const std::string& graph6, int attempt);

}  // namespace k55::pipeline
