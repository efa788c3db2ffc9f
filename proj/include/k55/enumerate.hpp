#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "k55/graph.hpp"

namespace k55::graphs {

struct EnumerationFilters {
  std::optional<int> edge_count;  // exact
  std::optional<int> min_degree;
  int connectivity = 0;  // 0 none, 1 connected, 2 biconnected
};

// Exactly one representative per isomorphism class on n vertices satisfying
// the filters, in a deterministic (canonical-key) order. Capped at n <= 8;
// larger instances must come from an external generator stream (geng) or a
// pre-generated graph6 file.
void enumerate_small(int n, const EnumerationFilters& filters,
                     const std::function<void(const Graph&)>& emit);

// The engine under enumerate_small and the stream generator tool:
// isomorph-free exhaustive generation by vertex augmentation with
// canonical-form dedup at every level. Pruning uses the final edge budget
// and degree bounds, so tight near-regular targets stay tractable.
struct GenerateSpec {
  int n = 0;
  int edges_lo = 0;
  int edges_hi = -1;  // -1: no upper bound
  int min_degree = 0;
  int connectivity = 0;  // as above
};

struct GenerateStats {
  std::uint64_t children_constructed = 0;
  std::uint64_t emitted = 0;
};

GenerateStats generate_graphs(
    const GenerateSpec& spec, const std::function<void(const Graph&)>& emit,
    const std::function<void(int level, std::size_t representatives)>& progress = {});

}  // namespace k55::graphs
