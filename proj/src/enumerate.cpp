#include "k55/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "k55/canonical.hpp"

namespace k55::graphs {

namespace {

struct LevelEntry {
  CanonicalKey key;
  std::array<std::uint16_t, 16> rows;
};

Graph to_graph(const std::array<std::uint16_t, 16>& rows, int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if ((rows[u] >> v) & 1) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

}  // namespace

// Level k holds one canonical representative of every isomorphism class on
// k vertices that can still extend to a graph meeting the final spec. The
// pruning bounds are all hereditary under vertex deletion, which is what
// makes the level sets complete: any admissible final graph minus any
// vertex still passes them, so a representative of every needed class
// survives at every level.
GenerateStats generate_graphs(
    const GenerateSpec& spec, const std::function<void(const Graph&)>& emit,
    const std::function<void(int level, std::size_t representatives)>& progress) {
  const int n = spec.n;
  if (n < 1 || n > 14) throw std::invalid_argument("generate_graphs: need 1 <= n <= 14");
  const int max_edges = n * (n - 1) / 2;
  const int edges_hi = spec.edges_hi < 0 ? max_edges : std::min(spec.edges_hi, max_edges);
  const int edges_lo = std::max(0, spec.edges_lo);
  GenerateStats stats;
  if (edges_lo > edges_hi) return stats;
  const int min_deg = std::max(0, spec.min_degree);
  if (min_deg > n - 1) return stats;

  // Degree headroom over the whole graph: sum of (deg - min_deg) is exactly
  // 2|E| - min_deg * n in any admissible final graph, and only shrinks when
  // vertices are deleted.
  const long budget_long = 2L * edges_hi - static_cast<long>(min_deg) * n;
  if (budget_long < 0) return stats;
  const int excess_budget = static_cast<int>(std::min(budget_long, 2L * max_edges));
  const int maxdeg_cap = std::min(n - 1, min_deg + excess_budget);

  // max_addable[k]: most edges vertices k..n-1 can still contribute.
  std::array<int, 16> max_addable{};
  max_addable[n] = 0;
  for (int k = n - 1; k >= 0; --k)
    max_addable[k] = max_addable[k + 1] + std::min(k, maxdeg_cap);

  std::vector<LevelEntry> level;
  {
    if (max_addable[1] < edges_lo) return stats;
    LevelEntry seed{};
    std::uint64_t adj0 = 0;
    seed.key = canonical_key_masks(&adj0, 1);
    level.push_back(seed);
  }

  for (int k = 1; k < n; ++k) {
    std::vector<LevelEntry> next;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    const int r_child = n - (k + 1);  // vertices still to come after this one
    for (const LevelEntry& ent : level) {
      std::array<int, 16> deg{};
      int deg_sum = 0;
      for (int v = 0; v < k; ++v) {
        deg[v] = std::popcount(static_cast<unsigned>(ent.rows[v]));
        deg_sum += deg[v];
      }
      const int e = deg_sum / 2;

      // Vertices at the floor of the hereditary degree bound must be
      // adjacent to the new vertex; vertices at the cap must not be.
      std::uint32_t required = 0, allowed = 0;
      for (int v = 0; v < k; ++v) {
        if (deg[v] == min_deg - (n - k)) required |= std::uint32_t{1} << v;
        if (deg[v] < maxdeg_cap) allowed |= std::uint32_t{1} << v;
      }
      if ((required & ~allowed) != 0) continue;
      const int req_cnt = std::popcount(required);
      const int lo_sz = std::max({0, min_deg - r_child, edges_lo - e - max_addable[k + 1]});
      const int hi_sz = std::min({k, maxdeg_cap, edges_hi - e});
      if (req_cnt > hi_sz || lo_sz > hi_sz) continue;

      const std::uint32_t extra_pool = allowed & ~required;
      for (std::uint32_t sub = extra_pool;; sub = (sub - 1) & extra_pool) {
        const int sz = req_cnt + std::popcount(sub);
        if (sz >= lo_sz && sz <= hi_sz) {
          const std::uint32_t s = required | sub;
          int excess = std::max(0, sz - min_deg);
          for (int v = 0; v < k; ++v)
            excess += std::max(0, deg[v] + static_cast<int>((s >> v) & 1) - min_deg);
          if (excess <= excess_budget) {
            LevelEntry child;
            child.rows = ent.rows;
            child.rows[k] = static_cast<std::uint16_t>(s);
            for (std::uint32_t m = s; m;) {
              const int v = std::countr_zero(m);
              m &= m - 1;
              child.rows[v] = static_cast<std::uint16_t>(child.rows[v] | (1u << k));
            }
            ++stats.children_constructed;
            std::array<std::uint64_t, 16> adj64{};
            for (int v = 0; v <= k; ++v) adj64[v] = child.rows[v];
            child.key = canonical_key_masks(adj64.data(), k + 1);
            if (seen.insert(child.key).second) next.push_back(child);
          }
        }
        if (sub == 0) break;
      }
    }
    std::sort(next.begin(), next.end(),
              [](const LevelEntry& a, const LevelEntry& b) { return a.key < b.key; });
    level = std::move(next);
    if (progress) progress(k + 1, level.size());
  }

  for (const LevelEntry& ent : level) {
    Graph g = to_graph(ent.rows, n);
    if (g.edge_count() < edges_lo || g.edge_count() > edges_hi) continue;
    if (g.min_degree() < min_deg) continue;
    if (spec.connectivity == 1 && !g.is_connected()) continue;
    if (spec.connectivity == 2 && (n < 3 || !is_k_connected(g, 2))) continue;
    ++stats.emitted;
    emit(g);
  }
  return stats;
}

void enumerate_small(int n, const EnumerationFilters& filters,
                     const std::function<void(const Graph&)>& emit) {
  if (n < 1) throw std::invalid_argument("enumerate_small: need n >= 1");
  if (n > 8)
    throw std::invalid_argument(
        "enumerate_small: capped at n <= 8; use an external generator (geng) "
        "stream or a pre-generated graph6 file for larger n");
  GenerateSpec spec;
  spec.n = n;
  if (filters.edge_count) {
    spec.edges_lo = *filters.edge_count;
    spec.edges_hi = *filters.edge_count;
  }
  spec.min_degree = filters.min_degree.value_or(0);
  spec.connectivity = filters.connectivity;
  generate_graphs(spec, emit);
}

}  // namespace k55::graphs
