#include "k55/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace k55::graphs {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("Graph: vertex count out of range");
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: loop edge");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw std::invalid_argument("Graph: vertex index out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("Graph: duplicate edge");
  edges_ = std::move(edges);
  adj_.assign(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges_) {
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
  }
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph Graph::complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) e.emplace_back(u, v);
  return Graph(a + b, std::move(e));
}

Graph Graph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, std::move(e));
}

Graph Graph::wheel(int rim) {
  if (rim < 3) throw std::invalid_argument("wheel: need rim >= 3");
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v <= rim; ++v) {
    e.emplace_back(0, v);
    e.emplace_back(v, v == rim ? 1 : v + 1);
  }
  return Graph(rim + 1, std::move(e));
}

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::min_degree() const {
  int best = n_ == 0 ? 0 : n_;
  for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair<int, int>{u, v});
  if (it == edges_.end() || *it != std::pair<int, int>{u, v})
    throw std::invalid_argument("edge_index: no such edge");
  return static_cast<int>(it - edges_.begin());
}

Graph Graph::without_edge(std::size_t edge_idx) const {
  if (edge_idx >= edges_.size()) throw std::out_of_range("without_edge: bad index");
  auto e = edges_;
  e.erase(e.begin() + static_cast<std::ptrdiff_t>(edge_idx));
  return Graph(n_, std::move(e));
}

namespace {

// Vertices reachable from `start` staying inside `allowed`.
std::uint64_t reachable(const Graph& g, int start, std::uint64_t allowed) {
  std::uint64_t seen = std::uint64_t{1} << start;
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= g.neighbors(v) & allowed & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool connected_within(const Graph& g, std::uint64_t allowed) {
  if (allowed == 0) return false;
  int start = std::countr_zero(allowed);
  return reachable(g, start, allowed) == allowed;
}

}  // namespace

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::uint64_t all = (n_ == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  return connected_within(*this, all);
}

int min_degree(const Graph& g) { return g.min_degree(); }

bool is_k_connected(const Graph& g, int k) {
  if (k < 2 || k > 3) throw std::invalid_argument("is_k_connected: k must be 2 or 3");
  const int n = g.vertex_count();
  if (n <= k) throw std::invalid_argument("is_k_connected: need n >= k+1");
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  if (!connected_within(g, all)) return false;
  for (int u = 0; u < n; ++u) {
    if (!connected_within(g, all & ~(std::uint64_t{1} << u))) return false;
    if (k < 3) continue;
    for (int v = u + 1; v < n; ++v) {
      std::uint64_t rest = all & ~(std::uint64_t{1} << u) & ~(std::uint64_t{1} << v);
      if (!connected_within(g, rest)) return false;
    }
  }
  return true;
}

int induced_edge_count(const Graph& g, std::uint64_t mask) {
  int twice = 0;
  std::uint64_t m = mask;
  while (m) {
    int v = std::countr_zero(m);
    m &= m - 1;
    twice += std::popcount(g.neighbors(v) & mask);
  }
  return twice / 2;
}

bool has_k5_subgraph(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 5) return false;
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) >= 4) cand.push_back(v);
  const int c = static_cast<int>(cand.size());
  if (c < 5) return false;
  for (int a = 0; a < c; ++a)
    for (int b = a + 1; b < c; ++b) {
      if (!g.has_edge(cand[a], cand[b])) continue;
      for (int d = b + 1; d < c; ++d) {
        if (!g.has_edge(cand[a], cand[d]) || !g.has_edge(cand[b], cand[d])) continue;
        for (int e = d + 1; e < c; ++e) {
          if (!g.has_edge(cand[a], cand[e]) || !g.has_edge(cand[b], cand[e]) ||
              !g.has_edge(cand[d], cand[e]))
            continue;
          for (int f = e + 1; f < c; ++f) {
            if (g.has_edge(cand[a], cand[f]) && g.has_edge(cand[b], cand[f]) &&
                g.has_edge(cand[d], cand[f]) && g.has_edge(cand[e], cand[f]))
              return true;
          }
        }
      }
    }
  return false;
}

std::optional<std::vector<int>> dense_subgraph_witness(const Graph& g, int k) {
  const int n = g.vertex_count();
  if (k < 4 || k > n) throw std::invalid_argument("dense_subgraph_witness: need 4 <= k <= n");
  const int threshold = 3 * k - 5;
  // lexicographically first k-subset, via the standard combination walk
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint64_t mask = 0;
    for (int v : idx) mask |= std::uint64_t{1} << v;
    if (induced_edge_count(g, mask) >= threshold) return idx;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return std::nullopt;
}

}  // namespace k55::graphs
