#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k55::graphs {

// Simple undirected labeled graph, vertices 0..n-1, n <= 62 (the graph6
// short-form range). The edge list is the canonical edge ordering used by
// every measurement and stress vector in the project: pairs (u, v) with
// u < v, sorted lexicographically, duplicate-free. For K_{5,5} with parts
// {0..4} / {5..9} this is exactly d_05, d_06, ..., d_49.
class Graph {
 public:
  static constexpr int kMaxVertices = 62;

  Graph() : n_(0) {}
  Graph(int n, std::vector<std::pair<int, int>> edges);

  static Graph complete(int n);
  static Graph complete_bipartite(int a, int b);
  static Graph cycle(int n);
  static Graph path(int n);
  // Hub vertex 0 joined to a cycle on 1..rim.
  static Graph wheel(int rim);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1; }
  std::uint64_t neighbors(int v) const { return adj_[v]; }
  int degree(int v) const;
  int min_degree() const;

  // Index of (u, v) in the canonical edge ordering; throws if absent.
  int edge_index(int u, int v) const;

  Graph without_edge(std::size_t edge_idx) const;

  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adj_;
};

// Minimum vertex degree; 0 if an isolated vertex exists.
int min_degree(const Graph& g);

// True iff no vertex set of size < k disconnects g (and g is connected).
// Exhaustive over removal sets; k in {2, 3}, n >= k+1 required.
bool is_k_connected(const Graph& g, int k);

// True iff some 5-subset induces all 10 edges.
bool has_k5_subgraph(const Graph& g);

// First (lexicographically) k-subset inducing >= 3k-5 edges, if any. Such a
// subgraph is dependent in the 3-dimensional rigidity matroid.
std::optional<std::vector<int>> dense_subgraph_witness(const Graph& g, int k);

// Number of edges induced by the vertex set `mask`.
int induced_edge_count(const Graph& g, std::uint64_t mask);

}  // namespace k55::graphs
