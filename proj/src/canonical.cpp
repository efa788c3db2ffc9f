#include "k55/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace k55::graphs {

namespace {

constexpr int kMaxN = 16;

struct UnionFind {
  std::array<int, kMaxN> parent;

  void init(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Ordered partition of 0..n-1: `order` is the vertex sequence, bit i of
// `starts` marks that a cell begins at position i (bit 0 always set).
struct Partition {
  std::array<int, kMaxN> order;
  std::uint32_t starts;
};

struct Canonizer {
  int n = 0;
  std::array<std::uint64_t, kMaxN> adj{};

  bool have_best = false;
  std::uint64_t best_hi = 0, best_lo = 0;
  std::array<int, kMaxN> best_order{};
  UnionFind orbits;
  std::vector<std::vector<int>> generators;

  int cell_end(const Partition& p, int i) const {
    const std::uint32_t later = p.starts & ~((std::uint32_t{2} << i) - 1);
    return later ? std::countr_zero(later) : n;
  }

  // Equitable refinement: split cells by neighbor counts into each cell,
  // fragments ordered by ascending count, until stable. Count-based and
  // order-based only, hence isomorphism-invariant.
  void refine(Partition& p) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (int s = 0; s < n && !changed; s = cell_end(p, s)) {
        const int s_end = cell_end(p, s);
        std::uint64_t splitter = 0;
        for (int i = s; i < s_end; ++i) splitter |= std::uint64_t{1} << p.order[i];
        for (int d = 0; d < n; d = cell_end(p, d)) {
          const int d_end = cell_end(p, d);
          if (d_end - d < 2) continue;
          std::array<int, kMaxN> cnt{};
          bool differ = false;
          for (int i = d; i < d_end; ++i) {
            cnt[p.order[i]] = std::popcount(adj[p.order[i]] & splitter);
            if (cnt[p.order[i]] != cnt[p.order[d]]) differ = true;
          }
          if (!differ) continue;
          std::stable_sort(p.order.begin() + d, p.order.begin() + d_end,
                           [&](int a, int b) { return cnt[a] < cnt[b]; });
          for (int i = d + 1; i < d_end; ++i)
            if (cnt[p.order[i]] != cnt[p.order[i - 1]]) p.starts |= std::uint32_t{1} << i;
          changed = true;
          break;
        }
      }
    }
  }

  void leaf(const Partition& p) {
    std::uint64_t hi = 0, lo = 0;
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k)
        if ((adj[p.order[i]] >> p.order[j]) & 1) {
          if (k < 64)
            hi |= std::uint64_t{1} << (63 - k);
          else
            lo |= std::uint64_t{1} << (127 - k);
        }
    if (!have_best || hi > best_hi || (hi == best_hi && lo > best_lo)) {
      have_best = true;
      best_hi = hi;
      best_lo = lo;
      best_order = p.order;
    } else if (hi == best_hi && lo == best_lo) {
      // Same canonical image from two orderings: an automorphism.
      std::vector<int> sigma(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(best_order[i])] = p.order[i];
      bool fresh = false;
      for (int v = 0; v < n; ++v) fresh |= orbits.unite(v, sigma[static_cast<std::size_t>(v)]);
      if (fresh) generators.push_back(std::move(sigma));
    }
  }

  void dfs(const Partition& p) {
    int t = -1, t_end = -1;
    for (int i = 0; i < n; i = cell_end(p, i)) {
      const int e = cell_end(p, i);
      if (e - i > 1) {
        t = i;
        t_end = e;
        break;
      }
    }
    if (t < 0) {
      leaf(p);
      return;
    }
    std::array<int, kMaxN> targets{};
    const int nt = t_end - t;
    for (int i = 0; i < nt; ++i) targets[i] = p.order[t + i];
    std::array<int, kMaxN> branched{};
    int nb = 0;
    for (int bi = 0; bi < nt; ++bi) {
      const int v = targets[bi];
      bool pruned = false;
      for (int j = 0; j < nb && !pruned; ++j)
        if (orbits.find(branched[j]) == orbits.find(v)) pruned = true;
      if (pruned) continue;
      branched[nb++] = v;
      Partition child = p;
      int pos = t;
      while (child.order[pos] != v) ++pos;
      while (pos > t) {
        child.order[pos] = child.order[pos - 1];
        --pos;
      }
      child.order[t] = v;
      child.starts |= std::uint32_t{1} << (t + 1);
      refine(child);
      dfs(child);
    }
  }

  void run() {
    orbits.init(n);
    if (n == 0) {
      have_best = true;
      return;
    }
    Partition p;
    for (int i = 0; i < n; ++i) p.order[i] = i;
    p.starts = 1;
    refine(p);
    dfs(p);
  }
};

Canonizer make_canonizer(const std::uint64_t* adj, int n) {
  if (n > kMaxN) throw std::invalid_argument("canonicalize: supports n <= 16 only");
  if (n < 0) throw std::invalid_argument("canonicalize: negative n");
  Canonizer cz;
  cz.n = n;
  for (int v = 0; v < n; ++v) cz.adj[v] = adj[v];
  return cz;
}

}  // namespace

CanonicalResult canonicalize(const Graph& g) {
  const int n = g.vertex_count();
  std::array<std::uint64_t, kMaxN> adj{};
  for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  Canonizer cz = make_canonizer(adj.data(), n);
  cz.run();
  CanonicalResult res;
  res.canonical_order.assign(cz.best_order.begin(), cz.best_order.begin() + n);
  res.key = CanonicalKey{cz.best_hi, cz.best_lo};
  res.generators = std::move(cz.generators);
  res.orbit.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) res.orbit[static_cast<std::size_t>(v)] = cz.orbits.find(v);
  return res;
}

CanonicalKey canonical_key_masks(const std::uint64_t* adj, int n) {
  Canonizer cz = make_canonizer(adj, n);
  cz.run();
  return CanonicalKey{cz.best_hi, cz.best_lo};
}

CanonicalKey canonical_key(const Graph& g) {
  std::array<std::uint64_t, kMaxN> adj{};
  const int n = g.vertex_count();
  if (n > kMaxN) throw std::invalid_argument("canonical_key: supports n <= 16 only");
  for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  return canonical_key_masks(adj.data(), n);
}

bool is_isomorphic_to(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) return false;
  if (g.edge_count() != h.edge_count()) return false;
  std::vector<int> dg, dh;
  for (int v = 0; v < g.vertex_count(); ++v) {
    dg.push_back(g.degree(v));
    dh.push_back(h.degree(v));
  }
  std::sort(dg.begin(), dg.end());
  std::sort(dh.begin(), dh.end());
  if (dg != dh) return false;
  return canonical_key(g) == canonical_key(h);
}

}  // namespace k55::graphs
