#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "k55/graph.hpp"

namespace k55::graphs {

// Canonical adjacency bits (pairs (i, j), i < j, row-major, MSB-first),
// enough for n <= 16.
struct CanonicalKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
    return a.hi == b.hi && a.lo == b.lo;
  }
  friend bool operator!=(const CanonicalKey& a, const CanonicalKey& b) { return !(a == b); }
  friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::uint64_t x = k.hi * 0x9e3779b97f4a7c15ULL ^ k.lo;
    x ^= x >> 29;
    x *= 0xbf58476d1ce4e5b9ULL;
    return static_cast<std::size_t>(x ^ (x >> 32));
  }
};

struct CanonicalResult {
  std::vector<int> canonical_order;              // position -> original vertex
  CanonicalKey key;
  std::vector<std::vector<int>> generators;      // discovered automorphisms
  std::vector<int> orbit;                        // orbit representative per vertex
};

// Canonical labeling by equitable refinement plus individualization with
// backtracking; automorphisms discovered along the way prune the search.
// Requires n <= 16.
CanonicalResult canonicalize(const Graph& g);

CanonicalKey canonical_key(const Graph& g);

// Key computation on raw adjacency masks (hot path for the enumerator).
CanonicalKey canonical_key_masks(const std::uint64_t* adj, int n);

// Vertex bijection mapping edges onto edges? Degree-sequence prefilter,
// then canonical-form comparison. Size mismatch is false, not an error.
bool is_isomorphic_to(const Graph& g, const Graph& h);

}  // namespace k55::graphs
