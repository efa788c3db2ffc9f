#pragma once

#include <string>
#include <string_view>

#include "k55/graph.hpp"

namespace k55::graphs {

// graph6 short form (n <= 62), bit-exact per the nauty format description.
// Bit k of the edge vector is pair (i, j), 0 <= i < j, k = j(j-1)/2 + i;
// bits are packed big-endian into 6-bit groups offset by 63.

std::string graph6_encode(const Graph& g);

// Strict decode: rejects long-form headers, out-of-range bytes, truncated
// input, trailing bytes and nonzero padding, naming the byte offset.
Graph graph6_decode(std::string_view text);

}  // namespace k55::graphs
