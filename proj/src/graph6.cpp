#include "k55/graph6.hpp"

#include <stdexcept>
#include <vector>

namespace k55::graphs {

namespace {

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
  throw std::invalid_argument("graph6: " + what + " at byte " + std::to_string(offset));
}

}  // namespace

std::string graph6_encode(const Graph& g) {
  const int n = g.vertex_count();
  if (n > Graph::kMaxVertices)
    throw std::invalid_argument("graph6_encode: only the short form (n <= 62) is supported");
  std::string out;
  out.push_back(static_cast<char>(63 + n));
  const int nbits = n * (n - 1) / 2;
  int acc = 0, used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        used = 0;
      }
    }
  }
  if (nbits % 6 != 0) out.push_back(static_cast<char>(63 + (acc << (6 - used))));
  return out;
}

Graph graph6_decode(std::string_view text) {
  if (text.empty()) fail("empty input", 0);
  const unsigned char head = static_cast<unsigned char>(text[0]);
  if (head == 126) fail("long-form header not supported", 0);
  if (head < 63 || head > 125) fail("header byte out of range", 0);
  const int n = head - 63;
  const int nbits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((nbits + 5) / 6);
  if (text.size() < 1 + need) fail("truncated edge data", text.size());
  if (text.size() > 1 + need) fail("trailing bytes after edge data", 1 + need);

  std::vector<std::pair<int, int>> edges;
  int k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const std::size_t byte_at = 1 + static_cast<std::size_t>(k / 6);
      const unsigned char b = static_cast<unsigned char>(text[byte_at]);
      if (b < 63 || b > 126) fail("edge byte out of range", byte_at);
      if ((b - 63) >> (5 - k % 6) & 1) edges.emplace_back(i, j);
    }
  }
  // padding bits of the final byte must be zero
  for (; k % 6 != 0; ++k) {
    const std::size_t byte_at = 1 + static_cast<std::size_t>(k / 6);
    const unsigned char b = static_cast<unsigned char>(text[byte_at]);
    if (b < 63 || b > 126) fail("edge byte out of range", byte_at);
    if ((b - 63) >> (5 - k % 6) & 1) fail("nonzero padding bit", byte_at);
  }
  return Graph(n, std::move(edges));
}

}  // namespace k55::graphs
