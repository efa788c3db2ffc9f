#include "k55/rigidity.hpp"

#include <algorithm>

namespace k55::rigidity {

int maxwell_bound(int n, int dim, int edge_count) {
  if (n < dim + 1) return edge_count;
  const long ambient = static_cast<long>(dim) * n - static_cast<long>(dim) * (dim + 1) / 2;
  return static_cast<int>(std::min<long>(edge_count, ambient));
}

Configuration<Fp> random_fp_configuration(int n, int dim, Rng& rng, std::uint64_t prime) {
  Configuration<Fp> cfg;
  cfg.dim = dim;
  cfg.points.resize(static_cast<std::size_t>(n));
  for (auto& pt : cfg.points) {
    pt.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) pt.emplace_back(rng.below(prime), prime);
  }
  return cfg;
}

Configuration<Rational> random_int_configuration(int n, int dim, Rng& rng, long bound) {
  Configuration<Rational> cfg;
  cfg.dim = dim;
  cfg.points.resize(static_cast<std::size_t>(n));
  for (auto& pt : cfg.points) {
    pt.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) pt.emplace_back(rng.int_in(-bound, bound));
  }
  return cfg;
}

int generic_rank(const graphs::Graph& g, int dim, std::uint64_t seed, int trials,
                 std::uint64_t prime) {
  if (trials < 1) throw std::invalid_argument("generic_rank: need trials >= 1");
  Rng rng(seed);
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    Configuration<Fp> cfg = random_fp_configuration(g.vertex_count(), dim, rng, prime);
    best = std::max(best, static_cast<int>(linalg::rank(rigidity_matrix(g, cfg))));
  }
  const int bound = maxwell_bound(g.vertex_count(), dim, g.edge_count());
  if (best > bound) throw std::logic_error("generic_rank: rank exceeds the Maxwell bound");
  return best;
}

CircuitResult is_circuit(const graphs::Graph& g, int dim, std::uint64_t seed, int trials,
                         std::uint64_t prime) {
  if (g.edge_count() < 1) throw std::invalid_argument("is_circuit: need at least one edge");
  CircuitResult res;
  const int m = g.edge_count();
  if (generic_rank(g, dim, seed, trials, prime) != m - 1) return res;
  for (int e = 0; e < m; ++e) {
    // deleting any single edge must leave an independent set of rows
    if (generic_rank(g.without_edge(static_cast<std::size_t>(e)), dim, seed, trials, prime) !=
        m - 1)
      return res;
  }
  res.is_circuit = true;

  // Dependence is certified when a counting bound forces it; the deletions
  // were already witnessed independent at explicit configurations.
  const int n = g.vertex_count();
  const long ambient = static_cast<long>(dim) * n - static_cast<long>(dim) * (dim + 1) / 2;
  bool dependent_by_count = n >= dim + 1 && m > ambient;
  if (!dependent_by_count && dim == 3) {
    for (int k = 4; k <= g.vertex_count() && !dependent_by_count; ++k)
      if (graphs::dense_subgraph_witness(g, k)) dependent_by_count = true;
  }
  res.certified = dependent_by_count;
  return res;
}

namespace {

// det of the 4x4 affine matrix (rows: 1, x, y, z) for a 4-subset.
bool affinely_independent(const Configuration<Rational>& p, int a, int b, int c, int d) {
  Matrix<Rational> m(4, 4, Rational(0));
  const int idx[4] = {a, b, c, d};
  for (int r = 0; r < 4; ++r) {
    m(static_cast<std::size_t>(r), 0) = 1;
    for (int k = 0; k < 3; ++k)
      m(static_cast<std::size_t>(r), static_cast<std::size_t>(k + 1)) = p.points[idx[r]][k];
  }
  return !linalg::is_zero(linalg::determinant(m));
}

}  // namespace

bool in_affine_general_position(const Configuration<Rational>& p) {
  if (p.vertex_count() != 10 || p.dim != 3)
    throw std::invalid_argument("in_affine_general_position: need 10 points in dimension 3");
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b)
      for (int c = b + 1; c < 10; ++c)
        for (int d = c + 1; d < 10; ++d)
          if (!affinely_independent(p, a, b, c, d)) return false;
  return true;
}

bool lies_on_quadric(const Configuration<Rational>& p) {
  if (p.vertex_count() != 10 || p.dim != 3)
    throw std::invalid_argument("lies_on_quadric: need 10 points in dimension 3");
  Matrix<Rational> m(10, 10, Rational(0));
  for (std::size_t r = 0; r < 10; ++r) {
    const Rational& x = p.points[r][0];
    const Rational& y = p.points[r][1];
    const Rational& z = p.points[r][2];
    m(r, 0) = 1;
    m(r, 1) = x;
    m(r, 2) = y;
    m(r, 3) = z;
    m(r, 4) = x * x;
    m(r, 5) = y * y;
    m(r, 6) = z * z;
    m(r, 7) = x * y;
    m(r, 8) = x * z;
    m(r, 9) = y * z;
  }
  return linalg::is_zero(linalg::determinant(m));
}

Configuration<Rational> sample_regular_k55_configuration(Rng& rng, int max_attempts) {
  for (int a = 0; a < max_attempts; ++a) {
    Configuration<Rational> cfg = random_int_configuration(10, 3, rng);
    if (in_affine_general_position(cfg) && !lies_on_quadric(cfg)) return cfg;
  }
  throw std::runtime_error("sample_regular_k55_configuration: no regular sample found");
}

}  // namespace k55::rigidity
