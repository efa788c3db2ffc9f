#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "k55/graph.hpp"
#include "k55/matrix.hpp"
#include "k55/rng.hpp"

namespace k55::rigidity {

using linalg::Fp;
using linalg::is_zero;
using linalg::Matrix;
using linalg::one_like;
using linalg::Rational;
using linalg::zero_like;

// One point per vertex, in order, each with `dim` coordinates.
template <typename T>
struct Configuration {
  int dim = 0;
  std::vector<std::vector<T>> points;

  int vertex_count() const { return static_cast<int>(points.size()); }
};

// Non-Hermitian squared length: sum of squared coordinate differences, no
// conjugation. For rational inputs this is the Euclidean squared length;
// over a field with a square root of -1 it can vanish on distinct points.
template <typename T>
T squared_length(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("squared_length: dimension mismatch");
  T d = a[0] - b[0];
  T acc = d * d;
  for (std::size_t k = 1; k < a.size(); ++k) {
    d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

template <typename T>
void check_covers(const graphs::Graph& g, const Configuration<T>& p) {
  if (p.vertex_count() != g.vertex_count())
    throw std::invalid_argument("configuration does not cover all vertices");
  for (const auto& pt : p.points)
    if (static_cast<int>(pt.size()) != p.dim)
      throw std::invalid_argument("configuration point has wrong dimension");
}

// Squared edge lengths in canonical edge order.
template <typename T>
std::vector<T> measurement(const graphs::Graph& g, const Configuration<T>& p) {
  check_covers(g, p);
  std::vector<T> m;
  m.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) m.push_back(squared_length(p.points[u], p.points[v]));
  return m;
}

// |E| x (n*dim) Jacobian of the measurement map: the row of edge (u, v)
// carries 2(p_u - p_v) in u's column block and the negative in v's. The
// factor 2 is kept to match the literal derivative; rank and kernels do
// not care.
template <typename T>
Matrix<T> rigidity_matrix(const graphs::Graph& g, const Configuration<T>& p) {
  check_covers(g, p);
  const int n = g.vertex_count(), d = p.dim;
  const std::size_t rows = g.edges().size();
  const T zero = zero_like(d > 0 && n > 0 ? p.points[0][0] : T{});
  Matrix<T> m(rows, static_cast<std::size_t>(n) * d, zero);
  for (std::size_t e = 0; e < rows; ++e) {
    auto [u, v] = g.edges()[e];
    for (int k = 0; k < d; ++k) {
      T diff = p.points[u][k] - p.points[v][k];
      T twice = diff + diff;
      m(e, static_cast<std::size_t>(u) * d + k) = twice;
      m(e, static_cast<std::size_t>(v) * d + k) = zero - twice;
    }
  }
  return m;
}

// Edge-indexed left-kernel vector of a rigidity matrix; membership is
// checked exactly at construction.
template <typename T>
class Stress {
 public:
  Stress(const graphs::Graph& g, const Configuration<T>& p, std::vector<T> w);

  const std::vector<T>& weights() const { return w_; }
  const T& operator[](std::size_t e) const { return w_[e]; }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<T> w_;
};

// True iff w is exactly in the left kernel of the rigidity matrix of (g, p);
// equivalently, every per-vertex weighted difference sum vanishes.
template <typename T>
bool equilibrium_residual_is_zero(const graphs::Graph& g, const Configuration<T>& p,
                                  const std::vector<T>& w) {
  if (w.size() != g.edges().size())
    throw std::invalid_argument("equilibrium residual: stress/edge count mismatch");
  Matrix<T> m = rigidity_matrix(g, p);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    T acc = zero_like(w.empty() ? T{} : w[0]);
    for (std::size_t r = 0; r < m.rows(); ++r) acc += w[r] * m(r, c);
    if (!is_zero(acc)) return false;
  }
  return true;
}

template <typename T>
Stress<T>::Stress(const graphs::Graph& g, const Configuration<T>& p, std::vector<T> w)
    : w_(std::move(w)) {
  if (!equilibrium_residual_is_zero(g, p, w_))
    throw std::invalid_argument("Stress: vector is not in the left kernel");
}

// Basis of the stress space at (g, p), in reduced echelon convention.
template <typename T>
std::vector<Stress<T>> stress_basis(const graphs::Graph& g, const Configuration<T>& p) {
  std::vector<Stress<T>> out;
  for (auto& w : linalg::left_nullspace(rigidity_matrix(g, p)))
    out.emplace_back(g, p, std::move(w));
  return out;
}

template <typename T>
T stress_sum(const Stress<T>& s) {
  if (s.size() == 0) throw std::invalid_argument("stress_sum: empty stress");
  T acc = s[0];
  for (std::size_t e = 1; e < s.size(); ++e) acc += s[e];
  return acc;
}

template <typename T>
std::vector<T> vertex_stress_sums(const graphs::Graph& g, const Stress<T>& s) {
  if (s.size() != g.edges().size())
    throw std::invalid_argument("vertex_stress_sums: stress/edge count mismatch");
  const T zero = zero_like(s.size() ? s[0] : T{});
  std::vector<T> sums(static_cast<std::size_t>(g.vertex_count()), zero);
  for (std::size_t e = 0; e < s.size(); ++e) {
    auto [u, v] = g.edges()[e];
    sums[u] += s[e];
    sums[v] += s[e];
  }
  return sums;
}

// ---- randomized generic-rank machinery (non-template, in rigidity.cpp) ----

// Maximum rank of the rigidity matrix over `trials` random prime-field
// configurations: a certified lower bound on the generic rank, equal to it
// with overwhelming probability.
int generic_rank(const graphs::Graph& g, int dim, std::uint64_t seed, int trials = 3,
                 std::uint64_t prime = Fp::kMersenne61);

// d n - d(d+1)/2 for n >= d+1, capped by |E|; the Maxwell independence bound.
int maxwell_bound(int n, int dim, int edge_count);

// rank(rigidity_matrix(g, p)) == |E| at the given witness configuration:
// a sound certificate of generic independence.
template <typename T>
bool is_independent_certified(const graphs::Graph& g, const Configuration<T>& p) {
  return linalg::rank(rigidity_matrix(g, p)) == g.edges().size();
}

struct CircuitResult {
  bool is_circuit = false;
  // `certified` when dependence follows from a count bound and every
  // single-edge deletion was found independent at an explicit point;
  // otherwise the verdict rests on randomized rank alone.
  bool certified = false;
};

CircuitResult is_circuit(const graphs::Graph& g, int dim, std::uint64_t seed, int trials = 3,
                         std::uint64_t prime = Fp::kMersenne61);

// ---- regular-point predicates for K_{5,5} in dimension 3 ----

// Every 4-subset of the 10 points affinely independent (no 4 coplanar).
bool in_affine_general_position(const Configuration<Rational>& p);

// The 10 x 10 matrix of degree-<=2 monomials (1, x, y, z, x^2, y^2, z^2,
// xy, xz, yz) at the points is singular, i.e. some quadric contains all 10.
bool lies_on_quadric(const Configuration<Rational>& p);

// ---- seeded samplers ----

Configuration<Fp> random_fp_configuration(int n, int dim, Rng& rng,
                                          std::uint64_t prime = Fp::kMersenne61);

Configuration<Rational> random_int_configuration(int n, int dim, Rng& rng, long bound = 999);

// Integer-coordinate configuration of 10 points passing both regular-point
// predicates; resamples degenerate draws, throws after max_attempts.
Configuration<Rational> sample_regular_k55_configuration(Rng& rng, int max_attempts = 64);

}  // namespace k55::rigidity
