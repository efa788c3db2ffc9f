#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "k55/fp.hpp"
#include "k55/rational.hpp"

namespace k55::cm {

// The 25 variables d_ij, i in {0..4}, j in {5..9}, indexed row-major so that
// index(i, j) equals the canonical K_{5,5} edge index of (i, j).
struct VariableId {
  int left;   // 0..4
  int right;  // 5..9
};

constexpr int kVariableCount = 25;

int variable_index(VariableId v);
VariableId variable_at(int index);
std::string variable_name(int index);  // "d05" .. "d49"

// Sorted variable indices, multiplicity by repetition.
using Monomial = std::vector<std::uint8_t>;

// Integer-coefficient polynomial in the d_ij, canonically sorted monomials,
// no zero coefficients stored.
class SparsePolynomial {
 public:
  void add_term(Monomial m, mpz_class coeff);
  const std::map<Monomial, mpz_class>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  SparsePolynomial times_variable(int var) const;
  SparsePolynomial negated() const;
  SparsePolynomial& operator+=(const SparsePolynomial& o);

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Monomial, mpz_class> terms_;
};

enum class EntryKind : std::uint8_t { kZero, kOne, kVar };

struct CmEntry {
  EntryKind kind = EntryKind::kZero;
  std::uint8_t var = 0;
};

using SymbolicCmMatrix = std::array<std::array<CmEntry, 6>, 6>;

// The bordered 6x6 matrix: zero corner, unit border, d_ij in the 5x5 block.
SymbolicCmMatrix build_bordered_matrix();

// Full symbolic expansion by cofactor recursion along the first row.
SparsePolynomial expand_determinant(const SymbolicCmMatrix& m);

// Independent cross-check: the signed sum over all 720 permutations.
SparsePolynomial expand_determinant_leibniz(const SymbolicCmMatrix& m);

// Every monomial is a product of 4 distinct variables with 4 distinct left
// indices and 4 distinct right indices.
bool check_support_structure(const SparsePolynomial& f);

// Partial derivative with respect to each of the 25 variables.
std::vector<SparsePolynomial> gradient(const SparsePolynomial& f);

namespace detail {
inline linalg::Rational scalar_from_mpz(const mpz_class& c, const linalg::Rational&) {
  return linalg::Rational(c);
}
inline linalg::Fp scalar_from_mpz(const mpz_class& c, const linalg::Fp& anchor) {
  const std::uint64_t p = anchor.modulus();
  // mpz_fdiv_ui yields the non-negative remainder
  return linalg::Fp(mpz_fdiv_ui(c.get_mpz_t(), p), p);
}
}  // namespace detail

// Exact evaluation; the assignment supplies all 25 variables in canonical
// order (i.e. a K_{5,5} measurement vector).
template <typename T>
T evaluate(const SparsePolynomial& f, const std::vector<T>& assignment) {
  if (assignment.size() != kVariableCount)
    throw std::invalid_argument("evaluate: need all 25 variables");
  T acc = linalg::zero_like(assignment[0]);
  for (const auto& [mono, coeff] : f.terms()) {
    T term = detail::scalar_from_mpz(coeff, assignment[0]);
    for (std::uint8_t v : mono) term = term * assignment[v];
    acc += term;
  }
  return acc;
}

// True iff the variable permutation induced by a part-preserving or
// part-swapping vertex permutation of K_{5,5} maps f to +-f. Throws if the
// permutation is not an automorphism of K_{5,5}.
bool check_automorphism_action(const SparsePolynomial& f, const std::vector<int>& vertex_perm);

}  // namespace k55::cm
