#include "k55/cayley_menger.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace k55::cm {

int variable_index(VariableId v) {
  if (v.left < 0 || v.left > 4 || v.right < 5 || v.right > 9)
    throw std::invalid_argument("variable_index: need left in 0..4, right in 5..9");
  return v.left * 5 + (v.right - 5);
}

VariableId variable_at(int index) {
  if (index < 0 || index >= kVariableCount)
    throw std::invalid_argument("variable_at: index out of range");
  return VariableId{index / 5, 5 + index % 5};
}

std::string variable_name(int index) {
  VariableId v = variable_at(index);
  return "d" + std::to_string(v.left) + std::to_string(v.right);
}

void SparsePolynomial::add_term(Monomial m, mpz_class coeff) {
  if (coeff == 0) return;
  std::sort(m.begin(), m.end());
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(coeff));
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

SparsePolynomial SparsePolynomial::times_variable(int var) const {
  SparsePolynomial out;
  for (const auto& [mono, coeff] : terms_) {
    Monomial m = mono;
    m.push_back(static_cast<std::uint8_t>(var));
    out.add_term(std::move(m), coeff);
  }
  return out;
}

SparsePolynomial SparsePolynomial::negated() const {
  SparsePolynomial out;
  for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
  return out;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  for (const auto& [mono, coeff] : o.terms_) add_term(mono, coeff);
  return *this;
}

SymbolicCmMatrix build_bordered_matrix() {
  SymbolicCmMatrix m{};
  m[0][0] = CmEntry{EntryKind::kZero, 0};
  for (int i = 1; i < 6; ++i) {
    m[0][i] = CmEntry{EntryKind::kOne, 0};
    m[i][0] = CmEntry{EntryKind::kOne, 0};
  }
  for (int r = 1; r < 6; ++r)
    for (int c = 1; c < 6; ++c)
      m[r][c] = CmEntry{EntryKind::kVar,
                        static_cast<std::uint8_t>(variable_index({r - 1, 5 + (c - 1)}))};
  return m;
}

namespace {

// Cofactor expansion along the first remaining row. `rows`/`cols` list the
// live indices of the submatrix.
SparsePolynomial det_cofactor(const SymbolicCmMatrix& m, std::vector<int> rows,
                              std::vector<int> cols) {
  SparsePolynomial out;
  if (rows.size() == 1) {
    const CmEntry e = m[rows[0]][cols[0]];
    if (e.kind == EntryKind::kOne)
      out.add_term({}, 1);
    else if (e.kind == EntryKind::kVar)
      out.add_term({e.var}, 1);
    return out;
  }
  const int r0 = rows.front();
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const CmEntry e = m[r0][cols[j]];
    if (e.kind == EntryKind::kZero) continue;
    std::vector<int> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (c != j) sub_cols.push_back(cols[c]);
    SparsePolynomial minor = det_cofactor(m, sub_rows, sub_cols);
    if (e.kind == EntryKind::kVar) minor = minor.times_variable(e.var);
    if (j % 2 == 1) minor = minor.negated();
    out += minor;
  }
  return out;
}

int permutation_sign(const std::array<int, 6>& p) {
  int inversions = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

SparsePolynomial expand_determinant(const SymbolicCmMatrix& m) {
  return det_cofactor(m, {0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
}

SparsePolynomial expand_determinant_leibniz(const SymbolicCmMatrix& m) {
  SparsePolynomial out;
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  do {
    Monomial mono;
    bool zero = false;
    for (int r = 0; r < 6 && !zero; ++r) {
      const CmEntry e = m[r][perm[r]];
      if (e.kind == EntryKind::kZero)
        zero = true;
      else if (e.kind == EntryKind::kVar)
        mono.push_back(e.var);
    }
    if (!zero) out.add_term(std::move(mono), permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool check_support_structure(const SparsePolynomial& f) {
  for (const auto& [mono, coeff] : f.terms()) {
    (void)coeff;
    if (mono.size() != 4) return false;
    std::set<int> lefts, rights;
    for (std::uint8_t v : mono) {
      VariableId id = variable_at(v);
      lefts.insert(id.left);
      rights.insert(id.right);
    }
    if (lefts.size() != 4 || rights.size() != 4) return false;
  }
  return !f.is_zero();
}

std::vector<SparsePolynomial> gradient(const SparsePolynomial& f) {
  std::vector<SparsePolynomial> grad(kVariableCount);
  for (const auto& [mono, coeff] : f.terms()) {
    std::uint8_t prev = 255;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      const std::uint8_t v = mono[i];
      if (v == prev) continue;  // each distinct variable once
      prev = v;
      const long mult = std::count(mono.begin(), mono.end(), v);
      Monomial rest;
      bool dropped = false;
      for (std::uint8_t w : mono) {
        if (w == v && !dropped) {
          dropped = true;
          continue;
        }
        rest.push_back(w);
      }
      grad[v].add_term(std::move(rest), coeff * mult);
    }
  }
  return grad;
}

bool check_automorphism_action(const SparsePolynomial& f, const std::vector<int>& vertex_perm) {
  if (vertex_perm.size() != 10)
    throw std::invalid_argument("check_automorphism_action: need a permutation of 10 vertices");
  std::vector<bool> hit(10, false);
  for (int v : vertex_perm) {
    if (v < 0 || v >= 10 || hit[v])
      throw std::invalid_argument("check_automorphism_action: not a permutation");
    hit[v] = true;
  }
  const bool left_to_left = vertex_perm[0] < 5;
  for (int v = 0; v < 10; ++v) {
    const bool from_left = v < 5, to_left = vertex_perm[v] < 5;
    if ((from_left == left_to_left) != to_left)
      throw std::invalid_argument(
          "check_automorphism_action: permutation does not preserve or swap the parts");
  }

  std::array<std::uint8_t, kVariableCount> var_map{};
  for (int idx = 0; idx < kVariableCount; ++idx) {
    VariableId id = variable_at(idx);
    int a = vertex_perm[id.left], b = vertex_perm[id.right];
    if (a > b) std::swap(a, b);
    var_map[idx] = static_cast<std::uint8_t>(variable_index({a, b}));
  }

  SparsePolynomial mapped;
  for (const auto& [mono, coeff] : f.terms()) {
    Monomial m;
    m.reserve(mono.size());
    for (std::uint8_t v : mono) m.push_back(var_map[v]);
    mapped.add_term(std::move(m), coeff);
  }
  return mapped == f || mapped == f.negated();
}

}  // namespace k55::cm
