#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "nilq/bch.hpp"

namespace nilq {

/// g = p_1 ⊕ ... ⊕ p_k with a Levi–Malcev witness basis grouped by part.
struct LeviMalcevDecomposition {
  std::vector<Subspace> parts;
  std::vector<std::vector<Vector>> part_bases;
  Matrix basis_inverse;  // inverse of the matrix whose columns are the witness basis, part by part

  std::vector<Vector> witness_basis() const;
  /// Coordinates of x in the witness basis of one part (x must lie in that part).
  Vector part_coordinates(std::size_t part, const Vector& x) const;
};

/// The lowest central-series level at which the projected parts are dependent.
struct NotExists {
  std::size_t level;
};

bool is_levi_malcev_basis(const LieAlgebra& a, const std::vector<Vector>& basis);

/// Decomposition with the given parts, inserting a deterministic complement s at
/// position `slice_at` when requested (otherwise the parts must already sum to g).
std::variant<LeviMalcevDecomposition, NotExists> decompose(const LieAlgebra& a, std::vector<Subspace> parts,
                                                           std::optional<std::size_t> slice_at);

/// g = v ⊕ s ⊕ h; throws InputError when v ∩ h ≠ 0.
std::variant<LeviMalcevDecomposition, NotExists> levi_malcev_decomposition(const LieAlgebra& a, const Subspace& v,
                                                                           const Subspace& h);

/// g = s ⊕ h; always exists.
LeviMalcevDecomposition h_slice(const LieAlgebra& a, const Subspace& h);

/// Components c_k in the parts with exp(c_1)...exp(c_k) = exp(x), solved level by level.
template <class R>
std::vector<std::vector<R>> factorize(const LieAlgebra& a, const LeviMalcevDecomposition& d, const std::vector<R>& x) {
  std::size_t n = a.dim();
  std::vector<std::vector<R>> comps(d.parts.size(), std::vector<R>(n));
  std::vector<std::size_t> owner;
  std::vector<Vector> basis;
  for (std::size_t p = 0; p < d.part_bases.size(); ++p)
    for (const auto& b : d.part_bases[p]) {
      owner.push_back(p);
      basis.push_back(b);
    }
  std::size_t l = a.nilpotency_step();
  for (std::size_t level = 0; level <= l; ++level) {
    std::vector<R> diff = sub(x, star_all(a, comps));
    bool done = true;
    for (const auto& c : diff)
      if (!is_zero(c)) done = false;
    if (done) return comps;
    if (level == l) break;
    // diff lies in g^(level); its witness coordinates move each part by its share.
    for (std::size_t b = 0; b < n; ++b) {
      R coef;
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(d.basis_inverse[b][k]) && !is_zero(diff[k])) coef += R(diff[k] * d.basis_inverse[b][k]);
      if (is_zero(coef)) continue;
      auto& c = comps[owner[b]];
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(basis[b][k])) c[k] += R(coef * basis[b][k]);
    }
  }
  throw InconsistencyError("factorize: level-by-level solve did not close; decomposition invalid for this element");
}

std::vector<Vector> factorize(const LieAlgebra& a, const LeviMalcevDecomposition& d, const Vector& x);

}  // namespace nilq
