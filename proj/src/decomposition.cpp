#include "nilq/decomposition.hpp"

namespace nilq {

std::vector<Vector> LeviMalcevDecomposition::witness_basis() const {
  std::vector<Vector> out;
  for (const auto& pb : part_bases) out.insert(out.end(), pb.begin(), pb.end());
  return out;
}

Vector LeviMalcevDecomposition::part_coordinates(std::size_t part, const Vector& x) const {
  std::size_t offset = 0;
  for (std::size_t p = 0; p < part; ++p) offset += part_bases[p].size();
  Vector all = mat_vec(basis_inverse, x);
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool inside = i >= offset && i < offset + part_bases[part].size();
    if (!inside && !is_zero(all[i])) throw InputError("part_coordinates: vector not in the requested part");
  }
  return Vector(all.begin() + static_cast<std::ptrdiff_t>(offset),
                all.begin() + static_cast<std::ptrdiff_t>(offset + part_bases[part].size()));
}

bool is_levi_malcev_basis(const LieAlgebra& a, const std::vector<Vector>& basis) {
  if (basis.size() != a.dim() || a.span(basis).dim() != a.dim())
    throw InputError("is_levi_malcev_basis: vectors do not form a basis");
  for (const auto& term : a.central_series()) {
    std::vector<Vector> inside;
    for (const auto& b : basis)
      if (term.contains(b)) inside.push_back(b);
    if (a.span(inside) != term) return false;
  }
  return true;
}

std::variant<LeviMalcevDecomposition, NotExists> decompose(const LieAlgebra& a, std::vector<Subspace> parts,
                                                           std::optional<std::size_t> slice_at) {
  for (const auto& p : parts)
    if (p.ambient() != a.dim()) throw InputError("decompose: subspace belongs to a different algebra");
  std::vector<std::vector<Vector>> chosen(parts.size());
  std::vector<Vector> slice;
  std::size_t l = a.nilpotency_step();
  for (std::size_t j = 0; j < l; ++j) {
    QuotientMap q = pi_j(a, j);
    std::vector<Vector> images;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      Subspace pj = intersect(parts[p], a.series_term(j));
      Subspace own(q.dim());
      for (const auto& b : pj.basis()) {
        Vector img = q(b);
        if (own.contains(img)) continue;
        own = sum(own, Subspace::span(q.dim(), {img}));
        chosen[p].push_back(b);
        images.push_back(img);
      }
    }
    Subspace combined = Subspace::span(q.dim(), images);
    if (combined.dim() != images.size()) return NotExists{j};
    if (slice_at) {
      for (const auto& b : a.series_term(j).basis()) {
        if (combined.dim() == q.dim()) break;
        Vector img = q(b);
        if (combined.contains(img)) continue;
        combined = sum(combined, Subspace::span(q.dim(), {img}));
        slice.push_back(b);
      }
    } else if (combined.dim() != q.dim()) {
      throw InputError("decompose: parts do not span the algebra at level " + std::to_string(j));
    }
  }
  LeviMalcevDecomposition d;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (slice_at && *slice_at == p) {
      d.parts.push_back(a.span(slice));
      d.part_bases.push_back(slice);
    }
    d.parts.push_back(parts[p]);
    d.part_bases.push_back(chosen[p]);
  }
  if (slice_at && *slice_at >= parts.size()) {
    d.parts.push_back(a.span(slice));
    d.part_bases.push_back(slice);
  }
  std::vector<Vector> basis = d.witness_basis();
  Matrix cols = zero_matrix(a.dim(), a.dim());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < a.dim(); ++r) cols[r][c] = basis[c][r];
  d.basis_inverse = inverse(cols);
  return d;
}

std::variant<LeviMalcevDecomposition, NotExists> levi_malcev_decomposition(const LieAlgebra& a, const Subspace& v,
                                                                           const Subspace& h) {
  if (!intersect(v, h).is_zero()) throw InputError("levi_malcev_decomposition: v and h intersect; the action is not free at e");
  return decompose(a, {v, h}, 1);
}

LeviMalcevDecomposition h_slice(const LieAlgebra& a, const Subspace& h) {
  auto r = decompose(a, {h}, 0);
  if (auto* d = std::get_if<LeviMalcevDecomposition>(&r)) return *d;
  throw InconsistencyError("h_slice: a single subalgebra always admits a slice");
}

std::vector<Vector> factorize(const LieAlgebra& a, const LeviMalcevDecomposition& d, const Vector& x) {
  return factorize<Scalar>(a, d, x);
}

}  // namespace nilq
