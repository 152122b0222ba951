#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilq/polynomial.hpp"
#include "nilq/subspace.hpp"

namespace nilq {

class NotNilpotentError : public InputError {
 public:
  using InputError::InputError;
};

/// Brackets of basis elements, keyed by (i, j) with i < j. Unlisted pairs bracket to zero.
struct StructureConstants {
  std::size_t dim = 0;
  std::map<std::pair<std::size_t, std::size_t>, Vector> brackets;
};

struct JacobiViolation {
  std::size_t i, j, k;
  Vector residual;
};

/// First triple i<j<k with [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] != 0.
std::optional<JacobiViolation> jacobi_check(const StructureConstants& sc);

/// Faithful representation by strictly upper-triangular size×size matrices, one per basis element.
struct MatrixPresentation {
  std::size_t size = 0;
  std::vector<Matrix> images;
};

class LieAlgebra {
 public:
  /// Validates antisymmetric storage, the Jacobi identity and nilpotency.
  LieAlgebra(std::string name, std::vector<std::string> labels, StructureConstants sc);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const StructureConstants& structure() const { return sc_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  Vector basis_vector(std::size_t i) const { return unit_vector(dim(), i); }

  template <class R>
  std::vector<R> bracket(const std::vector<R>& x, const std::vector<R>& y) const;

  Vector bracket(const Vector& x, const Vector& y) const { return bracket<Scalar>(x, y); }

  /// Matrix of ad(x) acting on column coordinate vectors.
  Matrix ad_matrix(const Vector& x) const;

  /// g = g^(0) ⊃ g^(1) ⊃ ... ⊃ g^(l) = {0}; the last entry is the zero subspace.
  const std::vector<Subspace>& central_series() const { return series_; }
  std::size_t nilpotency_step() const { return series_.size() - 1; }
  const Subspace& series_term(std::size_t j) const;

  /// Largest j with x ∈ g^(j) (the step l for x = 0).
  std::size_t level_of(const Vector& x) const;

  Subspace whole() const { return Subspace::whole(dim()); }
  Subspace span(const std::vector<Vector>& vs) const { return Subspace::span(dim(), vs); }
  Subspace center() const;
  Subspace bracket_span(const Subspace& a, const Subspace& b) const;

  bool is_subalgebra(const Subspace& s) const;
  bool is_ideal(const Subspace& s) const;
  bool is_abelian(const Subspace& s) const;
  Subspace subalgebra_closure(const Subspace& s) const;
  /// Smallest ideal containing s.
  Subspace ideal_closure(const Subspace& s) const;

  const std::optional<MatrixPresentation>& presentation() const { return presentation_; }
  /// Attaches a presentation after checking shape, strict upper-triangularity,
  /// faithfulness and the homomorphism property on basis pairs.
  void set_presentation(MatrixPresentation p);

  std::string format(const Vector& x) const;

 private:
  void check_vector(std::size_t n) const;

  std::string name_;
  std::vector<std::string> labels_;
  StructureConstants sc_;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Vector>> entries_;
  std::vector<Subspace> series_;
  std::optional<MatrixPresentation> presentation_;
};

template <class R>
std::vector<R> LieAlgebra::bracket(const std::vector<R>& x, const std::vector<R>& y) const {
  check_vector(x.size());
  check_vector(y.size());
  std::vector<R> out(dim());
  for (const auto& [ij, vec] : entries_) {
    auto [i, j] = ij;
    R c;
    bool xi = !is_zero(x[i]), yj = !is_zero(y[j]), xj = !is_zero(x[j]), yi = !is_zero(y[i]);
    if (xi && yj) c += R(x[i] * y[j]);
    if (xj && yi) c -= R(x[j] * y[i]);
    if (is_zero(c)) continue;
    for (std::size_t k = 0; k < vec.size(); ++k)
      if (!is_zero(vec[k])) out[k] += R(c * vec[k]);
  }
  return out;
}

/// Quotient g/N by an ideal, with coordinates on the standard-basis complement of N's pivots.
struct QuotientAlgebra {
  LieAlgebra algebra;
  Subspace kernel;
  std::vector<std::size_t> complement;  // parent indices carried to the quotient basis
  Matrix projection;                    // dim(g/N) × dim(g)

  Vector project(const Vector& x) const { return mat_vec(projection, x); }
  Subspace project(const Subspace& s) const { return image(projection, s, algebra.dim()); }
  /// Representative of a quotient vector on the complement columns.
  Vector lift(const Vector& x) const;
};

QuotientAlgebra quotient_algebra(const LieAlgebra& a, const Subspace& ideal);

/// The canonical map g^(j) → g^(j)/g^(j+1).
QuotientMap pi_j(const LieAlgebra& a, std::size_t j);

/// A subalgebra presented as an algebra of its own, with coordinates on the echelon basis.
struct SubalgebraEmbedding {
  LieAlgebra algebra;
  Subspace image;
  Vector embed(const Vector& x) const { return image.combine(x); }
  Vector restrict(const Vector& x) const { return image.coordinates(x); }
  Subspace restrict(const Subspace& s) const;
};

SubalgebraEmbedding as_algebra(const LieAlgebra& a, const Subspace& sub, const std::string& name);

}  // namespace nilq
