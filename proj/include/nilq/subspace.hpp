#pragma once

#include <vector>

#include "nilq/linalg.hpp"

namespace nilq {

/// Subspace of Q^n stored as its reduced row-echelon basis, so two equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of Q^n.
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& x) const;
  bool contains(const Subspace& other) const;

  /// Canonical representative of x modulo this subspace (zero at every pivot column).
  Vector reduce(const Vector& x) const;

  /// Coordinates of x in the echelon basis; x must lie in the subspace.
  Vector coordinates(const Vector& x) const;

  Vector combine(const Vector& coords) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

/// Image of a subspace under a linear map (matrix acting on column vectors).
Subspace image(const Matrix& map, const Subspace& s, std::size_t target_dim);

/// Extends `base` to a complement inside `ambient` by greedily adding the
/// candidates in order; returns the added vectors.
std::vector<Vector> extend_by(const Subspace& base, const Subspace& ambient, const std::vector<Vector>& candidates);

/// Coordinates on ambient/kernel for ambient ⊇ kernel.
class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(Subspace ambient, Subspace kernel);

  std::size_t dim() const { return complement_.dim(); }
  const Subspace& ambient() const { return ambient_; }
  const Subspace& kernel() const { return kernel_; }

  /// Quotient coordinates of x; x must lie in the ambient subspace.
  Vector operator()(const Vector& x) const;

  /// Image of a subspace contained in the ambient one, in quotient coordinates.
  Subspace image(const Subspace& s) const;

 private:
  Subspace ambient_;
  Subspace kernel_;
  Subspace complement_;
};

}  // namespace nilq
