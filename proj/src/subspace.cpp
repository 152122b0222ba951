#include "nilq/subspace.hpp"

namespace nilq {

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  Subspace s(ambient);
  Matrix m;
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw InputError("span: vector dimension mismatch");
    if (!nilq::is_zero(v)) m.push_back(v);
  }
  s.pivots_ = rref(m);
  s.basis_ = std::move(m);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < ambient; ++i) basis.push_back(unit_vector(ambient, i));
  return span(ambient, basis);
}

Vector Subspace::reduce(const Vector& x) const {
  if (x.size() != ambient_) throw InputError("reduce: vector dimension mismatch");
  Vector r = x;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Scalar f = r[pivots_[i]];
    if (nilq::is_zero(f)) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j)
      if (!nilq::is_zero(basis_[i][j])) r[j] -= f * basis_[i][j];
  }
  return r;
}

bool Subspace::contains(const Vector& x) const { return nilq::is_zero(reduce(x)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw InputError("contains: subspaces of different algebras");
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

Vector Subspace::coordinates(const Vector& x) const {
  if (!contains(x)) throw InputError("coordinates: vector not in subspace");
  Vector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = x[pivots_[i]];
  return c;
}

Vector Subspace::combine(const Vector& coords) const {
  if (coords.size() != basis_.size()) throw InputError("combine: coordinate count mismatch");
  Vector out(ambient_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!nilq::is_zero(coords[i])) out = add(out, scale(coords[i], basis_[i]));
  return out;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw InputError("intersect: subspaces of different algebras");
  std::size_t n = a.ambient();
  if (a.is_zero() || b.is_zero()) return Subspace(n);
  std::size_t ka = a.dim(), kb = b.dim();
  Matrix m = zero_matrix(n, ka + kb);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < ka; ++c) m[i][c] = a.basis()[c][i];
    for (std::size_t c = 0; c < kb; ++c) m[i][ka + c] = -b.basis()[c][i];
  }
  std::vector<Vector> vs;
  for (const auto& k : nullspace(m, ka + kb)) {
    Vector coeffs(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(ka));
    vs.push_back(a.combine(coeffs));
  }
  return Subspace::span(n, vs);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw InputError("sum: subspaces of different algebras");
  std::vector<Vector> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vs);
}

Subspace image(const Matrix& map, const Subspace& s, std::size_t target_dim) {
  std::vector<Vector> vs;
  for (const auto& v : s.basis()) vs.push_back(mat_vec(map, v));
  return Subspace::span(target_dim, vs);
}

std::vector<Vector> extend_by(const Subspace& base, const Subspace& ambient, const std::vector<Vector>& candidates) {
  std::vector<Vector> added;
  Subspace current = base;
  for (const auto& c : candidates) {
    if (current.dim() == ambient.dim()) break;
    if (!ambient.contains(c) || current.contains(c)) continue;
    added.push_back(c);
    current = sum(current, Subspace::span(base.ambient(), {c}));
  }
  return added;
}

QuotientMap::QuotientMap(Subspace ambient, Subspace kernel)
    : ambient_(std::move(ambient)), kernel_(std::move(kernel)) {
  if (!ambient_.contains(kernel_)) throw InputError("quotient map: kernel not contained in ambient subspace");
  std::vector<Vector> reps;
  for (const auto& v : ambient_.basis()) reps.push_back(kernel_.reduce(v));
  complement_ = Subspace::span(ambient_.ambient(), reps);
}

Vector QuotientMap::operator()(const Vector& x) const {
  if (!ambient_.contains(x)) throw InputError("quotient map: vector outside domain");
  return complement_.coordinates(kernel_.reduce(x));
}

Subspace QuotientMap::image(const Subspace& s) const {
  std::vector<Vector> vs;
  for (const auto& v : s.basis()) vs.push_back((*this)(v));
  return Subspace::span(dim(), vs);
}

}  // namespace nilq
