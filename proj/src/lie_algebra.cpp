#include "nilq/lie_algebra.hpp"

#include <set>

namespace nilq {
namespace {

Vector raw_bracket(const StructureConstants& sc, std::size_t i, std::size_t j) {
  if (i == j) return Vector(sc.dim);
  if (i < j) {
    auto it = sc.brackets.find({i, j});
    return it == sc.brackets.end() ? Vector(sc.dim) : it->second;
  }
  return negate(raw_bracket(sc, j, i));
}

Vector raw_bracket(const StructureConstants& sc, std::size_t i, const Vector& y) {
  Vector out(sc.dim);
  for (std::size_t k = 0; k < sc.dim; ++k)
    if (!is_zero(y[k])) out = add(out, scale(y[k], raw_bracket(sc, i, k)));
  return out;
}

}  // namespace

std::optional<JacobiViolation> jacobi_check(const StructureConstants& sc) {
  std::size_t n = sc.dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector r = raw_bracket(sc, i, raw_bracket(sc, j, k));
        r = add(r, raw_bracket(sc, j, raw_bracket(sc, k, i)));
        r = add(r, raw_bracket(sc, k, raw_bracket(sc, i, j)));
        if (!is_zero(r)) return JacobiViolation{i, j, k, r};
      }
  return std::nullopt;
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, StructureConstants sc)
    : name_(std::move(name)), labels_(std::move(labels)), sc_(std::move(sc)) {
  if (labels_.empty()) throw InputError("algebra '" + name_ + "' must have positive dimension");
  if (sc_.dim != labels_.size()) throw InputError("algebra '" + name_ + "': label count does not match dimension");
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) throw InputError("algebra '" + name_ + "': duplicate basis label " + l);
  for (auto it = sc_.brackets.begin(); it != sc_.brackets.end();) {
    auto [i, j] = it->first;
    if (i >= j || j >= dim()) throw InputError("algebra '" + name_ + "': bracket keys must satisfy i < j < dim");
    if (it->second.size() != dim()) throw InputError("algebra '" + name_ + "': bracket value has wrong dimension");
    if (is_zero(it->second))
      it = sc_.brackets.erase(it);
    else
      ++it;
  }
  if (auto v = jacobi_check(sc_)) {
    throw InputError("algebra '" + name_ + "': Jacobi identity fails for (" + labels_[v->i] + ", " + labels_[v->j] +
                     ", " + labels_[v->k] + ")");
  }
  for (const auto& [ij, v] : sc_.brackets) entries_.emplace_back(ij, v);

  series_.push_back(whole());
  while (!series_.back().is_zero()) {
    if (series_.size() > dim()) throw NotNilpotentError("algebra '" + name_ + "' is not nilpotent");
    Subspace next = bracket_span(whole(), series_.back());
    if (next == series_.back()) throw NotNilpotentError("algebra '" + name_ + "' is not nilpotent");
    series_.push_back(std::move(next));
  }
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void LieAlgebra::check_vector(std::size_t n) const {
  if (n != dim()) throw InputError("vector dimension " + std::to_string(n) + " does not match algebra '" + name_ + "'");
}

Matrix LieAlgebra::ad_matrix(const Vector& x) const {
  Matrix m = zero_matrix(dim(), dim());
  for (std::size_t c = 0; c < dim(); ++c) {
    Vector col = bracket(x, basis_vector(c));
    for (std::size_t r = 0; r < dim(); ++r) m[r][c] = col[r];
  }
  return m;
}

const Subspace& LieAlgebra::series_term(std::size_t j) const {
  if (j >= series_.size()) return series_.back();
  return series_[j];
}

std::size_t LieAlgebra::level_of(const Vector& x) const {
  std::size_t j = 0;
  while (j + 1 < series_.size() && series_[j + 1].contains(x)) ++j;
  if (is_zero(x)) return nilpotency_step();
  return j;
}

Subspace LieAlgebra::bracket_span(const Subspace& a, const Subspace& b) const {
  std::vector<Vector> vs;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) vs.push_back(bracket(x, y));
  return span(vs);
}

Subspace LieAlgebra::center() const {
  // Stack the rows of every ad(e_i); the center is their common kernel.
  Matrix stacked;
  for (std::size_t i = 0; i < dim(); ++i) {
    Matrix ad = ad_matrix(basis_vector(i));
    stacked.insert(stacked.end(), ad.begin(), ad.end());
  }
  return span(nullspace(stacked, dim()));
}

bool LieAlgebra::is_subalgebra(const Subspace& s) const { return s.contains(bracket_span(s, s)); }
bool LieAlgebra::is_ideal(const Subspace& s) const { return s.contains(bracket_span(whole(), s)); }
bool LieAlgebra::is_abelian(const Subspace& s) const { return bracket_span(s, s).is_zero(); }

Subspace LieAlgebra::subalgebra_closure(const Subspace& s) const {
  Subspace cur = s;
  while (true) {
    Subspace next = sum(cur, bracket_span(cur, cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Subspace LieAlgebra::ideal_closure(const Subspace& s) const {
  Subspace cur = s;
  while (true) {
    Subspace next = sum(cur, bracket_span(whole(), cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

void LieAlgebra::set_presentation(MatrixPresentation p) {
  if (p.images.size() != dim()) throw InputError("presentation of '" + name_ + "' must give one matrix per basis element");
  std::size_t m = p.size;
  std::vector<Vector> flat;
  for (const auto& img : p.images) {
    if (img.size() != m) throw InputError("presentation matrix has wrong size");
    Vector f;
    for (std::size_t r = 0; r < m; ++r) {
      if (img[r].size() != m) throw InputError("presentation matrix has wrong size");
      for (std::size_t c = 0; c < m; ++c) {
        if (c <= r && !is_zero(img[r][c])) throw InputError("presentation matrices must be strictly upper triangular");
        f.push_back(img[r][c]);
      }
    }
    flat.push_back(std::move(f));
  }
  if (rank(flat) != dim()) throw InputError("presentation of '" + name_ + "' is not faithful");
  auto lin = [&](const Vector& x) {
    Matrix out = zero_matrix(m, m);
    for (std::size_t k = 0; k < dim(); ++k) {
      if (is_zero(x[k])) continue;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) out[r][c] += x[k] * p.images[k][r][c];
    }
    return out;
  };
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) {
      Matrix ab = multiply(p.images[i], p.images[j]);
      Matrix ba = multiply(p.images[j], p.images[i]);
      Matrix expected = lin(bracket(basis_vector(i), basis_vector(j)));
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          if (ab[r][c] - ba[r][c] != expected[r][c])
            throw InputError("presentation of '" + name_ + "' is not a homomorphism at [" + labels_[i] + "," +
                             labels_[j] + "]");
    }
  presentation_ = std::move(p);
}

std::string LieAlgebra::format(const Vector& x) const {
  check_vector(x.size());
  std::string out;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (is_zero(x[k])) continue;
    std::string c = to_string(x[k]);
    bool neg = c[0] == '-';
    if (neg) c.erase(0, 1);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += (c == "1" ? "" : c + "*") + labels_[k];
  }
  return out.empty() ? "0" : out;
}

Vector QuotientAlgebra::lift(const Vector& x) const {
  if (x.size() != complement.size()) throw InputError("lift: coordinate count mismatch");
  Vector out(kernel.ambient());
  for (std::size_t i = 0; i < complement.size(); ++i) out[complement[i]] = x[i];
  return out;
}

QuotientAlgebra quotient_algebra(const LieAlgebra& a, const Subspace& ideal) {
  if (ideal.ambient() != a.dim()) throw InputError("quotient: subspace belongs to a different algebra");
  if (!a.is_ideal(ideal)) throw InputError("quotient: subspace is not an ideal of '" + a.name() + "'");
  std::vector<bool> pivot(a.dim(), false);
  for (auto p : ideal.pivots()) pivot[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!pivot[i]) comp.push_back(i);
  if (comp.empty()) throw InputError("quotient: ideal is the whole algebra");
  Matrix proj = zero_matrix(comp.size(), a.dim());
  for (std::size_t c = 0; c < a.dim(); ++c) {
    Vector r = ideal.reduce(a.basis_vector(c));
    for (std::size_t q = 0; q < comp.size(); ++q) proj[q][c] = r[comp[q]];
  }
  StructureConstants sc{comp.size(), {}};
  std::vector<std::string> labels;
  for (auto c : comp) labels.push_back(a.labels()[c]);
  for (std::size_t x = 0; x < comp.size(); ++x)
    for (std::size_t y = x + 1; y < comp.size(); ++y) {
      Vector b = mat_vec(proj, a.bracket(a.basis_vector(comp[x]), a.basis_vector(comp[y])));
      if (!is_zero(b)) sc.brackets[{x, y}] = b;
    }
  QuotientAlgebra q{LieAlgebra(a.name() + "/N", labels, sc), ideal, comp, proj};
  // The projection must intertwine brackets.
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      Vector lhs = q.project(a.bracket(a.basis_vector(i), a.basis_vector(j)));
      Vector rhs = q.algebra.bracket(q.project(a.basis_vector(i)), q.project(a.basis_vector(j)));
      if (lhs != rhs) throw InconsistencyError("quotient projection is not a homomorphism");
    }
  return q;
}

QuotientMap pi_j(const LieAlgebra& a, std::size_t j) {
  if (j >= a.nilpotency_step()) throw InputError("pi_j: level " + std::to_string(j) + " out of range");
  return QuotientMap(a.series_term(j), a.series_term(j + 1));
}

Subspace SubalgebraEmbedding::restrict(const Subspace& s) const {
  std::vector<Vector> vs;
  for (const auto& v : s.basis()) vs.push_back(restrict(v));
  return Subspace::span(algebra.dim(), vs);
}

SubalgebraEmbedding as_algebra(const LieAlgebra& a, const Subspace& sub, const std::string& name) {
  if (!a.is_subalgebra(sub)) throw InputError("as_algebra: subspace is not a subalgebra");
  std::size_t k = sub.dim();
  StructureConstants sc{k, {}};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t p = sub.pivots()[i];
    labels.push_back(a.labels()[p]);
  }
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) {
      Vector b = sub.coordinates(a.bracket(sub.basis()[x], sub.basis()[y]));
      if (!is_zero(b)) sc.brackets[{x, y}] = b;
    }
  return SubalgebraEmbedding{LieAlgebra(name, labels, sc), sub};
}

}  // namespace nilq
