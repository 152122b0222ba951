#include "nilq/three_step.hpp"

#include <cctype>

#include "nilq/bch.hpp"
#include "nilq/linalg.hpp"

namespace nilq {
namespace {

Vector concat(const Vector& a, const Vector& b) {
  Vector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::optional<Vector> coordinates_in(const std::vector<Vector>& basis, const Vector& x) {
  if (basis.empty()) return is_zero(x) ? std::optional<Vector>(Vector{}) : std::nullopt;
  Matrix m = zero_matrix(x.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t r = 0; r < x.size(); ++r) m[r][c] = basis[c][r];
  return solve(m, x);
}

}  // namespace

PolyRing log_coordinate_ring(const LieAlgebra& a) {
  std::vector<std::string> names;
  std::vector<unsigned> weights;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::string n = a.labels()[i];
    for (auto& ch : n) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    names.push_back(n);
    weights.push_back(static_cast<unsigned>(a.level_of(a.basis_vector(i)) + 1));
  }
  return PolyRing(names, weights);
}

std::vector<Derivation> biquotient_derivations(const LieAlgebra& a, const std::vector<PairElement>& elements) {
  PolyRing ring = log_coordinate_ring(a);
  std::size_t n = a.dim();
  std::vector<Polynomial> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(Polynomial::variable(i));
  Polynomial t = Polynomial::variable(n);
  std::vector<Derivation> out;
  for (const auto& [left, right] : elements) {
    std::vector<Polynomial> ta(n), tb(n);
    for (std::size_t k = 0; k < n; ++k) {
      ta[k] = t * left[k];
      tb[k] = t * Scalar(-right[k]);
    }
    auto moved = star(a, star(a, ta, x), tb);
    Derivation d(ring);
    for (std::size_t i = 0; i < n; ++i) {
      auto by_t = moved[i].coefficients_in(n);
      if (by_t.size() > 1) d.images[i] = by_t[1];
    }
    out.push_back(std::move(d));
  }
  return out;
}

ThreeStepPair three_step_normal_pair(const LieAlgebra& a, const Subspace& v, const Subspace& h) {
  if (a.nilpotency_step() != 3) throw InputError("three_step_normal_pair: the algebra is not 3-step nilpotent");
  if (!a.is_subalgebra(v) || !a.is_subalgebra(h)) throw InputError("three_step_normal_pair: v and h must be subalgebras");
  const Subspace& g1 = a.series_term(1);
  const Subspace& g2 = a.series_term(2);
  if (!intersect(v, g2).is_zero()) throw InputError("three_step_normal_pair: v meets g^(2)");
  if (!intersect(h, g2).is_zero()) throw InputError("three_step_normal_pair: h meets g^(2)");
  QuotientMap p0 = pi_j(a, 0);
  if (p0.image(v) != p0.image(h)) throw InputError("three_step_normal_pair: pi_0(v) differs from pi_0(h)");

  ThreeStepPair out;
  Subspace seen(p0.dim());
  for (const auto& b : h.basis()) {
    Vector img = p0(b);
    if (seen.contains(img)) continue;
    seen = sum(seen, Subspace::span(p0.dim(), {img}));
    out.x.push_back(b);
  }
  std::vector<Vector> v_images;
  for (const auto& b : v.basis()) v_images.push_back(p0(b));
  for (const auto& xj : out.x) {
    auto c = coordinates_in(v_images, p0(xj));
    if (!c) throw InconsistencyError("three_step_normal_pair: no lift of X_j into v");
    Vector w(a.dim());
    for (std::size_t k = 0; k < c->size(); ++k) w = add(w, scale((*c)[k], v.basis()[k]));
    out.z.push_back(sub(w, xj));
  }

  // close φ under brackets, checking that it stays well defined
  std::vector<Vector> as, bs;
  for (std::size_t j = 0; j < out.x.size(); ++j) {
    as.push_back(add(out.x[j], out.z[j]));
    bs.push_back(out.x[j]);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t count = as.size();
    for (std::size_t i = 0; i < count && !grew; ++i)
      for (std::size_t j = i + 1; j < count && !grew; ++j) {
        Vector ba = a.bracket(as[i], as[j]), bb = a.bracket(bs[i], bs[j]);
        auto c = coordinates_in(as, ba);
        if (!c) {
          as.push_back(ba);
          bs.push_back(bb);
          grew = true;
          continue;
        }
        Vector expect(a.dim());
        for (std::size_t k = 0; k < c->size(); ++k) expect = add(expect, scale((*c)[k], bs[k]));
        if (expect != bb) throw InputError("three_step_normal_pair: phi is not bracket compatible");
      }
  }
  out.v0 = a.span(as);
  out.h0 = a.span(bs);
  if (out.h0.dim() != out.v0.dim()) throw InputError("three_step_normal_pair: phi is not injective");
  for (std::size_t k = 0; k < as.size(); ++k) out.phi.emplace_back(as[k], bs[k]);

  std::vector<Vector> v1;
  Subspace acc = out.v0;
  for (const auto& b : intersect(v, g1).basis()) {
    if (acc.contains(b)) continue;
    acc = sum(acc, a.span({b}));
    v1.push_back(b);
  }
  if (acc != v) throw InputError("three_step_normal_pair: v is not v0 + (v ∩ g^(1))");
  out.v1 = a.span(v1);

  Vector zero(a.dim());
  out.n_basis = out.phi;
  for (const auto& b : v1) out.n_basis.emplace_back(b, zero);
  for (const auto& b : intersect(h, g1).basis()) out.n_basis.emplace_back(zero, b);
  std::vector<Vector> flat;
  for (const auto& [x, y] : out.n_basis) flat.push_back(concat(x, y));
  out.n = Subspace::span(2 * a.dim(), flat);
  if (out.n.dim() != v.dim() + intersect(h, g1).dim())
    throw InconsistencyError("three_step_normal_pair: n has the wrong dimension");
  for (const auto& [x, y] : out.n_basis) {
    for (const auto& b : v.basis())
      if (!out.n.contains(concat(a.bracket(b, x), zero))) throw InputError("three_step_normal_pair: n is not an ideal");
    for (const auto& b : h.basis())
      if (!out.n.contains(concat(zero, a.bracket(b, y)))) throw InputError("three_step_normal_pair: n is not an ideal");
  }
  out.action = biquotient_derivations(a, out.n_basis);
  out.degree = action_degree(out.action);
  return out;
}

}  // namespace nilq
