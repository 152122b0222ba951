#include "nilq/reduction.hpp"

#include "nilq/freeness.hpp"

#include <random>

namespace nilq {

namespace {

Matrix columns(const std::vector<Vector>& vs, std::size_t rows) {
  Matrix m = zero_matrix(rows, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t r = 0; r < rows; ++r) m[r][j] = vs[j][r];
  return m;
}

Vector combine(const std::vector<Vector>& vs, const Vector& coords, std::size_t n) {
  Vector out(n);
  for (std::size_t j = 0; j < vs.size(); ++j)
    if (!is_zero(coords[j])) out = add(out, scale(coords[j], vs[j]));
  return out;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  Vector x(n);
  for (auto& c : x) c = Scalar(num(rng)) / den(rng);
  return x;
}

Vector random_in(std::mt19937_64& rng, const Subspace& s) {
  return s.is_zero() ? Vector(s.ambient()) : s.combine(random_vector(rng, s.dim()));
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

ReductionStep restrict_step(const SubalgebraEmbedding& e) {
  return {"restrict", e.image, columns(e.image.basis(), e.image.ambient()), {}, {}};
}

}  // namespace

ReducedProblem reduce_by_center(const LieAlgebra& a, const Subspace& v, const Subspace& h) {
  ReducedProblem p{a, v, h, {}};
  for (std::size_t guard = 0; guard <= a.dim(); ++guard) {
    Subspace z = p.algebra.center();
    Subspace k = sum(intersect(p.v, z), intersect(p.h, z));
    if (k.is_zero()) return p;
    auto q = quotient_algebra(p.algebra, k);
    p.provenance.push_back({"quotient", k, q.projection, {}, {}});
    p.v = q.project(p.v);
    p.h = q.project(p.h);
    p.algebra = q.algebra;
  }
  throw InconsistencyError("reduce_by_center: central intersections did not vanish within dim g steps");
}

ReducedProblem reduce_common_shadow(const LieAlgebra& a, const Subspace& v, const Subspace& h) {
  const Subspace& g1_series = a.series_term(1);
  Subspace n = intersect(sum(v, g1_series), sum(h, g1_series));
  Subspace v0 = intersect(n, v), h0 = intersect(n, h);
  Subspace g1 = n;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Subspace cand = sum(g1, a.span({a.basis_vector(i)}));
    if (cand == g1) continue;
    if (intersect(cand, v) == v0 && intersect(cand, h) == h0) g1 = cand;
  }
  auto e = as_algebra(a, g1, a.name() + "_g1");
  ReductionStep step = restrict_step(e);
  step.complement_v = extend_by(v0, v, v.basis());
  step.complement_h = extend_by(h0, h, h.basis());
  return {e.algebra, e.restrict(v0), e.restrict(h0), {step}};
}

std::optional<FamilySplit> family_split(const LieAlgebra& a, const Subspace& v, const Subspace& h) {
  std::size_t n = a.dim();
  if (n == 0) return std::nullopt;
  Subspace base = sum(sum(v, h), a.series_term(1));
  std::vector<Vector> candidates;
  for (std::size_t i = 0; i < n; ++i) candidates.push_back(a.basis_vector(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      candidates.push_back(add(a.basis_vector(i), a.basis_vector(j)));
      candidates.push_back(sub(a.basis_vector(i), a.basis_vector(j)));
    }
  auto preserves = [&](const Vector& y, const Subspace& s) {
    for (const auto& w : s.basis())
      if (!s.contains(a.bracket(y, w))) return false;
    return true;
  };
  for (const auto& y0 : candidates) {
    if (base.contains(y0)) continue;
    bool on_v = preserves(y0, v);
    if (!on_v && !preserves(y0, h)) continue;
    Subspace g1 = base;
    for (std::size_t k = 0; k < n && g1.dim() + 1 < n; ++k) {
      Subspace cand = sum(g1, a.span({a.basis_vector(k)}));
      if (!cand.contains(y0)) g1 = cand;
    }
    if (g1.dim() + 1 != n) continue;
    auto d = decompose(a, {a.span({y0}), g1}, std::nullopt);
    if (!std::holds_alternative<LeviMalcevDecomposition>(d)) continue;
    auto e = as_algebra(a, g1, a.name() + "_g1");
    ReducedProblem reduced{e.algebra, e.restrict(v), e.restrict(h), {restrict_step(e)}};
    return FamilySplit{y0, g1, on_v, std::move(reduced)};
  }
  return std::nullopt;
}

std::string SliceDescription::describe() const {
  if (kind == "level-set") return "{" + join(equations, ", ") + "}";
  if (kind == "linear") return "exp span{" + join(equations, ", ") + "}";
  return join(equations, "; ");
}

SliceDescription linear_slice(const LieAlgebra& a, const LeviMalcevDecomposition& d) {
  if (d.parts.size() != 3) throw InputError("linear_slice: expected a decomposition v ⊕ s ⊕ h");
  SliceDescription out;
  out.kind = "linear";
  out.route = "levi-malcev";
  for (const auto& b : d.part_bases[1]) out.equations.push_back(a.format(b));
  out.dimension = d.parts[1].dim();
  out.factor = [a, d](const Vector& g) {
    auto c = factorize(a, d, g);
    return Factorization{c[0], c[1], c[2]};
  };
  return out;
}

SliceDescription level_set_slice(const InducedAction& action, const std::vector<Polynomial>& fs) {
  if (fs.size() != action.family.size()) throw InputError("level_set_slice: one function per generator is required");
  SliceDescription out;
  out.kind = "level-set";
  out.route = "slice functions";
  for (const auto& f : fs) out.equations.push_back(f.to_string(action.chart.ring.names) + " = 0");
  out.dimension = action.chart.dim() - fs.size();
  auto phi = flow(action.family);
  out.factor = [chart = action.chart, gens = action.generators, fs, phi](const Vector& g) {
    const LieAlgebra& a = chart.algebra;
    Vector y = chart.coordinates(g);
    std::size_t m = y.size(), k = fs.size();
    Vector pt(m + k);
    for (std::size_t i = 0; i < m; ++i) pt[i] = y[i];
    Vector vlog(a.dim());
    for (std::size_t j = 0; j < k; ++j) {
      Scalar tau = fs[j].evaluate(y);
      pt[m + j] = -tau;
      vlog = add(vlog, scale(tau, gens[j]));
    }
    Vector y0(m);
    for (std::size_t i = 0; i < m; ++i) y0[i] = phi[i].evaluate(pt);
    Vector s = chart.point(y0);
    Vector hlog = star(a, star(a, negate(s), negate(vlog)), g);
    return Factorization{vlog, s, hlog};
  };
  return out;
}

std::optional<std::string> verify_slice(const LieAlgebra& a, const Subspace& v, const Subspace& h,
                                        const SliceDescription& slice, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    Vector g = random_vector(rng, a.dim());
    std::string at = "sample " + std::to_string(k) + " g = " + to_string(g);
    Factorization f = slice.factor(g);
    if (!v.contains(f.v)) return at + ": V-part outside v";
    if (!h.contains(f.h)) return at + ": H-part outside h";
    if (star_all(a, std::vector<Vector>{f.v, f.s, f.h}) != g) return at + ": product differs from g";
    Factorization fs = slice.factor(f.s);
    if (!is_zero(fs.v) || !is_zero(fs.h) || fs.s != f.s) return at + ": slice point not fixed";
    Vector v1 = random_in(rng, v), h1 = random_in(rng, h);
    Factorization moved = slice.factor(star_all(a, std::vector<Vector>{v1, f.s, h1}));
    if (moved.v != v1 || moved.h != h1 || moved.s != f.s) return at + ": orbit meets the slice twice";
  }
  return std::nullopt;
}

SliceDescription compose_slices(const LieAlgebra& a, const QuotientAlgebra& q, const Subspace& v,
                                const Subspace& h, const SliceDescription& s_n, const SliceDescription& s,
                                std::uint64_t seed) {
  if (!a.is_ideal(q.kernel)) throw InputError("compose_slices: N is not an ideal");
  std::vector<Vector> cv = extend_by(intersect(v, q.kernel), v, v.basis());
  std::vector<Vector> ch = extend_by(intersect(h, q.kernel), h, h.basis());
  auto lifter = [&](const std::vector<Vector>& comp) {
    std::vector<Vector> images;
    for (const auto& c : comp) images.push_back(q.project(c));
    return [comp, m = columns(images, q.algebra.dim()), n = a.dim()](const Vector& x) {
      if (comp.empty()) {
        if (!is_zero(x)) throw InconsistencyError("compose_slices: projected part has no lift");
        return Vector(n);
      }
      auto c = solve(m, x);
      if (!c) throw InconsistencyError("compose_slices: projected part has no lift");
      return combine(comp, *c, n);
    };
  };
  SliceDescription out;
  out.kind = "composed";
  out.route = s.route + " within N, " + s_n.route + " modulo N";
  out.equations = s.equations;
  for (const auto& e : s_n.equations) out.equations.push_back("mod N: " + e);
  out.dimension = s.dimension - (a.dim() - q.kernel.dim() - s_n.dimension);
  out.factor = [a, proj = q.projection, lift_v = lifter(cv), lift_h = lifter(ch), fn = s_n.factor,
                f = s.factor](const Vector& g) {
    Factorization top = fn(mat_vec(proj, g));
    Vector v1 = lift_v(top.v), h1 = lift_h(top.h);
    Factorization inner = f(star(a, star(a, negate(v1), g), negate(h1)));
    return Factorization{star(a, v1, inner.v), inner.s, star(a, inner.h, h1)};
  };
  if (auto failure = verify_slice(a, v, h, out, kComposeSamples, seed))
    throw InconsistencyError("compose_slices: roundtrip failed at " + *failure);
  return out;
}

namespace {

std::optional<SliceDescription> invariant_complement_route(const LieDocument& doc, const Subspace& v,
                                                           const Subspace& h, const Vector& x0, const Vector& z0) {
  const LieAlgebra& a = doc.algebra;
  auto parts = decompose(a, {a.span({z0}), h}, 0);
  auto* d = std::get_if<LeviMalcevDecomposition>(&parts);
  if (!d) return std::nullopt;
  Subspace s = sum(d->parts[0], d->parts[1]);
  std::vector<Vector> image;
  for (const auto& b : s.basis()) image.push_back(a.bracket(x0, b));
  Subspace base = a.span(image);
  if (!s.contains(base) || base.contains(z0)) return std::nullopt;
  std::vector<Vector> dirs = base.basis();
  for (const auto& e : extend_by(sum(base, a.span({z0})), s, s.basis())) dirs.push_back(e);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    names.push_back(direction_name(doc, dirs[i], "s" + std::to_string(i + 1)));
  dirs.push_back(z0);
  names.push_back(direction_name(doc, z0, "z0"));
  InducedAction act = induced_action(make_chart(a, h, ChartKind::Log, dirs, names), v);
  Polynomial f = Polynomial::variable(dirs.size() - 1);
  if (apply(act.family[0], f) != Polynomial(1)) return std::nullopt;
  SliceDescription out = level_set_slice(act, {f});
  out.route = "ad(X0)-invariant complement";
  return out;
}

}  // namespace

std::variant<SliceDescription, Unsupported> dim1_pipeline(const LieDocument& doc, const Subspace& v,
                                                          const Subspace& h) {
  const LieAlgebra& a = doc.algebra;
  if (v.dim() != 1) throw InputError("dim1_pipeline: v must be one-dimensional");
  if (!a.is_subalgebra(h)) throw InputError("dim1_pipeline: h is not a subalgebra");
  if (!intersect(v, h).is_zero()) throw InputError("dim1_pipeline: v meets h; the action is not free");
  if (freeness_check(a, v, h).verdict == FreenessVerdict::Refuted)
    throw InputError("dim1_pipeline: the action is not free");
  auto finish = [&](SliceDescription s) -> SliceDescription {
    if (auto failure = verify_slice(a, v, h, s, 20, 0))
      throw InconsistencyError("dim1_pipeline: slice check failed at " + *failure);
    return s;
  };
  auto lm = levi_malcev_decomposition(a, v, h);
  if (auto* d = std::get_if<LeviMalcevDecomposition>(&lm)) return finish(linear_slice(a, *d));

  std::size_t l = a.nilpotency_step();
  const Subspace& top = a.series_term(l - 1);
  Vector w = v.basis()[0];
  std::vector<Vector> cols = h.basis();
  for (const auto& b : top.basis()) cols.push_back(b);
  auto c = solve(columns(cols, a.dim()), w);
  if (!c) throw InputError("dim1_pipeline: v is not of the form <X0 + Z0> with X0 in h and Z0 in g^(l-1)");
  Vector x0 = combine(h.basis(), *c, a.dim());
  Vector z0 = sub(w, x0);

  std::size_t r = l;
  for (std::size_t i = 0; i < a.dim(); ++i) r = std::min(r, a.level_of(a.bracket(x0, a.basis_vector(i))));
  if (r + 1 >= l || h.dim() == 1)
    if (auto s = invariant_complement_route(doc, v, h, x0, z0)) return finish(*s);

  if (a.is_abelian(a.ideal_closure(v))) {
    InducedAction act = induced_action(doc, v, h);
    for (unsigned b = 1; b <= kSliceDegreeCeiling; ++b)
      if (auto fs = slice_function_search(act.family, b)) {
        SliceDescription s = level_set_slice(act, *fs);
        s.route = "abelian ideal";
        return finish(s);
      }
    return Unsupported{"v lies in an abelian ideal but no slice function of degree <= " +
                       std::to_string(kSliceDegreeCeiling) + " exists"};
  }

  if (l == 3) {
    std::vector<Vector> image;
    for (const auto& b : a.series_term(1).basis()) image.push_back(a.bracket(x0, b));
    Subspace s2 = a.span(image);
    if (s2.contains(z0)) throw InputError("dim1_pipeline: Z0 lies in ad(X0)(g^(1)); the action is not free");
    if (!s2.is_zero()) {
      auto q = quotient_algebra(a, s2);
      LieDocument qdoc{q.algebra, {}, {}, std::nullopt};
      auto upper = dim1_pipeline(qdoc, q.project(v), q.project(h));
      if (auto* u = std::get_if<Unsupported>(&upper)) return Unsupported{"modulo ad(X0)(g^(1)): " + u->reason};
      auto inner = levi_malcev_decomposition(a, Subspace(a.dim()), intersect(h, s2));
      SliceDescription within = linear_slice(a, std::get<LeviMalcevDecomposition>(inner));
      SliceDescription s = compose_slices(a, q, v, h, std::get<SliceDescription>(upper), within);
      s.route = "quotient by ad(X0)(g^(1)), then " + std::get<SliceDescription>(upper).route;
      return s;
    }
  }

  return Unsupported{"no route applies: l = " + std::to_string(l) + ", ad(X0)(g) lies in g^(" + std::to_string(r) +
                     ") only, dim h = " + std::to_string(h.dim()) + ", the ideal generated by v is not abelian" +
                     (l == 3 ? ", ad(X0)(g^(1)) = 0" : "")};
}

}  // namespace nilq
