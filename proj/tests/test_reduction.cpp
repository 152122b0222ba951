#include "doctest.h"
#include "nilq/catalog.hpp"
#include "nilq/freeness.hpp"
#include "nilq/reduction.hpp"

using namespace nilq;

namespace {

LieDocument h3_plus_line() {
  return parse_lie(
      "algebra h3w dim 4\n"
      "basis X Y Z W\n"
      "[X,Y] = Z\n"
      "sub v = W + Z\n"
      "sub h = W\n");
}

LieDocument three_step_five() {
  return parse_lie(
      "algebra l5 dim 5\n"
      "basis X Y U W Z\n"
      "[X,Y] = U\n"
      "[X,U] = W\n"
      "[Y,U] = Z\n"
      "sub v = X + Z\n"
      "sub h = X, W\n");
}

}  // namespace

TEST_CASE("reduce_by_center") {
  auto w = winkelmann8();
  auto p = reduce_by_center(w.algebra, w.subspace("v"), w.subspace("h"));
  CHECK(p.provenance.empty());
  CHECK(p.algebra.dim() == 8);
  CHECK(p.v == w.subspace("v"));

  auto hz = heisenberg(1);
  const auto& a = hz.algebra;
  auto z = a.span({a.basis_vector(2)});
  auto q = reduce_by_center(a, z, Subspace(3));
  CHECK(q.algebra.dim() == 2);
  CHECK(q.algebra.is_abelian(q.algebra.whole()));
  CHECK(q.v.is_zero());
  CHECK(q.provenance.size() == 1);
  CHECK(q.provenance[0].kind == "quotient");

  auto id = reduce_by_center(a, Subspace(3), Subspace(3));
  CHECK(id.provenance.empty());
  CHECK(id.algebra.dim() == 3);
}

TEST_CASE("reduce_common_shadow") {
  auto w = winkelmann8();
  auto p = reduce_common_shadow(w.algebra, w.subspace("v"), w.subspace("h"));
  CHECK(p.algebra.dim() == 8);
  CHECK(p.v.dim() == 2);
  CHECK(p.h.dim() == 2);
  CHECK(p.provenance[0].complement_v.empty());

  auto hz = heisenberg(1);
  const auto& a = hz.algebra;
  auto x = a.span({a.basis_vector(0)}), y = a.span({a.basis_vector(1)});
  auto q = reduce_common_shadow(a, x, y);
  CHECK(q.algebra.dim() == 1);
  CHECK(q.v.is_zero());
  CHECK(q.h.is_zero());
  CHECK(q.provenance[0].complement_v.size() == 1);
  CHECK(q.provenance[0].complement_h.size() == 1);

  auto same = reduce_common_shadow(a, x, x);
  CHECK(same.v.dim() == 1);
  CHECK(same.h.dim() == 1);
}

TEST_CASE("family_split") {
  auto u = upper4();
  auto s = family_split(u.algebra, u.subspace("v"), u.subspace("h"));
  REQUIRE(s);
  CHECK(u.algebra.format(s->y0) == "Y2");
  CHECK(!s->normalizes_v);
  CHECK(s->reduced.algebra.dim() == 5);

  auto w = winkelmann8();
  CHECK(!family_split(w.algebra, w.subspace("v"), w.subspace("h")));

  auto ab = abelian(3);
  const auto& a = ab.algebra;
  CHECK(family_split(a, a.span({a.basis_vector(0)}), a.span({a.basis_vector(1)})));
}

TEST_CASE("dim1 pipeline routes") {
  auto u = upper4();
  auto r = dim1_pipeline(u, u.subspace("v"), u.subspace("h"));
  REQUIRE(std::holds_alternative<SliceDescription>(r));
  const auto& s = std::get<SliceDescription>(r);
  auto names = make_chart(u, u.subspace("h")).ring.names;
  REQUIRE(s.equations.size() == 1);
  CHECK(parse_polynomial(names, s.equations[0].substr(0, s.equations[0].size() - 4)) ==
        parse_polynomial(names, "z - y2*y3"));
  CHECK(s.route == "abelian ideal");
  CHECK(s.dimension == 3);
  CHECK(!verify_slice(u.algebra, u.subspace("v"), u.subspace("h"), s, 100, 3));

  auto hw = h3_plus_line();
  auto ra = dim1_pipeline(hw, hw.subspace("v"), hw.subspace("h"));
  REQUIRE(std::holds_alternative<SliceDescription>(ra));
  CHECK(std::get<SliceDescription>(ra).route == "ad(X0)-invariant complement");
  CHECK(std::get<SliceDescription>(ra).describe() == "{z = 0}");

  auto h5 = heis5();
  auto rl = dim1_pipeline(h5, h5.subspace("v"), h5.subspace("h"));
  REQUIRE(std::holds_alternative<SliceDescription>(rl));
  CHECK(std::get<SliceDescription>(rl).kind == "linear");
  CHECK(std::get<SliceDescription>(rl).dimension == 3);

  // [X, Y] = Z puts Z0 in ad(X0)(g), so X + Z is conjugate into h
  auto hz = heisenberg(1);
  const auto& a = hz.algebra;
  auto xz = a.span({add(a.basis_vector(0), a.basis_vector(2))}), x = a.span({a.basis_vector(0)});
  CHECK(freeness_check(a, xz, x).verdict == FreenessVerdict::Refuted);
  CHECK_THROWS_AS(dim1_pipeline(hz, xz, x), InputError);
}

TEST_CASE("dim1 pipeline through the quotient by ad(X0)(g^(1))") {
  auto d = three_step_five();
  auto v = d.subspace("v"), h = d.subspace("h");
  CHECK(freeness_check(d.algebra, v, h).verdict == FreenessVerdict::Certified);
  auto r = dim1_pipeline(d, v, h);
  REQUIRE(std::holds_alternative<SliceDescription>(r));
  const auto& s = std::get<SliceDescription>(r);
  CHECK(s.kind == "composed");
  CHECK(s.dimension == 2);
  CHECK(!verify_slice(d.algebra, v, h, s, 200, 17));
}

TEST_CASE("compose_slices") {
  auto u = upper4();
  const auto& a = u.algebra;
  auto v = u.subspace("v"), h = u.subspace("h"), n = u.subspace("n");
  REQUIRE(a.is_ideal(n));
  auto q = quotient_algebra(a, n);
  auto top = levi_malcev_decomposition(q.algebra, Subspace(q.algebra.dim()), Subspace(q.algebra.dim()));
  SliceDescription s_n = linear_slice(q.algebra, std::get<LeviMalcevDecomposition>(top));
  SliceDescription s = std::get<SliceDescription>(dim1_pipeline(u, v, h));
  SliceDescription c = compose_slices(a, q, v, h, s_n, s, 5);
  CHECK(c.dimension == s.dimension);
  CHECK(!verify_slice(a, v, h, c, 200, 9));

  // N = {e}: the composition is S_N itself
  auto h5 = heis5();
  const auto& b = h5.algebra;
  auto bv = h5.subspace("v"), bh = h5.subspace("h");
  auto lm = std::get<LeviMalcevDecomposition>(levi_malcev_decomposition(b, bv, bh));
  auto q0 = quotient_algebra(b, Subspace(b.dim()));
  auto ident = std::get<LeviMalcevDecomposition>(levi_malcev_decomposition(b, Subspace(5), Subspace(5)));
  SliceDescription lifted = compose_slices(b, q0, bv, bh, linear_slice(b, lm), linear_slice(b, ident));
  CHECK(lifted.dimension == 3);

  // a factor map that ignores H is caught by the roundtrip check
  SliceDescription bad = linear_slice(b, lm);
  auto f = bad.factor;
  bad.factor = [f](const Vector& g) {
    auto r = f(g);
    return Factorization{r.v, star(heis5().algebra, r.s, r.h), Vector(5)};
  };
  CHECK_THROWS_AS(compose_slices(b, q0, bv, bh, bad, linear_slice(b, ident)), InconsistencyError);
}
