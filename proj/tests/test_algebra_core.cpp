#include <random>

#include "doctest.h"
#include "nilq/catalog.hpp"

using namespace nilq;

namespace {

Vector vec(const LieAlgebra& a, const std::string& s) { return parse_combination(a, s); }

std::vector<std::size_t> series_dims(const LieAlgebra& a) {
  std::vector<std::size_t> out;
  for (const auto& s : a.central_series()) out.push_back(s.dim());
  return out;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-5, 5);
  Vector v(n);
  for (auto& x : v) x = Scalar(d(rng)) / (1 + (d(rng) + 5) % 3);
  return v;
}

}  // namespace

TEST_CASE("bracket reads structure constants") {
  auto h3 = heisenberg(1).algebra;
  CHECK(h3.bracket(vec(h3, "X"), vec(h3, "Y")) == vec(h3, "Z"));
  CHECK(h3.bracket(vec(h3, "Y"), vec(h3, "X")) == vec(h3, "-Z"));
  auto w = winkelmann8().algebra;
  CHECK(w.bracket(vec(w, "X2"), vec(w, "Y1")) == vec(w, "Y3 + Z2"));
  CHECK(is_zero(w.bracket(vec(w, "X2 + 3*Y1"), vec(w, "X2 + 3*Y1"))));
  CHECK_THROWS_AS(w.bracket(Vector(3), Vector(8)), InputError);
}

TEST_CASE("bilinearity and antisymmetry on random vectors") {
  std::mt19937_64 rng(1);
  auto a = yoshino7().algebra;
  for (int s = 0; s < 50; ++s) {
    Vector x = random_vector(rng, 7), y = random_vector(rng, 7), z = random_vector(rng, 7);
    Scalar c = Scalar(s - 20) / 3;
    CHECK(a.bracket(x, y) == negate(a.bracket(y, x)));
    CHECK(a.bracket(add(scale(c, x), z), y) == add(scale(c, a.bracket(x, y)), a.bracket(z, y)));
  }
}

TEST_CASE("jacobi check") {
  CHECK_FALSE(jacobi_check(winkelmann8().algebra.structure()));
  CHECK_FALSE(jacobi_check(yoshino7().algebra.structure()));
  // [X1,X2] = X3, [X1,X3] = X1: hand expansion of the cyclic sum leaves X3.
  StructureConstants bad{3, {}};
  bad.brackets[{0, 1}] = Vector{0, 0, 1};
  bad.brackets[{0, 2}] = Vector{1, 0, 0};
  auto v = jacobi_check(bad);
  REQUIRE(v);
  CHECK(v->i == 0);
  CHECK(v->j == 1);
  CHECK(v->k == 2);
  CHECK(v->residual == Vector{0, 0, 1});
  // Adding [X1,Y1] = Y3 keeps the identity (Y3 is central and [X1,Y3+Z2] = 0);
  // adding [X1,Y1] = Y2 breaks it at (X1, X2, Y1) with residual [X2,-Y2] = -Y4.
  StructureConstants w = winkelmann8().algebra.structure();
  w.brackets[{0, 2}] = unit_vector(8, 4);
  CHECK_FALSE(jacobi_check(w));
  w.brackets[{0, 2}] = unit_vector(8, 3);
  auto wv = jacobi_check(w);
  REQUIRE(wv);
  CHECK(wv->i == 0);
  CHECK(wv->j == 1);
  CHECK(wv->k == 2);
  CHECK(wv->residual == negate(unit_vector(8, 5)));
  CHECK_THROWS_AS(LieAlgebra("bad", {"X1", "X2", "X3"}, bad), InputError);
}

TEST_CASE("central series") {
  CHECK(series_dims(winkelmann8().algebra) == std::vector<std::size_t>{8, 4, 1, 0});
  CHECK(series_dims(yoshino7().algebra) == std::vector<std::size_t>{7, 4, 2, 1, 0});
  CHECK(series_dims(abelian(4).algebra) == std::vector<std::size_t>{4, 0});
  CHECK(winkelmann8().algebra.nilpotency_step() == 3);
  CHECK(yoshino7().algebra.nilpotency_step() == 4);
  CHECK(abelian(4).algebra.nilpotency_step() == 1);
  StructureConstants sl2{3, {}};
  sl2.brackets[{0, 1}] = Vector{0, 0, 1};
  sl2.brackets[{0, 2}] = Vector{-2, 0, 0};
  sl2.brackets[{1, 2}] = Vector{0, 2, 0};
  CHECK_THROWS_AS(LieAlgebra("sl2", {"H", "E", "F"}, sl2), NotNilpotentError);
}

TEST_CASE("series terms are ideals and respect the filtration") {
  std::mt19937_64 rng(2);
  for (auto doc : {winkelmann8(), yoshino7(), upper_triangular(5)}) {
    const auto& a = doc.algebra;
    const auto& s = a.central_series();
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      CHECK(a.is_ideal(s[j]));
      CHECK(s[j].contains(s[j + 1]));
      CHECK(s[j] != s[j + 1]);
    }
    for (int t = 0; t < 20; ++t) {
      std::size_t j = rng() % s.size(), k = rng() % s.size();
      auto pick = [&](const Subspace& sp) {
        Vector c = random_vector(rng, sp.dim());
        return sp.is_zero() ? Vector(a.dim()) : sp.combine(c);
      };
      CHECK(a.series_term(j + k + 1).contains(a.bracket(pick(s[j]), pick(s[k]))));
    }
  }
}

TEST_CASE("subspace lattice") {
  auto d = winkelmann8();
  const auto& a = d.algebra;
  auto v = d.subspace("v"), h = d.subspace("h");
  CHECK(intersect(a.span({vec(a, "X1")}), a.span({vec(a, "X2")})).is_zero());
  CHECK(intersect(v, h).is_zero());
  CHECK(sum(v, h).dim() == 4);
  CHECK(a.is_subalgebra(h));
  CHECK(a.is_subalgebra(v));
  CHECK_FALSE(a.is_ideal(a.span({vec(a, "X2")})));
  CHECK(a.subalgebra_closure(a.span({vec(a, "X2"), vec(a, "Y1")})) ==
        a.span({vec(a, "X2"), vec(a, "Y1"), vec(a, "Y3 + Z2"), vec(a, "Z1")}));
  // canonical form: re-spanning the basis is bitwise identical
  auto s = a.span({vec(a, "2*X1 + Y2"), vec(a, "X1 - Y2"), vec(a, "Z1")});
  CHECK(a.span(s.basis()) == s);
  CHECK(a.span(s.basis()).basis() == s.basis());
  CHECK_THROWS_AS(intersect(Subspace(3), Subspace(4)), InputError);
}

TEST_CASE("center") {
  auto w = winkelmann8().algebra;
  CHECK(w.center() == w.span({vec(w, "Y3"), vec(w, "Y4"), vec(w, "Z1")}));
  CHECK(abelian(3).algebra.center() == abelian(3).algebra.whole());
  auto h = heisenberg(1).algebra;
  CHECK(h.center() == h.span({vec(h, "Z")}));
}

TEST_CASE("quotient algebra") {
  auto w = winkelmann8().algebra;
  auto q = quotient_algebra(w, w.span({vec(w, "Z1")}));
  CHECK(q.algebra.dim() == 7);
  CHECK(q.algebra.nilpotency_step() == 2);
  auto ab = quotient_algebra(w, w.series_term(1));
  CHECK(ab.algebra.dim() == 4);
  CHECK(ab.algebra.nilpotency_step() == 1);
  auto y = yoshino7().algebra;
  auto qy = quotient_algebra(y, y.center());
  CHECK_FALSE(jacobi_check(qy.algebra.structure()));
  CHECK_THROWS_AS(quotient_algebra(w, w.span({vec(w, "X2")})), InputError);
}

TEST_CASE("pi_j") {
  auto d = winkelmann8();
  const auto& w = d.algebra;
  auto p0 = pi_j(w, 0);
  CHECK(p0.dim() == 4);
  CHECK(p0.image(d.subspace("v")) == p0.image(d.subspace("h")));
  auto last = pi_j(w, w.nilpotency_step() - 1);
  CHECK(last.dim() == w.series_term(w.nilpotency_step() - 1).dim());
  CHECK_THROWS_AS(pi_j(w, 3), InputError);
}

TEST_CASE("presentations of catalog algebras are accepted") {
  for (const auto& name : catalog_names()) {
    auto e = catalog_entry(name);
    REQUIRE(e);
    CHECK(e->doc.algebra.presentation().has_value());
  }
}
