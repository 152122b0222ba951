#include <random>

#include "doctest.h"
#include "nilq/catalog.hpp"
#include "nilq/decomposition.hpp"

using namespace nilq;

namespace {

Vector vec(const LieAlgebra& a, const std::string& s) { return parse_combination(a, s); }

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-10, 10);
  Vector v(n);
  for (auto& x : v) x = Scalar(d(rng)) / (1 + (d(rng) + 10) % 4);
  return v;
}

}  // namespace

TEST_CASE("levi-malcev bases") {
  auto w = winkelmann8().algebra;
  std::vector<Vector> basis;
  for (auto l : {"X1", "X2", "Y1", "Y2", "Y3", "Y4", "Z2", "Z1"}) basis.push_back(vec(w, l));
  CHECK(is_levi_malcev_basis(w, basis));
  auto h = heisenberg(1).algebra;
  CHECK(is_levi_malcev_basis(h, {vec(h, "Z"), vec(h, "X"), vec(h, "Y")}));
  CHECK_FALSE(is_levi_malcev_basis(h, {vec(h, "X"), vec(h, "Y"), vec(h, "Z + X")}));
  CHECK_THROWS_AS(is_levi_malcev_basis(h, {vec(h, "X"), vec(h, "Y")}), InputError);
}

TEST_CASE("levi-malcev decomposition existence") {
  auto wd = winkelmann8();
  auto r = levi_malcev_decomposition(wd.algebra, wd.subspace("v"), wd.subspace("h"));
  REQUIRE(std::holds_alternative<NotExists>(r));
  CHECK(std::get<NotExists>(r).level == 0);

  auto h = heisenberg(1).algebra;
  auto hr = levi_malcev_decomposition(h, h.span({vec(h, "X")}), h.span({vec(h, "Y")}));
  REQUIRE(std::holds_alternative<LeviMalcevDecomposition>(hr));
  auto d = std::get<LeviMalcevDecomposition>(hr);
  CHECK(d.parts[1] == h.span({vec(h, "Z")}));
  CHECK(is_levi_malcev_basis(h, d.witness_basis()));

  auto zero = levi_malcev_decomposition(h, Subspace(3), Subspace(3));
  CHECK(std::get<LeviMalcevDecomposition>(zero).parts[1] == h.whole());
  CHECK_THROWS_AS(levi_malcev_decomposition(h, h.span({vec(h, "X")}), h.span({vec(h, "X")})), InputError);
}

TEST_CASE("h slices") {
  auto wd = winkelmann8();
  auto s = h_slice(wd.algebra, wd.subspace("h")).parts[0];
  const auto& w = wd.algebra;
  CHECK(s == w.span({vec(w, "Y1"), vec(w, "Y2"), vec(w, "Y3"), vec(w, "Y4"), vec(w, "Z1"), vec(w, "Z2")}));
  auto yd = yoshino7();
  const auto& y = yd.algebra;
  CHECK(h_slice(y, yd.subspace("h")).parts[0] ==
        y.span({vec(y, "Y1"), vec(y, "Y2"), vec(y, "Y3"), vec(y, "Z1"), vec(y, "Z2")}));
  CHECK(h_slice(y, Subspace(7)).parts[0] == y.whole());
  for (const auto& name : catalog_names()) {
    auto e = catalog_entry(name);
    for (const auto& [n, sub] : e->doc.subspaces)
      if (e->doc.algebra.is_subalgebra(sub))
        CHECK(is_levi_malcev_basis(e->doc.algebra, h_slice(e->doc.algebra, sub).witness_basis()));
  }
}

TEST_CASE("factorize") {
  auto h = heisenberg(1).algebra;
  auto d = std::get<LeviMalcevDecomposition>(levi_malcev_decomposition(h, h.span({vec(h, "X")}), h.span({vec(h, "Y")})));
  auto c = factorize(h, d, vec(h, "X + Y"));
  CHECK(c[0] == vec(h, "X"));
  CHECK(c[1] == vec(h, "-1/2*Z"));
  CHECK(c[2] == vec(h, "Y"));
  auto id = factorize(h, d, Vector(3));
  for (const auto& x : id) CHECK(is_zero(x));

  std::mt19937_64 rng(7);
  for (const auto& name : catalog_names()) {
    auto e = catalog_entry(name);
    const auto& a = e->doc.algebra;
    std::vector<LeviMalcevDecomposition> ds;
    for (const auto& [n, sub] : e->doc.subspaces)
      if (a.is_subalgebra(sub)) ds.push_back(h_slice(a, sub));
    ds.push_back(h_slice(a, Subspace(a.dim())));
    for (const auto& dec : ds)
      for (int s = 0; s < 40; ++s) {
        Vector g = random_vector(rng, a.dim());
        auto comps = factorize(a, dec, g);
        CHECK(star_all(a, comps) == g);
        for (std::size_t p = 0; p < comps.size(); ++p) CHECK(dec.parts[p].contains(comps[p]));
        // uniqueness: factorizing the product of given components returns them
        std::vector<Vector> given;
        for (std::size_t p = 0; p < dec.parts.size(); ++p)
          given.push_back(dec.parts[p].is_zero() ? Vector(a.dim()) : dec.parts[p].combine(random_vector(rng, dec.parts[p].dim())));
        CHECK(factorize(a, dec, star_all(a, given)) == given);
      }
  }
}

TEST_CASE("generic freeness when a decomposition exists") {
  auto h = heisenberg(2).algebra;
  auto v = h.span({vec(h, "X1")}), hh = h.span({vec(h, "Y2")});
  REQUIRE(std::holds_alternative<LeviMalcevDecomposition>(levi_malcev_decomposition(h, v, hh)));
  std::mt19937_64 rng(8);
  for (int s = 0; s < 200; ++s) {
    Matrix m = Ad(h, GroupElement{random_vector(rng, 5)});
    std::vector<Vector> cols{mat_vec(m, v.basis()[0]), hh.basis()[0]};
    CHECK(h.span(cols).dim() == 2);
  }
}
