#include "doctest.h"
#include "nilq/catalog.hpp"
#include "nilq/induced.hpp"
#include "nilq/witness.hpp"

using namespace nilq;

TEST_CASE("quadratic numbers") {
  auto r3 = QuadraticNumber::sqrt_of(-3);
  CHECK(r3 * r3 == QuadraticNumber(-3));
  auto c = QuadraticNumber(2) * r3;
  CHECK(c * c == QuadraticNumber(-12));
  CHECK((QuadraticNumber(1) / c) * c == QuadraticNumber(1));
  CHECK(QuadraticNumber(Scalar(1) / 2, 3, 5) - QuadraticNumber(0, 3, 5) == QuadraticNumber(Scalar(1) / 2));
  CHECK_THROWS_AS(r3 + QuadraticNumber::sqrt_of(2), CapabilityError);
  auto s = quadratic_sqrt(QuadraticNumber(-12), 0);
  REQUIRE(s);
  CHECK(*s * *s == QuadraticNumber(-12));
  CHECK(quadratic_sqrt(QuadraticNumber(Scalar(9) / 4), 0) == QuadraticNumber(Scalar(3) / 2));
  CHECK_FALSE(quadratic_sqrt(QuadraticNumber(2), -3));
  auto t = quadratic_sqrt(QuadraticNumber(4, 2, 3), 3);  // (1 + sqrt 3)^2 = 4 + 2 sqrt 3
  REQUIRE(t);
  CHECK(*t * *t == QuadraticNumber(4, 2, 3));
  auto dec = squarefree_decomposition(Scalar(-12));
  CHECK(dec->first == -3);
  CHECK(dec->second == 2);
}

TEST_CASE("properness witnesses") {
  auto y = yoshino7();
  auto iy = induced_action(y, y.subspace("v"), y.subspace("h"));
  auto ry = properness_witness_search(iy.family, 4);
  REQUIRE(ry.found);
  CHECK(verify_witness(iy.family, ry));
  for (const auto& s : ry.group_ray) MESSAGE("s: " << format_laurent(s));
  for (const auto& s : ry.point_ray) MESSAGE("x: " << format_laurent(s));

  auto w = winkelmann8();
  auto iw = induced_action(w, w.subspace("v"), w.subspace("h"));
  auto rw = properness_witness_search(iw.family, 4);
  CHECK_FALSE(rw.found);
  MESSAGE("winkelmann nodes " << rw.nodes << " exhausted " << rw.budget_exhausted);

  PolyRing r({"x"});
  auto rt = properness_witness_search({parse_derivation(r, "d/dx")}, 4);
  CHECK_FALSE(rt.found);
  CHECK_FALSE(rt.budget_exhausted);
}
