#include "doctest.h"
#include "nilq/catalog.hpp"
#include "nilq/induced.hpp"
#include "nilq/three_step.hpp"

using namespace nilq;

TEST_CASE("three-step normal pair") {
  auto w = winkelmann8();
  const auto& a = w.algebra;
  auto p = three_step_normal_pair(a, w.subspace("v"), w.subspace("h"));
  CHECK(p.x.size() == 2);
  CHECK(p.z[0] == parse_combination(a, "Z1"));
  CHECK(p.z[1] == parse_combination(a, "Z2"));
  CHECK(p.n.dim() == 2);
  CHECK(p.v1.is_zero());
  for (const auto& [x, y] : p.phi)
    for (const auto& [x2, y2] : p.phi) {
      Vector bx = a.bracket(x, x2), by = a.bracket(y, y2);
      for (const auto& [x3, y3] : p.phi)
        if (bx == x3) CHECK(by == y3);
    }
  CHECK(p.degree == 2);
  for (const auto& d : p.action)
    for (std::size_t i = 0; i < d.ring.size(); ++i)
      CHECK(apply(d, apply(d, apply(d, Polynomial::variable(i)))).is_zero());

  auto y = yoshino7();
  CHECK_THROWS_AS(three_step_normal_pair(y.algebra, y.subspace("v"), y.subspace("h")), InputError);
  CHECK_THROWS_WITH_AS(three_step_normal_pair(a, w.subspace("v"), a.span({parse_combination(a, "X1")})),
                       "three_step_normal_pair: pi_0(v) differs from pi_0(h)", InputError);
}

TEST_CASE("action degrees") {
  auto w = winkelmann8();
  const auto& a = w.algebra;
  auto q = quotient_algebra(a, a.span({parse_combination(a, "Z1")}));
  // X1 + Z1 falls into h modulo Z1, so only X2 + Z2 is kept on the quotient
  Subspace v = q.project(a.span({parse_combination(a, "X2 + Z2")}));
  LieDocument doc{q.algebra, {{"v", v}, {"h", q.project(w.subspace("h"))}}, {}, {}};
  CHECK(q.algebra.nilpotency_step() == 2);
  auto ia = induced_action(doc, doc.subspace("v"), doc.subspace("h"));
  CHECK(action_degree(ia.family) == 1);

  auto iw = induced_action(w, w.subspace("v"), w.subspace("h"));
  CHECK(action_degree(iw.family) == 2);

  PolyRing r({"x"});
  CHECK(action_degree({parse_derivation(r, "d/dx")}) == 1);
}
