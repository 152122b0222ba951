#include <random>

#include "doctest.h"
#include "nilq/derivation.hpp"

using namespace nilq;

namespace {

const PolyRing kW({"y1", "y2", "y3", "y4", "z2", "z1"});
const PolyRing kY({"y1", "y2", "z2", "y3", "z1"});

Polynomial poly(const PolyRing& r, const std::string& s) { return parse_polynomial(r.names, s); }

Polynomial random_poly(std::mt19937_64& rng, std::size_t vars) {
  std::uniform_int_distribution<int> c(-5, 5), e(0, 2);
  Polynomial p;
  for (int k = 0; k < 4; ++k) {
    Monomial m(vars);
    for (auto& x : m) x = e(rng);
    p.add_term(m, Scalar(c(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("apply and leibniz") {
  PolyRing r({"z"});
  auto dz = parse_derivation(r, "d/dz");
  CHECK(apply(dz, poly(r, "z^2")) == poly(r, "2*z"));

  auto d = parse_derivation(kW, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1");
  Polynomial p = Polynomial::variable(5);
  p = apply(d, p);
  CHECK(p == poly(kW, "z2"));
  p = apply(d, p);
  CHECK(p == poly(kW, "1 + y1"));
  CHECK(apply(d, p).is_zero());

  std::mt19937_64 rng(3);
  for (int s = 0; s < 50; ++s) {
    auto a = random_poly(rng, 6), b = random_poly(rng, 6);
    CHECK(apply(d, a * b) == apply(d, a) * b + a * apply(d, b));
  }
}

TEST_CASE("triangularity and local nilpotence") {
  auto d = parse_derivation(kW, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1");
  CHECK(is_triangular(d));
  CHECK(is_locally_nilpotent(d));
  PolyRing r({"x", "y"});
  auto rot = parse_derivation(r, "y*d/dx - x*d/dy");
  CHECK_FALSE(is_triangular(rot));
  CHECK_FALSE(is_locally_nilpotent(rot));
  CHECK_THROWS_AS(exp_derivation(rot, 2, Polynomial::variable(0)), InputError);
  auto back = parse_derivation(r, "y*d/dx");
  CHECK_FALSE(is_triangular(back));
  CHECK(is_locally_nilpotent(back));
}

TEST_CASE("commutators") {
  auto d = parse_derivation(kW, "y2*d/dy3 + d/dz1");
  auto e = parse_derivation(kW, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1");
  CHECK(commutator(d, e) == Derivation(kW));
  CHECK(pairwise_commuting({d, e}));
  PolyRing r({"x", "y"});
  auto dx = parse_derivation(r, "d/dx"), xdy = parse_derivation(r, "x*d/dy");
  CHECK(commutator(dx, xdy) == parse_derivation(r, "d/dy"));
}

TEST_CASE("exponential and flow") {
  auto e = parse_derivation(kW, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1");
  std::vector<std::string> names = kW.names;
  names.push_back("t");
  CHECK(exp_derivation(e, 6, Polynomial::variable(5)) == parse_polynomial(names, "z1 + t*z2 + 1/2*t^2*(1 + y1)"));
  CHECK_THROWS_AS(exp_derivation(e, 2, Polynomial::variable(5)), InputError);

  // group law: phi(phi(x, s), t) = phi(x, s + t)
  auto phi = flow({e});
  std::vector<Polynomial> at_s, inner;
  for (std::size_t i = 0; i < 6; ++i) at_s.push_back(Polynomial::variable(i));
  at_s.push_back(Polynomial::variable(7));
  for (const auto& p : phi) inner.push_back(p.substitute(at_s));
  inner.push_back(Polynomial::variable(6));
  std::vector<Polynomial> sum_ts(at_s.begin(), at_s.end() - 1);
  sum_ts.push_back(Polynomial::variable(6) + Polynomial::variable(7));
  for (std::size_t i = 0; i < 6; ++i) CHECK(phi[i].substitute(inner) == phi[i].substitute(sum_ts));

  auto d = parse_derivation(kW, "y2*d/dy3 + d/dz1");
  CHECK(action_degree({d}) == 1);
  CHECK(action_degree({e}) == 2);
  CHECK(action_degree({d, e}) == 2);
}

TEST_CASE("parse and format") {
  auto d = parse_derivation(kW, "-y1*d/dy3 + (1 - y1*y2)*d/dz1 - 1/2*y2^2*d/dy4");
  CHECK(d.images[2] == poly(kW, "-y1"));
  CHECK(d.images[5] == poly(kW, "1 - y1*y2"));
  CHECK(d.images[3] == poly(kW, "-1/2*y2^2"));
  CHECK(parse_derivation(kW, format_derivation(d)) == d);
  CHECK(format_derivation(Derivation(kW)) == "0");
  CHECK(format_derivation(parse_derivation(kW, "d/dz1")) == "d/dz1");
  CHECK_THROWS_AS(parse_derivation(kW, "x*d/dy1"), InputError);
  CHECK_THROWS_AS(parse_derivation(kW, "y1*d/dq"), InputError);
  CHECK_THROWS_AS(parse_derivation(kW, "y1"), InputError);
  CHECK_THROWS_AS(parse_polynomial(kW.names, "(y1"), InputError);

  std::string text = "# sample\nring a b\nweights b=3\ndelta D = a*d/db\ndelta E = d/da\n";
  auto f = parse_derivation_file(text);
  CHECK(f.ring.weights == std::vector<unsigned>{1, 3});
  CHECK(f.derivations.size() == 2);
  CHECK(parse_derivation_file(emit_derivation_file(f)).derivations == f.derivations);
  CHECK_THROWS_AS(parse_derivation_file("delta D = d/da\n"), InputError);
  CHECK_THROWS_AS(parse_derivation_file("ring a\nfoo\n"), InputError);
}

TEST_CASE("slice search") {
  PolyRing r({"x", "y"});
  auto dx = parse_derivation(r, "d/dx");
  auto t = slice_function_search({dx}, 1);
  REQUIRE(t);
  CHECK((*t)[0] == poly(r, "x"));

  PolyRing u({"y1", "y2", "y3", "z"});
  auto delta = parse_derivation(u, "-y1*d/dy3 + (1 - y1*y2)*d/dz");
  CHECK_FALSE(slice_function_search({delta}, 1));
  auto f = slice_function_search({delta}, 2);
  REQUIRE(f);
  CHECK(apply(delta, (*f)[0]) == Polynomial(1));
  CHECK((*f)[0] == poly(u, "z - y2*y3"));
  CHECK(verify_slice_functions({delta}, *f, 50, 0));
  CHECK_FALSE(verify_slice_functions({delta}, {poly(u, "z")}, 50, 0));

  auto d = parse_derivation(kW, "y2*d/dy3 + d/dz1");
  auto e = parse_derivation(kW, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1");
  for (unsigned b = 1; b <= 4; ++b) CHECK_FALSE(slice_function_search({d, e}, b));
  CHECK_THROWS_AS(slice_function_search({dx, parse_derivation(r, "x*d/dy")}, 1), InputError);
}

TEST_CASE("degree one slice") {
  PolyRing r({"x", "y", "z"});
  auto d = parse_derivation(r, "d/dx + y*d/dz");
  auto s = degree_one_slice({d});
  REQUIRE(s);
  CHECK(s->dimension == 2);
  CHECK(s->degree == 1);
  CHECK(apply(d, s->equations[0]) == Polynomial(1));
  auto quad = parse_derivation(r, "d/dx + x*d/dz");
  CHECK_THROWS_AS(degree_one_slice({quad}), InputError);
}

TEST_CASE("depth bounds on the quotient action") {
  auto d1 = parse_derivation(kY, "d/dz1 + y1*d/dz2");
  auto d2 = parse_derivation(kY, "y1*d/dy2 + y2*d/dy3 + y3*d/dz1 + d/dz2");
  CHECK(pairwise_commuting({d1, d2}));
  auto q = quotient_derivation(d1, d2, "z2");
  CHECK(q.ring.names == std::vector<std::string>{"y1", "y2", "y3", "z1"});
  CHECK(q == parse_derivation(q.ring, "-y1^2*d/dy2 - y1*y2*d/dy3 + (1 - y1*y3)*d/dz1"));
  auto rep = depth_bound(q, 1);
  std::vector<std::pair<std::string, unsigned>> expect{{"y1", 1}, {"y2", 3}, {"y3", 5}, {"z1", 7}};
  CHECK(rep.bounds == expect);
  CHECK(rep.nonzero_term == 6);

  // monotone in the inputs
  auto higher = depth_bound(q, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(higher.bounds[i].second >= rep.bounds[i].second);
  auto seeded = depth_bound(q, 1, {{"y1", 2}});
  for (std::size_t i = 0; i < 4; ++i) CHECK(seeded.bounds[i].second >= rep.bounds[i].second);

  CHECK(weighted_degree(poly(q.ring, "1"), {1, 3, 5, 7}) == 0);
  CHECK(weighted_degree(poly(q.ring, "y1*y3 + y2"), {1, 3, 5, 7}) == 6);
  CHECK_THROWS_AS(depth_bound(parse_derivation(PolyRing({"x", "y"}), "y*d/dx"), 1), InputError);
  CHECK_THROWS_AS(quotient_derivation(d1, d1, "z2"), InputError);
}
