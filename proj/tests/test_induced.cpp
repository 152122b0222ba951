#include <random>

#include "doctest.h"
#include "nilq/catalog.hpp"
#include "nilq/induced.hpp"

using namespace nilq;

namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-10, 10);
  Vector v(n);
  for (auto& x : v) x = Scalar(d(rng)) / (1 + (d(rng) + 10) % 4);
  return v;
}

}  // namespace

TEST_CASE("charts") {
  auto w = winkelmann8();
  auto c = make_chart(w, w.subspace("h"));
  CHECK(c.ring.names == std::vector<std::string>{"y1", "y2", "y3", "y4", "z2", "z1"});
  CHECK(c.ring.weights == std::vector<unsigned>{1, 1, 2, 2, 2, 3});
  auto y = yoshino7();
  CHECK(make_chart(y, y.subspace("h")).ring.names == std::vector<std::string>{"y1", "y2", "z2", "y3", "z1"});
  auto u = upper4();
  auto uc = make_chart(u, u.subspace("h"));
  CHECK(uc.kind == ChartKind::Product);
  CHECK(uc.ring.names == std::vector<std::string>{"y1", "y2", "y3", "z"});

  // coordinates invert the chart map
  std::mt19937_64 rng(11);
  for (const Chart* ch : {&c, &uc})
    for (int s = 0; s < 30; ++s) {
      Vector p = random_vector(rng, ch->dim());
      CHECK(ch->coordinates(ch->point(p)) == p);
    }
}

TEST_CASE("induced derivations") {
  auto w = winkelmann8();
  auto iw = induced_action(w, w.subspace("v"), w.subspace("h"));
  const auto& rw = iw.chart.ring;
  REQUIRE(iw.family.size() == 2);
  CHECK(iw.family[0] == parse_derivation(rw, "y2*d/dy3 + d/dz1"));
  CHECK(iw.family[1] == parse_derivation(rw, "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1"));

  auto y = yoshino7();
  auto iy = induced_action(y, y.subspace("v"), y.subspace("h"));
  const auto& ry = iy.chart.ring;
  CHECK(iy.family[0] == parse_derivation(ry, "y1*d/dy2 + y2*d/dy3 + y3*d/dz1 + d/dz2"));
  CHECK(iy.family[1] == parse_derivation(ry, "d/dz1 + y1*d/dz2"));

  auto u = upper4();
  auto iu = induced_action(u, u.subspace("v"), u.subspace("h"));
  CHECK(iu.family[0] == parse_derivation(iu.chart.ring, "-y1*d/dy3 + (1 - y1*y2)*d/dz"));

  auto h = heisenberg(1);
  const auto& a = h.algebra;
  auto ih = induced_action(h, a.span({parse_combination(a, "X")}), Subspace(3));
  CHECK(ih.family[0] == parse_derivation(ih.chart.ring, "d/dx + 1/2*y*d/dz"));
  CHECK_THROWS_AS(induced_action(w, w.subspace("h"), w.subspace("h")), InputError);
}

TEST_CASE("flow consistency and commutation") {
  std::mt19937_64 rng(12);
  for (const auto& name : catalog_names()) {
    auto e = catalog_entry(name);
    const auto& doc = e->doc;
    if (!doc.has_subspace("v") || !doc.has_subspace("h")) continue;
    const auto& v = doc.subspace("v");
    auto ia = induced_action(doc, v, doc.subspace("h"));
    CHECK(pairwise_commuting(ia.family) == doc.algebra.is_abelian(v));
    if (!doc.algebra.is_abelian(v)) continue;
    auto phi = flow(ia.family);
    std::size_t k = ia.chart.dim();
    for (int s = 0; s < 20; ++s) {
      Vector t = random_vector(rng, ia.generators.size());
      Vector y = random_vector(rng, k);
      Vector g(doc.algebra.dim());
      for (std::size_t j = 0; j < t.size(); ++j) g = add(g, scale(t[j], ia.generators[j]));
      Vector point = y;
      point.insert(point.end(), t.begin(), t.end());
      Vector expect = act_on_chart(ia.chart, g, y);
      for (std::size_t i = 0; i < k; ++i) CHECK(phi[i].evaluate(point) == expect[i]);
    }
  }
}
