#include "doctest.h"
#include "nilq/goldens.hpp"

using namespace nilq;

TEST_CASE("catalog goldens") {
  for (const auto& name : catalog_names()) {
    auto entry = catalog_entry(name);
    REQUIRE(entry);
    for (const auto& o : check_goldens(*entry)) {
      INFO(name, ": ", o.golden.key, " expected ", o.golden.value, " got ", o.actual);
      CHECK(o.pass);
    }
  }
}

TEST_CASE("golden comparison") {
  auto u = *catalog_entry("upper4");
  CHECK(golden_matches(u, "dim1 v h", "{z - y2*y3 = 0}", "{-y2*y3 + z = 0}"));
  CHECK(golden_matches(u, "dim1 v h", "{z = y2*y3}", "{-y2*y3 + z = 0}"));
  CHECK(!golden_matches(u, "dim1 v h", "{z - y2*y3 = 0}", "{z = 0}"));
  CHECK(golden_matches(u, "model_star_entry 1 4", "t - y1*y2*t", "-y1*y2*t + t"));
  auto w = *catalog_entry("winkelmann8");
  CHECK(golden_matches(w, "center", "Y3, Y4, Z1", "Z1, Y3, Y4"));
  CHECK_THROWS_AS(evaluate_golden(w, "no_such_key"), InputError);
}
