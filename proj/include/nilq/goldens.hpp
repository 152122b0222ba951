#pragma once

#include <string>
#include <vector>

#include "nilq/catalog.hpp"

namespace nilq {

/// Computes the value named by a golden key, e.g. "induced v h X1 + Z1" or "freeness v h".
std::string evaluate_golden(const CatalogEntry& entry, const std::string& key);

/// Compares up to presentation: derivations and polynomials are parsed, lists compared as sets.
bool golden_matches(const CatalogEntry& entry, const std::string& key, const std::string& expected,
                    const std::string& actual);

struct GoldenOutcome {
  Golden golden;
  std::string actual;
  bool pass = false;
};

/// Evaluates every golden of the entry; evaluation errors are reported as the actual value.
std::vector<GoldenOutcome> check_goldens(const CatalogEntry& entry);

}  // namespace nilq
