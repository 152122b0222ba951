#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilq/derivation.hpp"
#include "nilq/quadratic.hpp"

namespace nilq {

/// Finite Laurent polynomial in t: exponent ↦ coefficient.
using LaurentSeries = std::map<int, QuadraticNumber>;

std::string format_laurent(const LaurentSeries& s, const std::string& var = "t");
int laurent_degree(const LaurentSeries& s);  // INT_MIN for zero

struct PropernessReport {
  bool found = false;
  /// Group ray s(t) in the flow parameters and point ray x(t) on the chart.
  std::vector<LaurentSeries> group_ray;
  std::vector<LaurentSeries> point_ray;
  std::vector<LaurentSeries> image_ray;
  std::size_t unbounded_index = 0;
  /// Degree at which the ray was found (the requested bound when none was).
  unsigned ansatz_degree = 0;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

inline constexpr unsigned kDefaultAnsatzDegree = 4;
inline constexpr std::size_t kDefaultNodeBudget = 4000;

/// Searches rays t ↦ (s(t), x(t)) with s polynomial and x polynomial in 1/t, both of degree
/// ≤ d, such that x(t) and exp(sum s_j δ_j) x(t) stay bounded while s(t) is not. The
/// polynomial system is solved by elimination and branching over Q or one Q(sqrt(D)).
PropernessReport properness_witness_search(const std::vector<Derivation>& family,
                                           unsigned ansatz_degree = kDefaultAnsatzDegree,
                                           std::size_t node_budget = kDefaultNodeBudget);

/// Recomputes the image ray and checks the degree conditions exactly.
bool verify_witness(const std::vector<Derivation>& family, const PropernessReport& r);

}  // namespace nilq
