#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilq/lie_file.hpp"

namespace nilq {

/// Heisenberg algebra of dimension 2k+1 with [X_i,Y_i] = Z.
LieDocument heisenberg(std::size_t k);
LieDocument abelian(std::size_t n);
/// Strictly upper-triangular n×n matrices, basis E_ij ordered by superdiagonal.
LieDocument upper_triangular(std::size_t n);
LieDocument winkelmann8();
LieDocument yoshino7();
/// ut(4) relabelled as in the worked 4×4 example, with v, h, n, s0 and a product chart.
LieDocument upper4();
/// 5-dimensional Heisenberg algebra with a one-dimensional free pair.
LieDocument heis5();

/// Presentation of a + c, with a an abelian ideal and c acting on it:
/// c acts by ad on a in the upper-left block; a sits in the last column.
/// `ideal` must be ordered so that ad(c) maps each element to earlier ones.
MatrixPresentation semidirect_presentation(const LieAlgebra& a, const std::vector<std::string>& ideal,
                                           const std::vector<std::string>& complement);

/// Expected value; tag is "reference" (tabulated) or "derived" (computed by hand).
struct Golden {
  std::string key;
  std::string value;
  std::string tag;
};

struct CatalogEntry {
  std::string name;
  LieDocument doc;
  std::vector<Golden> goldens;
};

/// Names of the fixed entries (parametric families are reachable by name too).
std::vector<std::string> catalog_names();

/// Looks up "winkelmann8", "heisenberg5", "ut4", "abelian3", ...; nullopt if unknown.
std::optional<CatalogEntry> catalog_entry(const std::string& name);

}  // namespace nilq
