#pragma once

#include <utility>
#include <vector>

#include "nilq/derivation.hpp"
#include "nilq/lie_algebra.hpp"

namespace nilq {

/// Element (A, B) of v ⊕ h acting on G by g ↦ exp(A) g exp(-B).
using PairElement = std::pair<Vector, Vector>;

/// Ring of log coordinates on G (lowercased labels, depth weights).
PolyRing log_coordinate_ring(const LieAlgebra& a);

/// Vector fields of the (A, B)-actions in log coordinates on G.
std::vector<Derivation> biquotient_derivations(const LieAlgebra& a, const std::vector<PairElement>& elements);

struct ThreeStepPair {
  std::vector<Vector> x;  // X_1..X_m in h
  std::vector<Vector> z;  // Z_1..Z_m in g^(1), X_j + Z_j in v
  /// φ on a basis of v0: first ↦ second.
  std::vector<PairElement> phi;
  Subspace v0, h0, v1;
  std::vector<PairElement> n_basis;
  /// n inside v ⊕ h, stored in 2·dim(g) coordinates.
  Subspace n;
  std::vector<Derivation> action;
  unsigned degree = 0;
};

/// Builds φ: v0 → h0 and the ideal n; throws InputError naming a failed precondition.
ThreeStepPair three_step_normal_pair(const LieAlgebra& a, const Subspace& v, const Subspace& h);

}  // namespace nilq
