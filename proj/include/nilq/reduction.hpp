#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilq/induced.hpp"

namespace nilq {

/// One step of a reduction chain, in the coordinates of the algebra it was applied to.
struct ReductionStep {
  std::string kind;  // "quotient" or "restrict"
  /// Quotient: the ideal divided out. Restrict: the subalgebra g1 kept.
  Subspace data;
  /// Quotient: projection onto the new coordinates. Restrict: columns embed g1 back.
  Matrix map;
  /// Restrict: complements c_v of v0 in v and c_h of h0 in h.
  std::vector<Vector> complement_v;
  std::vector<Vector> complement_h;
};

struct ReducedProblem {
  LieAlgebra algebra;
  Subspace v, h;
  std::vector<ReductionStep> provenance;
};

/// Quotients by (v ∩ z(g)) + (h ∩ z(g)) until both central intersections vanish.
ReducedProblem reduce_by_center(const LieAlgebra& a, const Subspace& v, const Subspace& h);

/// With n = π0⁻¹(π0(h) ∩ π0(v)), v0 = n ∩ v and h0 = n ∩ h, restricts to a maximal g1 ⊇ n
/// with g1 ∩ v = v0 and g1 ∩ h = h0 (greedy over the standard basis).
ReducedProblem reduce_common_shadow(const LieAlgebra& a, const Subspace& v, const Subspace& h);

struct FamilySplit {
  Vector y0;
  Subspace g1;
  /// Whether ad(Y0) preserves v (otherwise it preserves h).
  bool normalizes_v = true;
  ReducedProblem reduced;
};

/// Y0 with ad(Y0) preserving v or h and g = <Y0> ⊕ g1 a Levi-Malcev decomposition with
/// v, h ⊆ g1. Candidates: standard basis vectors, then sums and differences of two.
std::optional<FamilySplit> family_split(const LieAlgebra& a, const Subspace& v, const Subspace& h);

/// g = exp(v) exp(s) exp(h) with v in V, s on the slice, h in H (all as logarithms).
struct Factorization {
  Vector v, s, h;
};

/// A global slice S of the V×H-action on G, given by its factorization map.
struct SliceDescription {
  std::string kind;   // "linear", "level-set" or "composed"
  std::string route;  // how it was produced
  /// Level sets: the defining equations. Linear: the spanning vectors, formatted.
  std::vector<std::string> equations;
  std::size_t dimension = 0;
  std::function<Factorization(const Vector&)> factor;

  std::string describe() const;
};

/// exp(s) for the middle part of g = v ⊕ s ⊕ h.
SliceDescription linear_slice(const LieAlgebra& a, const LeviMalcevDecomposition& d);
/// {P(y) : f(y) = 0} in a chart of G/H, for a commuting family with δ_i(f_j) = [i = j].
SliceDescription level_set_slice(const InducedAction& action, const std::vector<Polynomial>& fs);

/// Checks star(v, s, h) = g, v ∈ v, h ∈ h, factor(s) = (0, s, 0) and
/// factor(v' s h') = (v', s, h') on seeded random elements; returns the first failure.
std::optional<std::string> verify_slice(const LieAlgebra& a, const Subspace& v, const Subspace& h,
                                        const SliceDescription& slice, std::size_t samples, std::uint64_t seed);

inline constexpr std::size_t kComposeSamples = 200;

/// S ∩ S_N N for an ideal N: S_N is a slice of the projected action on g/N, S a slice of the
/// (V ∩ N)×(H ∩ N)-action on G. Throws InconsistencyError when the roundtrip check fails.
SliceDescription compose_slices(const LieAlgebra& a, const QuotientAlgebra& q, const Subspace& v,
                                const Subspace& h, const SliceDescription& s_n, const SliceDescription& s,
                                std::uint64_t seed = 0);

struct Unsupported {
  std::string reason;
};

/// Slice for dim v = 1: a Levi-Malcev slice when one exists, otherwise v = <X0 + Z0> with
/// X0 in h and Z0 in g^(l-1) is required, then (a) an ad(X0)-invariant complement, (b) slice
/// functions when v lies in an abelian ideal, (c) for l = 3 the quotient by ad(X0)(g^(1)).
std::variant<SliceDescription, Unsupported> dim1_pipeline(const LieDocument& doc, const Subspace& v,
                                                          const Subspace& h);

}  // namespace nilq
