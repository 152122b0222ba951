#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilq/bch.hpp"
#include "nilq/polynomial.hpp"

namespace nilq {

/// Ad(g)(v) ∩ h.
Subspace isotropy_condition(const LieAlgebra& a, const Subspace& v, const Subspace& h, const GroupElement& g);

/// [Ad(exp sum t_i e_i) basis(v) | basis(h)] with entries in t_1..t_n.
struct ParamMatrix {
  std::vector<std::vector<Polynomial>> entries;
  std::size_t v_columns = 0;

  std::size_t rows() const { return entries.size(); }
  std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
  Matrix evaluate(const Vector& t) const;
};

ParamMatrix param_matrix(const LieAlgebra& a, const Subspace& v, const Subspace& h);

/// Distinct nonzero maximal minors, each scaled to leading coefficient 1.
std::vector<Polynomial> maximal_minors(const ParamMatrix& m);

enum class FreenessVerdict { Certified, Refuted, Unknown };

struct FreenessCertificate {
  FreenessVerdict verdict = FreenessVerdict::Unknown;
  /// "constant-minor" or "unit-ideal" for Certified.
  std::string reason;
  unsigned degree = 0;
  /// sum multipliers[i] * minors[i] = 1 (a single constant minor uses multiplier 1/c).
  std::vector<Polynomial> minors;
  std::vector<Polynomial> multipliers;
  /// Refuted: Ad(witness)(x) ∈ h with 0 ≠ x ∈ v.
  std::optional<GroupElement> witness;
  Vector witness_x;
  std::size_t samples_tried = 0;
  std::size_t clean_samples = 0;
  unsigned max_degree_searched = 0;
  std::size_t minor_count = 0;
};

inline constexpr std::size_t kDefaultFreenessSamples = 1000;

std::string to_string(FreenessVerdict v);

/// Three-valued freeness test of the V×H-action; degree_budget 0 means 2·l(A).
FreenessCertificate freeness_check(const LieAlgebra& a, const Subspace& v, const Subspace& h, unsigned degree_budget = 0,
                                   std::uint64_t seed = 0, std::size_t samples = kDefaultFreenessSamples);

/// Re-checks a certificate from scratch; false if any claim fails.
bool verify_certificate(const LieAlgebra& a, const Subspace& v, const Subspace& h, const FreenessCertificate& c);

}  // namespace nilq
