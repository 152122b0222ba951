#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilq/polynomial.hpp"

namespace nilq {

/// Ordered variables with depth weights; the order defines triangularity.
struct PolyRing {
  std::vector<std::string> names;
  std::vector<unsigned> weights;

  explicit PolyRing(std::vector<std::string> n = {}, std::vector<unsigned> w = {});
  std::size_t size() const { return names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  friend bool operator==(const PolyRing& a, const PolyRing& b) { return a.names == b.names; }
};

/// A derivation given on generators: x_i ↦ images[i].
struct Derivation {
  PolyRing ring;
  std::vector<Polynomial> images;

  explicit Derivation(PolyRing r);
  Derivation(PolyRing r, std::vector<Polynomial> imgs);
  const Polynomial& image(std::size_t i) const { return images.at(i); }
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.ring == b.ring && a.images == b.images; }
};

/// Leibniz extension; variables beyond the ring are constants for δ.
Polynomial apply(const Derivation& d, const Polynomial& p);
bool is_triangular(const Derivation& d);
/// Triangular derivations are locally nilpotent; otherwise iterate up to `budget` times per generator.
bool is_locally_nilpotent(const Derivation& d, unsigned budget = 64);
Derivation commutator(const Derivation& a, const Derivation& b);
Derivation operator+(const Derivation& a, const Derivation& b);
Derivation operator*(const Polynomial& c, const Derivation& d);

/// sum_k t^k δ^k(p) / k! with t the variable at index t_var (outside the ring).
Polynomial exp_derivation(const Derivation& d, std::size_t t_var, const Polynomial& p);

/// Images of the generators under exp(sum_i t_i δ_i), with t_i the variable at index ring.size() + i.
std::vector<Polynomial> flow(const std::vector<Derivation>& family);

/// Largest degree in the group parameters of the flow.
unsigned action_degree(const std::vector<Derivation>& family);

bool pairwise_commuting(const std::vector<Derivation>& family);

std::string format_derivation(const Derivation& d);
/// Parses `c1*d/dx1 + (p)*d/dx2 - ...` over a ring.
Derivation parse_derivation(const PolyRing& ring, const std::string& text);
/// Parses a polynomial expression over named variables.
Polynomial parse_polynomial(const std::vector<std::string>& names, const std::string& text);

/// Named derivations over one ring, as in a `.der` file.
struct DerivationFile {
  PolyRing ring;
  std::vector<std::pair<std::string, Derivation>> derivations;
};
/// Lines: `ring x1 x2 ...`, optional `weights x1=1 ...`, `delta <name> = <derivation>`, `#` comments.
DerivationFile parse_derivation_file(const std::string& text);
std::string emit_derivation_file(const DerivationFile& f);

/// Polynomials f_j with δ_i(f_j) = [i = j], total degree ≤ b; re-verified before return.
std::optional<std::vector<Polynomial>> slice_function_search(const std::vector<Derivation>& family, unsigned b);

/// Checks that {f = 0} is a slice: for sample points x, with s = f(x), the point
/// exp(-sum s_i δ_i)x lies on {f = 0} and flowing back by s returns x.
bool verify_slice_functions(const std::vector<Derivation>& family, const std::vector<Polynomial>& fs,
                            std::size_t samples, std::uint64_t seed);

struct LevelSetSlice {
  std::vector<Polynomial> equations;
  std::vector<std::string> names;
  std::size_t dimension = 0;
  unsigned degree = 0;
};

inline constexpr unsigned kSliceDegreeCeiling = 6;

/// Degree-growing slice search for a commuting family whose flow is affine in t.
/// Throws InputError when the flow has degree above one.
std::optional<LevelSetSlice> degree_one_slice(const std::vector<Derivation>& family,
                                              unsigned max_degree = kSliceDegreeCeiling);

struct DepthReport {
  std::vector<std::pair<std::string, unsigned>> bounds;
  unsigned max_depth = 0;
  /// Lower bound L with g^(L) ≠ 0 for any realizing algebra (max_depth - 1).
  unsigned nonzero_term = 0;
};

/// Weighted degree sum kappa_j w_j maximised over monomials; constants have degree 0.
unsigned weighted_degree(const Polynomial& p, const std::vector<unsigned>& weights);

/// d(x) >= d(δx) + d_x0 resolved in triangular order; `initial` overrides the default depth 1.
DepthReport depth_bound(const Derivation& d, unsigned d_x0, const std::map<std::string, unsigned>& initial = {});

/// δ1 − δ1(x)·δ2 restricted to {x = 0}, for δ2(x) = 1: the action of δ1 on the δ2-quotient.
Derivation quotient_derivation(const Derivation& d1, const Derivation& d2, const std::string& var);

/// For a commuting pair: quotient of the other member by the first one with δ(x) = 1 for some x.
Derivation quotient_by_unit(const std::vector<Derivation>& family);

}  // namespace nilq
