#pragma once

#include "nilq/decomposition.hpp"
#include "nilq/derivation.hpp"
#include "nilq/lie_file.hpp"

namespace nilq {

/// Coordinates y on G/H through a complement s of h: gH = P(y)H with
/// P(y) = exp(sum y_i S_i) (log chart) or exp(y_1 S_1)...exp(y_k S_k) (product chart).
struct Chart {
  LieAlgebra algebra;
  Subspace h;
  ChartKind kind = ChartKind::Log;
  std::vector<Vector> directions;
  PolyRing ring;
  /// Log chart: [s, h]. Product chart: [<S_1>, ..., <S_k>, h].
  LeviMalcevDecomposition decomposition;

  std::size_t dim() const { return directions.size(); }

  template <class R>
  std::vector<std::vector<R>> point_factors(const std::vector<R>& y) const {
    std::size_t n = algebra.dim();
    std::vector<std::vector<R>> out;
    if (kind == ChartKind::Log) out.emplace_back(n);
    for (std::size_t i = 0; i < directions.size(); ++i) {
      if (kind == ChartKind::Product) out.emplace_back(n);
      auto& target = out.back();
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(directions[i][k])) target[k] += R(y[i] * directions[i][k]);
    }
    return out;
  }

  /// log P(y)
  template <class R>
  std::vector<R> point(const std::vector<R>& y) const {
    return star_all(algebra, point_factors(y));
  }

  /// Chart coordinates of gH for g = exp(x).
  template <class R>
  std::vector<R> coordinates(const std::vector<R>& x) const {
    auto comps = factorize(algebra, decomposition, x);
    std::vector<R> out;
    std::size_t row = 0;
    for (std::size_t p = 0; p + 1 < comps.size(); ++p)
      for (std::size_t b = 0; b < decomposition.part_bases[p].size(); ++b, ++row) {
        R c;
        for (std::size_t k = 0; k < algebra.dim(); ++k)
          if (!is_zero(decomposition.basis_inverse[row][k]) && !is_zero(comps[p][k]))
            c += R(comps[p][k] * decomposition.basis_inverse[row][k]);
        out.push_back(std::move(c));
      }
    return out;
  }
};

/// Chart on G/H from the document's `chart` line, or the h_slice complement otherwise.
Chart make_chart(const LieDocument& doc, const Subspace& h);

/// Chart along explicit directions; they and h must form a Levi-Malcev decomposition.
Chart make_chart(const LieAlgebra& a, const Subspace& h, ChartKind kind, std::vector<Vector> directions,
                 std::vector<std::string> names);

/// Variable name for a direction: the document's name for a basis vector, `fallback` otherwise.
std::string direction_name(const LieDocument& doc, const Vector& x, const std::string& fallback);

struct InducedAction {
  Chart chart;
  std::vector<Vector> generators;
  std::vector<Derivation> family;
};

/// For each basis vector W of v, d/dt at 0 of the chart coordinates of exp(tW)P(y)H.
InducedAction induced_action(const LieDocument& doc, const Subspace& v, const Subspace& h);
InducedAction induced_action(const Chart& chart, const Subspace& v);

/// Chart coordinates of exp(g) P(y) H, computed numerically.
Vector act_on_chart(const Chart& chart, const Vector& g, const Vector& y);

}  // namespace nilq
