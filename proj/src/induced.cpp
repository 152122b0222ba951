#include "nilq/induced.hpp"

namespace nilq {

std::string direction_name(const LieDocument& doc, const Vector& x, const std::string& fallback) {
  std::optional<std::size_t> only;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (is_zero(x[k])) continue;
    if (only || x[k] != 1) return fallback;
    only = k;
  }
  return only ? doc.variable_for(doc.algebra.labels()[*only]) : fallback;
}

Chart make_chart(const LieAlgebra& a, const Subspace& h, ChartKind kind, std::vector<Vector> directions,
                 std::vector<std::string> names) {
  if (!a.is_subalgebra(h)) throw InputError("chart: h is not a subalgebra");
  if (names.size() != directions.size()) throw InputError("chart: one name per direction is required");
  Chart c{a, h, kind, std::move(directions), PolyRing(), {}};
  std::vector<Subspace> parts;
  if (kind == ChartKind::Log)
    parts.push_back(a.span(c.directions));
  else
    for (const auto& d : c.directions) parts.push_back(a.span({d}));
  parts.push_back(h);
  auto r = decompose(a, parts, std::nullopt);
  auto* d = std::get_if<LeviMalcevDecomposition>(&r);
  if (!d || parts[0].dim() * (kind == ChartKind::Log ? 1 : c.directions.size()) != c.directions.size())
    throw InputError("chart: declared directions and h do not form a Levi-Malcev decomposition");
  c.decomposition = *d;
  if (kind == ChartKind::Log) {
    // keep the declared order of the chart directions
    c.decomposition.part_bases[0] = c.directions;
    std::vector<Vector> basis = c.decomposition.witness_basis();
    Matrix cols = zero_matrix(a.dim(), a.dim());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t r = 0; r < a.dim(); ++r) cols[r][j] = basis[j][r];
    c.decomposition.basis_inverse = inverse(cols);
  } else {
    for (std::size_t i = 0; i < c.directions.size(); ++i) c.decomposition.part_bases[i] = {c.directions[i]};
    std::vector<Vector> basis = c.decomposition.witness_basis();
    Matrix cols = zero_matrix(a.dim(), a.dim());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t r = 0; r < a.dim(); ++r) cols[r][j] = basis[j][r];
    c.decomposition.basis_inverse = inverse(cols);
  }
  std::vector<unsigned> weights;
  for (const auto& x : c.directions) weights.push_back(static_cast<unsigned>(a.level_of(x) + 1));
  c.ring = PolyRing(std::move(names), weights);
  return c;
}

Chart make_chart(const LieDocument& doc, const Subspace& h) {
  const LieAlgebra& a = doc.algebra;
  ChartKind kind = ChartKind::Log;
  std::vector<Vector> directions;
  if (doc.chart) {
    kind = doc.chart->kind;
    for (const auto& l : doc.chart->labels) {
      auto idx = a.index_of(l);
      if (!idx) throw InputError("chart: unknown label '" + l + "'");
      directions.push_back(unit_vector(a.dim(), *idx));
    }
  } else {
    if (!a.is_subalgebra(h)) throw InputError("chart: h is not a subalgebra");
    directions = h_slice(a, h).part_bases[0];
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < directions.size(); ++i)
    names.push_back(direction_name(doc, directions[i], "s" + std::to_string(i + 1)));
  return make_chart(a, h, kind, std::move(directions), std::move(names));
}

InducedAction induced_action(const Chart& chart, const Subspace& v) {
  const LieAlgebra& a = chart.algebra;
  if (!a.is_subalgebra(v)) throw InputError("induced_action: v is not a subalgebra");
  if (!intersect(v, chart.h).is_zero()) throw InputError("induced_action: v and h intersect; the action is not free");
  InducedAction out{chart, v.basis(), {}};
  std::size_t k = chart.dim();
  std::vector<Polynomial> y;
  for (std::size_t i = 0; i < k; ++i) y.push_back(Polynomial::variable(i));
  Polynomial t = Polynomial::variable(k);
  std::vector<Polynomial> p = chart.point(y);
  for (const auto& w : out.generators) {
    std::vector<Polynomial> tw(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) tw[j] = t * w[j];
    auto coords = chart.coordinates(star(a, tw, p));
    Derivation d(chart.ring);
    for (std::size_t i = 0; i < k; ++i) {
      auto by_t = coords[i].coefficients_in(k);
      if (by_t.size() > 1) d.images[i] = by_t[1];
    }
    out.family.push_back(std::move(d));
  }
  return out;
}

InducedAction induced_action(const LieDocument& doc, const Subspace& v, const Subspace& h) {
  return induced_action(make_chart(doc, h), v);
}

Vector act_on_chart(const Chart& chart, const Vector& g, const Vector& y) {
  return chart.coordinates(star(chart.algebra, g, chart.point(y)));
}

}  // namespace nilq
