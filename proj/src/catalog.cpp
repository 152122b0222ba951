#include "nilq/catalog.hpp"


namespace nilq {
namespace {

LieDocument build(const std::string& name, const std::vector<std::string>& labels,
                  const std::vector<std::tuple<std::string, std::string, std::string>>& brackets) {
  auto idx = [&](const std::string& l) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) return i;
    throw InputError("unknown label " + l);
  };
  StructureConstants sc{labels.size(), {}};
  LieAlgebra scratch(name, labels, StructureConstants{labels.size(), {}});
  for (const auto& [a, b, rhs] : brackets) {
    std::size_t i = idx(a), j = idx(b);
    Vector v = parse_combination(scratch, rhs);
    if (i > j) {
      std::swap(i, j);
      v = negate(v);
    }
    sc.brackets[{i, j}] = v;
  }
  return LieDocument{LieAlgebra(name, labels, sc), {}, {}, std::nullopt};
}

void add_sub(LieDocument& d, const std::string& name, const std::vector<std::string>& combos) {
  std::vector<Vector> vs;
  for (const auto& c : combos) vs.push_back(parse_combination(d.algebra, c));
  d.subspaces.emplace_back(name, d.algebra.span(vs));
}

Matrix unit_matrix(std::size_t m, std::size_t r, std::size_t c) {
  Matrix out = zero_matrix(m, m);
  out[r][c] = 1;
  return out;
}

std::optional<std::size_t> trailing_number(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  for (char c : rest)
    if (c < '0' || c > '9') return std::nullopt;
  if (rest.size() > 3) return std::nullopt;
  return std::stoul(rest);
}

std::vector<Golden> goldens_for(const std::string& name) {
  if (name == "winkelmann8")
    return {
        {"jacobi", "ok", "reference"},
        {"central_series", "[8,4,1,0]", "derived"},
        {"nilpotency_step", "3", "reference"},
        {"bracket X2 Y1", "Y3 + Z2", "reference"},
        {"center", "Y3, Y4, Z1", "derived"},
        {"h_slice h", "Y1, Y2, Y3, Y4, Z1, Z2", "reference"},
        {"levi_malcev v h", "NotExists(0)", "derived"},
        {"freeness v h", "Certified", "reference"},
        {"induced v h X1 + Z1", "y2*d/dy3 + d/dz1", "reference"},
        {"induced v h X2 + Z2", "y1*d/dy3 + y2*d/dy4 + (1 + y1)*d/dz2 + z2*d/dz1", "reference"},
        {"slice_search v h 6", "NoneFound", "reference"},
        {"witness v h 4", "NoneFound", "reference"},
        {"family_split v h", "none", "derived"},
        {"three_step_degree v h", "2", "reference"},
    };
  if (name == "yoshino7")
    return {
        {"jacobi", "ok", "reference"},
        {"central_series", "[7,4,2,1,0]", "derived"},
        {"nilpotency_step", "4", "reference"},
        {"h_slice h", "Y1, Y2, Y3, Z1, Z2", "reference"},
        {"induced v h X1 + Z1", "y1*d/dy2 + y2*d/dy3 + y3*d/dz1 + d/dz2", "reference"},
        {"induced v h X2 + Z2", "d/dz1 + y1*d/dz2", "reference"},
        {"freeness v h", "Certified", "reference"},
        {"witness v h 4", "WitnessFound", "derived"},
        {"depth quotient 1", "y1:1 y2:3 y3:5 z1:7", "reference"},
    };
  if (name == "upper4")
    return {
        {"induced v h X0 + Z", "-y1*d/dy3 + (1 - y1*y2)*d/dz", "reference"},
        {"slice_search v h 2", "z - y2*y3", "reference"},
        {"model_star_entry 1 4", "t - y1*y2*t", "reference"},
        {"family_split v h", "found", "reference"},
        {"dim1 v h", "{z - y2*y3 = 0}", "reference"},
    };
  if (name == "heis5")
    return {
        {"freeness v h", "Certified", "derived"},
        {"degree_one_slice v h", "dim 3", "derived"},
    };
  if (name == "heisenberg3")
    return {
        {"bracket X Y", "Z", "TRIVIAL"},
        {"center", "Z", "derived"},
        {"star X Y", "X + Y + 1/2*Z", "derived"},
    };
  return {};
}

}  // namespace

MatrixPresentation semidirect_presentation(const LieAlgebra& a, const std::vector<std::string>& ideal,
                                           const std::vector<std::string>& complement) {
  std::size_t m = ideal.size() + 1;
  MatrixPresentation p{m, std::vector<Matrix>(a.dim(), zero_matrix(m, m))};
  std::vector<std::size_t> pos;
  for (const auto& l : ideal) pos.push_back(*a.index_of(l));
  for (std::size_t r = 0; r < ideal.size(); ++r) p.images[pos[r]][r][m - 1] = 1;
  for (const auto& l : complement) {
    std::size_t x = *a.index_of(l);
    for (std::size_t c = 0; c < ideal.size(); ++c) {
      Vector br = a.bracket(a.basis_vector(x), a.basis_vector(pos[c]));
      for (std::size_t r = 0; r < ideal.size(); ++r) p.images[x][r][c] = br[pos[r]];
    }
  }
  return p;
}

LieDocument heisenberg(std::size_t k) {
  if (k == 0) throw InputError("heisenberg: k must be positive");
  std::vector<std::string> labels;
  std::vector<std::tuple<std::string, std::string, std::string>> br;
  auto x = [&](std::size_t i) { return k == 1 ? std::string("X") : "X" + std::to_string(i + 1); };
  auto y = [&](std::size_t i) { return k == 1 ? std::string("Y") : "Y" + std::to_string(i + 1); };
  for (std::size_t i = 0; i < k; ++i) labels.push_back(x(i));
  for (std::size_t i = 0; i < k; ++i) labels.push_back(y(i));
  labels.push_back("Z");
  for (std::size_t i = 0; i < k; ++i) br.emplace_back(x(i), y(i), "Z");
  LieDocument d = build("heisenberg" + std::to_string(2 * k + 1), labels, br);
  std::size_t m = k + 2;
  MatrixPresentation p{m, {}};
  for (std::size_t i = 0; i < k; ++i) p.images.push_back(unit_matrix(m, 0, i + 1));
  for (std::size_t i = 0; i < k; ++i) p.images.push_back(unit_matrix(m, i + 1, m - 1));
  p.images.push_back(unit_matrix(m, 0, m - 1));
  d.algebra.set_presentation(p);
  return d;
}

LieDocument abelian(std::size_t n) {
  if (n == 0) throw InputError("abelian: dimension must be positive");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("A" + std::to_string(i + 1));
  LieDocument d = build("abelian" + std::to_string(n), labels, {});
  MatrixPresentation p{n + 1, {}};
  for (std::size_t i = 0; i < n; ++i) p.images.push_back(unit_matrix(n + 1, i, n));
  d.algebra.set_presentation(p);
  return d;
}

namespace {

LieDocument ut_with_labels(const std::string& name, std::size_t n,
                           const std::map<std::pair<std::size_t, std::size_t>, std::string>& rename,
                           const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::size_t>, std::string> label_of;
  for (const auto& ij : order) {
    auto it = rename.find(ij);
    std::string l = it != rename.end() ? it->second : "E" + std::to_string(ij.first + 1) + std::to_string(ij.second + 1);
    label_of[ij] = l;
    labels.push_back(l);
  }
  std::vector<std::tuple<std::string, std::string, std::string>> br;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto [i, j] = order[a];
      auto [k, l] = order[b];
      // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
      if (j == k) br.emplace_back(label_of[order[a]], label_of[order[b]], label_of[{i, l}]);
      if (l == i) br.emplace_back(label_of[order[a]], label_of[order[b]], "-" + label_of[{k, j}]);
    }
  LieDocument d = build(name, labels, br);
  MatrixPresentation p{n, {}};
  for (const auto& [i, j] : order) p.images.push_back(unit_matrix(n, i, j));
  d.algebra.set_presentation(p);
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> superdiagonal_order(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t gap = 1; gap < n; ++gap)
    for (std::size_t i = 0; i + gap < n; ++i) order.emplace_back(i, i + gap);
  return order;
}

}  // namespace

LieDocument upper_triangular(std::size_t n) {
  if (n < 2) throw InputError("ut: n must be at least 2");
  return ut_with_labels("ut" + std::to_string(n), n, {}, superdiagonal_order(n));
}

LieDocument winkelmann8() {
  LieDocument d = build("winkelmann8", {"X1", "X2", "Y1", "Y2", "Y3", "Y4", "Z1", "Z2"},
                        {{"X1", "Y2", "Y3"}, {"X2", "Y1", "Y3 + Z2"}, {"X2", "Y2", "Y4"}, {"X2", "Z2", "Z1"}});
  d.algebra.set_presentation(
      semidirect_presentation(d.algebra, {"Z1", "Y3", "Y4", "Z2", "Y1", "Y2"}, {"X1", "X2"}));
  add_sub(d, "v", {"X1 + Z1", "X2 + Z2"});
  add_sub(d, "h", {"X1", "X2"});
  d.variables = {{"Y1", "y1"}, {"Y2", "y2"}, {"Y3", "y3"}, {"Y4", "y4"}, {"Z1", "z1"}, {"Z2", "z2"}};
  return d;
}

LieDocument yoshino7() {
  LieDocument d = build("yoshino7", {"X1", "X2", "Y1", "Y2", "Y3", "Z1", "Z2"},
                        {{"X1", "Y1", "Y2"}, {"X1", "Y2", "Y3"}, {"X1", "Y3", "Z2"}, {"X2", "Y1", "Z1"}});
  d.algebra.set_presentation(semidirect_presentation(d.algebra, {"Z2", "Z1", "Y3", "Y2", "Y1"}, {"X1", "X2"}));
  add_sub(d, "v", {"X1 + Z1", "X2 + Z2"});
  add_sub(d, "h", {"X1", "X2"});
  // The induced derivations match the literature's δ1, δ2 once Z1 and Z2 trade coordinate names.
  d.variables = {{"Y1", "y1"}, {"Y2", "y2"}, {"Y3", "y3"}, {"Z1", "z2"}, {"Z2", "z1"}};
  return d;
}

LieDocument upper4() {
  std::map<std::pair<std::size_t, std::size_t>, std::string> rename = {
      {{0, 1}, "Y1"}, {{2, 3}, "Y2"}, {{1, 2}, "X0"}, {{0, 2}, "Y3"}, {{1, 3}, "X1"}, {{0, 3}, "Z"}};
  LieDocument d = ut_with_labels("upper4", 4, rename, {{0, 1}, {2, 3}, {1, 2}, {0, 2}, {1, 3}, {0, 3}});
  add_sub(d, "v", {"X0 + Z"});
  add_sub(d, "h", {"X0", "X1"});
  add_sub(d, "n", {"Y3", "Z", "X0", "X1"});
  add_sub(d, "s0", {"Y1", "Y2"});
  d.variables = {{"Y1", "y1"}, {"Y2", "y2"}, {"Y3", "y3"}, {"Z", "z"}};
  d.chart = ChartSpec{ChartKind::Product, {"Y1", "Y2", "Y3", "Z"}};
  return d;
}

LieDocument heis5() {
  LieDocument d = heisenberg(2);
  d = LieDocument{LieAlgebra("heis5", d.algebra.labels(), d.algebra.structure()), {}, {}, std::nullopt};
  d.algebra.set_presentation(heisenberg(2).algebra.presentation().value());
  add_sub(d, "v", {"Y1 + Z"});
  add_sub(d, "h", {"X1"});
  return d;
}

std::vector<std::string> catalog_names() {
  return {"heisenberg3", "abelian3", "ut4", "winkelmann8", "yoshino7", "upper4", "heis5"};
}

std::optional<CatalogEntry> catalog_entry(const std::string& name) {
  std::optional<LieDocument> doc;
  if (name == "winkelmann8") {
    doc = winkelmann8();
  } else if (name == "yoshino7") {
    doc = yoshino7();
  } else if (name == "upper4") {
    doc = upper4();
  } else if (name == "heis5") {
    doc = heis5();
  } else if (auto n = trailing_number(name, "heisenberg")) {
    if (*n < 3 || *n % 2 == 0) return std::nullopt;
    doc = heisenberg((*n - 1) / 2);
  } else if (auto n = trailing_number(name, "abelian")) {
    if (*n == 0) return std::nullopt;
    doc = abelian(*n);
  } else if (auto n = trailing_number(name, "ut")) {
    if (*n < 2) return std::nullopt;
    doc = upper_triangular(*n);
  }
  if (!doc) return std::nullopt;
  return CatalogEntry{name, std::move(*doc), goldens_for(name)};
}

}  // namespace nilq
