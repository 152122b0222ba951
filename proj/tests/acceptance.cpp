// Acceptance suite: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nilq/freeness.hpp"
#include "nilq/goldens.hpp"
#include "nilq/reduction.hpp"
#include "nilq/witness.hpp"

using namespace nilq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Vector x(n);
  for (auto& c : x) c = Scalar(num(rng)) / den(rng);
  return x;
}

std::vector<std::size_t> dims(const LieAlgebra& a) {
  std::vector<std::size_t> out;
  for (const auto& t : a.central_series()) out.push_back(t.dim());
  return out;
}

/// Catalog entries carrying a pair v, h.
std::vector<CatalogEntry> catalog_pairs() {
  std::vector<CatalogEntry> out;
  for (const auto& n : catalog_names()) {
    auto e = catalog_entry(n);
    if (e->doc.has_subspace("v") && e->doc.has_subspace("h")) out.push_back(*e);
  }
  return out;
}

Outcome jacobi_and_structure() {
  if (jacobi_check(winkelmann8().algebra.structure()) || jacobi_check(yoshino7().algebra.structure()))
    return fail("catalog algebra violates Jacobi");
  StructureConstants w = winkelmann8().algebra.structure();
  w.brackets[{0, 2}] = unit_vector(8, 3);  // [X1,Y1] = Y2
  auto wv = jacobi_check(w);
  if (!wv || wv->i != 0 || wv->j != 1 || wv->k != 2 || wv->residual != negate(unit_vector(8, 5)))
    return fail("mutated winkelmann8 not caught at (X1, X2, Y1) with residual -Y4");
  StructureConstants bad{3, {}};
  bad.brackets[{0, 1}] = Vector{0, 0, 1};
  bad.brackets[{0, 2}] = Vector{1, 0, 0};
  auto bv = jacobi_check(bad);
  if (!bv || bv->i != 0 || bv->j != 1 || bv->k != 2 || bv->residual != Vector{0, 0, 1})
    return fail("3-dim violation not caught at (X1, X2, X3) with residual X3");
  return {true, "mutations caught at (X1,X2,Y1) and (X1,X2,X3)"};
}

Outcome central_series() {
  auto w = dims(winkelmann8().algebra), y = dims(yoshino7().algebra);
  if (w != std::vector<std::size_t>{8, 4, 1, 0}) return fail("winkelmann8 series differs");
  if (y != std::vector<std::size_t>{7, 4, 2, 1, 0}) return fail("yoshino7 series differs");
  return {true, "[8,4,1,0] and [7,4,2,1,0]"};
}

Outcome bch_vs_matrices() {
  std::mt19937_64 rng(3);
  std::size_t checked = 0;
  for (std::size_t n = 3; n <= 6; ++n) {
    const LieAlgebra a = upper_triangular(n).algebra;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j, ++checked)
        if (star(a, a.basis_vector(i), a.basis_vector(j)) != model_star(a, a.basis_vector(i), a.basis_vector(j)))
          return fail("basis pair differs on ut" + std::to_string(n));
    for (int s = 0; s < 1000; ++s, ++checked) {
      Vector x = random_vector(rng, a.dim()), y = random_vector(rng, a.dim());
      if (star(a, x, y) != model_star(a, x, y)) return fail("random pair differs on ut" + std::to_string(n));
    }
  }
  return {true, std::to_string(checked) + " products on ut3..ut6"};
}

Outcome induced_goldens() {
  std::size_t n = 0;
  for (const std::string name : {"winkelmann8", "yoshino7", "upper4"}) {
    auto e = *catalog_entry(name);
    for (const auto& g : e.goldens) {
      if (g.key.rfind("induced", 0) != 0) continue;
      std::string actual = evaluate_golden(e, g.key);
      if (!golden_matches(e, g.key, g.value, actual)) return fail(name + " " + g.key + ": got " + actual);
      ++n;
    }
  }
  return n == 5 ? Outcome{true, "5 derivations equal"} : fail("expected 5 induced goldens, found " + std::to_string(n));
}

Outcome slice_goldens() {
  auto u = upper4();
  auto act = induced_action(u, u.subspace("v"), u.subspace("h"));
  auto fs = slice_function_search(act.family, 2);
  const auto& names = act.chart.ring.names;
  if (!fs || fs->size() != 1 || (*fs)[0] != parse_polynomial(names, "z - y2*y3")) return fail("upper4 slice differs");
  if (apply(act.family[0], (*fs)[0]) != Polynomial(1)) return fail("delta(f) != 1");
  auto w = winkelmann8();
  auto wa = induced_action(w, w.subspace("v"), w.subspace("h"));
  for (unsigned b = 1; b <= kSliceDegreeCeiling; ++b)
    if (slice_function_search(wa.family, b)) return fail("winkelmann8 slice found at degree " + std::to_string(b));
  return {true, "z - y2*y3 with delta(f) = 1; winkelmann8 NoneFound for b <= 6"};
}

Outcome freeness() {
  std::string detail;
  for (const auto& e : catalog_pairs()) {
    const auto& a = e.doc.algebra;
    const auto& h = e.doc.subspace("h");
    auto same = freeness_check(a, h, h);
    if (same.verdict != FreenessVerdict::Refuted || !same.witness || !is_zero(same.witness->log) ||
        !verify_certificate(a, h, h, same))
      return fail(e.name + ": v = h not refuted at the identity");
  }
  for (const std::string name : {"winkelmann8", "yoshino7"}) {
    auto e = *catalog_entry(name);
    const auto& a = e.doc.algebra;
    auto v = e.doc.subspace("v"), h = e.doc.subspace("h");
    auto c = freeness_check(a, v, h);
    if (c.verdict == FreenessVerdict::Refuted) return fail(name + " refuted");
    if (c.verdict == FreenessVerdict::Unknown && c.clean_samples != kDefaultFreenessSamples)
      return fail(name + " unknown without clean samples");
    if (c.verdict == FreenessVerdict::Certified && (c.degree > 2 * a.nilpotency_step() || !verify_certificate(a, v, h, c)))
      return fail(name + " certificate does not re-verify");
    detail += name + " " + to_string(c.verdict) + " (" + c.reason + ", degree " + std::to_string(c.degree) + ") ";
  }
  return {true, detail + "; v = h refuted at identity"};
}

Outcome depth() {
  auto y = yoshino7();
  auto act = induced_action(y, y.subspace("v"), y.subspace("h"));
  auto rep = depth_bound(quotient_by_unit(act.family), 1);
  std::vector<std::pair<std::string, unsigned>> expect{{"y1", 1}, {"y2", 3}, {"y3", 5}, {"z1", 7}};
  if (rep.bounds != expect) return fail("bounds differ");
  if (rep.nonzero_term != 6) return fail("nonzero term differs");
  return {true, "y2 >= 3, y3 >= 5, z1 >= 7, g^(6) != 0"};
}

/// Random 2-step algebra: `low` generators whose brackets are random combinations of `high` central vectors.
std::optional<LieAlgebra> random_two_step(std::mt19937_64& rng, std::size_t index) {
  std::uniform_int_distribution<int> low_d(2, 5), coef(-2, 2);
  std::size_t low = low_d(rng);
  std::size_t high = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, 8 - low))(rng);
  std::size_t n = low + high;
  StructureConstants sc{n, {}};
  for (std::size_t i = 0; i < low; ++i)
    for (std::size_t j = i + 1; j < low; ++j) {
      Vector b(n);
      for (std::size_t k = low; k < n; ++k) b[k] = coef(rng);
      if (!is_zero(b)) sc.brackets[{i, j}] = b;
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back((i < low ? "X" : "Z") + std::to_string(i + 1));
  LieAlgebra a("random" + std::to_string(index), labels, sc);
  if (a.nilpotency_step() != 2) return std::nullopt;
  return a;
}

/// Pair in the reduced normal form: h = <X_1..X_m> abelian with X_j outside g^(1), v = <X_j + Z_j>, Z_j in g^(1).
std::optional<std::pair<Subspace, Subspace>> random_normal_pair(std::mt19937_64& rng, const LieAlgebra& a) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::size_t m = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  const Subspace& g1 = a.series_term(1);
  std::vector<Vector> xs, vs;
  for (std::size_t j = 0; j < m; ++j) {
    Vector x(a.dim()), z(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!g1.contains(a.basis_vector(k))) x[k] = coef(rng);
    for (const auto& b : g1.basis()) z = add(z, scale(Scalar(coef(rng)), b));
    xs.push_back(x);
    vs.push_back(add(x, z));
  }
  Subspace h = a.span(xs), v = a.span(vs);
  if (h.dim() != m || !intersect(h, g1).is_zero()) return std::nullopt;
  if (!a.is_abelian(h) || !intersect(v, h).is_zero() || v.dim() + h.dim() >= a.dim()) return std::nullopt;
  return std::make_pair(v, h);
}

Outcome two_step_slices() {
  std::mt19937_64 rng(8);
  std::size_t done = 0, attempts = 0;
  while (done < 50) {
    if (++attempts > 5000) return fail("could not draw 50 free pairs");
    auto a = random_two_step(rng, attempts);
    if (!a) continue;
    auto pair = random_normal_pair(rng, *a);
    if (!pair) continue;
    auto [v, h] = *pair;
    if (freeness_check(*a, v, h, 0, attempts).verdict != FreenessVerdict::Certified) continue;
    LieDocument doc{*a, {{"v", v}, {"h", h}}, {}, std::nullopt};
    auto act = induced_action(doc, v, h);
    auto s = degree_one_slice(act.family);
    if (!s) return fail(a->name() + ": degree_one_slice found nothing");
    if (s->dimension != a->dim() - v.dim() - h.dim()) return fail(a->name() + ": slice dimension differs");
    auto slice = level_set_slice(act, s->equations);
    if (auto bad = verify_slice(*a, v, h, slice, 100, done)) return fail(a->name() + ": " + *bad);
    ++done;
  }
  return {true, "50 algebras, 100 exact roundtrips each (" + std::to_string(attempts) + " draws)"};
}

Outcome properness() {
  auto y = yoshino7();
  auto ya = induced_action(y, y.subspace("v"), y.subspace("h"));
  auto yr = properness_witness_search(ya.family, 4);
  if (!yr.found || !verify_witness(ya.family, yr)) return fail("yoshino7 witness missing or unverified");
  auto w = winkelmann8();
  auto wa = induced_action(w, w.subspace("v"), w.subspace("h"));
  if (properness_witness_search(wa.family, 4).found) return fail("winkelmann8 witness found");
  std::string proper;
  for (const auto& e : catalog_pairs()) {
    const auto& a = e.doc.algebra;
    auto v = e.doc.subspace("v"), h = e.doc.subspace("h");
    if (freeness_check(a, v, h).verdict != FreenessVerdict::Certified) continue;
    auto act = induced_action(e.doc, v, h);
    if (action_degree(act.family) > 2) continue;
    if (properness_witness_search(act.family, 4).found) return fail(e.name + ": degree <= 2 but witness found");
    proper += " " + e.name;
  }
  return {true, "yoshino7 WitnessFound (verified); NoneFound for" + proper};
}

Outcome ad_filtration() {
  std::mt19937_64 rng(10);
  std::vector<LieAlgebra> algebras;
  for (const auto& n : catalog_names()) algebras.push_back(catalog_entry(n)->doc.algebra);
  for (int s = 0; s < 500; ++s) {
    const LieAlgebra& a = algebras[s % algebras.size()];
    std::size_t l = a.nilpotency_step();
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, l - 1)(rng);
    const Subspace& gj = a.series_term(j);
    Vector x = gj.combine(random_vector(rng, gj.dim()));
    GroupElement g{random_vector(rng, a.dim())};
    Vector moved = mat_vec(Ad(a, g), x);
    if (!a.series_term(j + 1).contains(sub(moved, x))) return fail(a.name() + ": Ad(g)X - X leaves g^(j+1)");
  }
  return {true, "500 samples over " + std::to_string(algebras.size()) + " algebras"};
}

Outcome flow_consistency() {
  std::mt19937_64 rng(11);
  std::string names;
  for (const auto& e : catalog_pairs()) {
    const auto& a = e.doc.algebra;
    auto v = e.doc.subspace("v"), h = e.doc.subspace("h");
    if (!a.is_abelian(v)) return fail(e.name + ": v is not abelian");
    auto act = induced_action(e.doc, v, h);
    auto phi = flow(act.family);
    std::size_t m = act.chart.dim(), k = act.family.size();
    for (int s = 0; s < 200; ++s) {
      Vector y = random_vector(rng, m), t = random_vector(rng, k);
      Vector pt = y;
      pt.insert(pt.end(), t.begin(), t.end());
      Vector by_flow(m);
      for (std::size_t i = 0; i < m; ++i) by_flow[i] = phi[i].evaluate(pt);
      Vector g(a.dim());
      for (std::size_t j = 0; j < k; ++j) g = add(g, scale(t[j], act.generators[j]));
      if (act_on_chart(act.chart, g, y) != by_flow) return fail(e.name + ": flow and group action differ");
    }
    names += " " + e.name;
  }
  return {true, "200 samples each for" + names};
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

/// Drops the "versions" object from a pretty-printed report.
std::string without_versions(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  bool skipping = false;
  while (std::getline(in, line)) {
    if (line.find("\"versions\"") != std::string::npos) {
      skipping = line.find('{') != std::string::npos && line.find('}') == std::string::npos;
      continue;
    }
    if (skipping) {
      if (line.find('}') != std::string::npos) skipping = false;
      continue;
    }
    out += line + "\n";
  }
  return out;
}

Outcome determinism() {
  std::string cmd = std::string(NILQ_CLI) + " demo winkelmann8 --json --seed 0";
  int s1 = 0, s2 = 0;
  std::string a = run(cmd, s1), b = run(cmd, s2);
  if (s1 != 0 || s2 != 0) return fail("demo exited with status " + std::to_string(s1));
  if (a.empty() || without_versions(a) != without_versions(b)) return fail("reports differ");
  return {true, std::to_string(a.size()) + " bytes, identical"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Jacobi and structure", jacobi_and_structure},
      {"central series", central_series},
      {"BCH against the matrix model", bch_vs_matrices},
      {"induced derivations", induced_goldens},
      {"slice goldens", slice_goldens},
      {"freeness verdicts", freeness},
      {"depth bounds", depth},
      {"2-step degree-one slices", two_step_slices},
      {"properness dichotomy", properness},
      {"Ad preserves the filtration", ad_filtration},
      {"flow against group action", flow_consistency},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << t << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
