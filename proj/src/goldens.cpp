#include "nilq/goldens.hpp"

#include <algorithm>
#include <sstream>

#include "nilq/freeness.hpp"
#include "nilq/induced.hpp"
#include "nilq/reduction.hpp"
#include "nilq/three_step.hpp"
#include "nilq/witness.hpp"

namespace nilq {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(' '), e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

/// Remainder of the key after its first n words.
std::string rest_after(const std::string& key, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pos = key.find_first_not_of(' ', pos);
    pos = key.find(' ', pos);
    if (pos == std::string::npos) return "";
  }
  return trim(key.substr(pos));
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

std::string format_basis(const LieAlgebra& a, const std::vector<Vector>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(a.format(v));
  return join(out);
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t m = a.size();
  PolyMatrix out(m, std::vector<Polynomial>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

/// exp of a strictly upper-triangular polynomial matrix.
PolyMatrix poly_exp(const PolyMatrix& n) {
  std::size_t m = n.size();
  PolyMatrix out(m, std::vector<Polynomial>(m)), term = out;
  for (std::size_t i = 0; i < m; ++i) out[i][i] = term[i][i] = Polynomial(1);
  for (std::size_t k = 1; k < m; ++k) {
    term = poly_mul(term, n);
    for (auto& row : term)
      for (auto& p : row) p = p * Polynomial(Scalar(1) / k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += term[i][j];
  }
  return out;
}

PolyMatrix present_poly(const MatrixPresentation& p, const std::vector<Polynomial>& x) {
  PolyMatrix out(p.size, std::vector<Polynomial>(p.size));
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t i = 0; i < p.size; ++i)
      for (std::size_t j = 0; j < p.size; ++j)
        if (!is_zero(p.images[k][i][j])) out[i][j] += x[k] * Polynomial(p.images[k][i][j]);
  }
  return out;
}

/// Variables for the s0 directions followed by t.
std::vector<std::string> model_names(const LieDocument& doc) {
  std::vector<std::string> names;
  const auto& s0 = doc.subspace("s0");
  for (std::size_t i = 0; i < s0.dim(); ++i)
    names.push_back(direction_name(doc, s0.basis()[i], "s" + std::to_string(i + 1)));
  names.push_back("t");
  return names;
}

/// Entry (i, j), 1-based, of exp(-P) exp(tW) exp(P) with P over s0 and W spanning v.
std::string model_star_entry(const LieDocument& doc, std::size_t i, std::size_t j) {
  const LieAlgebra& a = doc.algebra;
  if (!a.presentation()) throw CapabilityError("model_star_entry: no matrix presentation");
  const auto& pres = *a.presentation();
  const auto& s0 = doc.subspace("s0");
  std::size_t k = s0.dim();
  std::vector<Polynomial> p(a.dim()), tw(a.dim());
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (!is_zero(s0.basis()[b][c])) p[c] += Polynomial::variable(b) * Polynomial(s0.basis()[b][c]);
  const Vector& w = doc.subspace("v").basis().at(0);
  for (std::size_t c = 0; c < a.dim(); ++c)
    if (!is_zero(w[c])) tw[c] = Polynomial::variable(k) * Polynomial(w[c]);
  std::vector<Polynomial> minus_p;
  for (const auto& q : p) minus_p.push_back(q * Polynomial(Scalar(-1)));
  PolyMatrix m = poly_mul(poly_mul(poly_exp(present_poly(pres, minus_p)), poly_exp(present_poly(pres, tw))),
                          poly_exp(present_poly(pres, p)));
  if (i == 0 || j == 0 || i > pres.size || j > pres.size) throw InputError("model_star_entry: index out of range");
  return m[i - 1][j - 1].to_string(model_names(doc));
}

std::string series_string(const LieAlgebra& a) {
  std::string out = "[";
  for (std::size_t j = 0; j < a.central_series().size(); ++j)
    out += (j ? "," : "") + std::to_string(a.central_series()[j].dim());
  return out + "]";
}

InducedAction action_for(const LieDocument& doc, const std::vector<std::string>& w) {
  return induced_action(doc, doc.subspace(w.at(1)), doc.subspace(w.at(2)));
}

std::string depth_of_quotient(const LieDocument& doc, unsigned d_x0) {
  auto act = induced_action(doc, doc.subspace("v"), doc.subspace("h"));
  auto rep = depth_bound(quotient_by_unit(act.family), d_x0);
  std::string out;
  for (const auto& [name, d] : rep.bounds) out += (out.empty() ? "" : " ") + name + ":" + std::to_string(d);
  return out;
}

std::vector<Polynomial> parse_equations(const std::vector<std::string>& names, std::string text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') text = text.substr(1);
  if (!text.empty() && text.back() == '}') text.pop_back();
  std::vector<Polynomial> out;
  for (auto item : split_list(text)) {
    auto eq = item.find('=');
    if (eq != std::string::npos) {
      Polynomial rhs = parse_polynomial(names, trim(item.substr(eq + 1)));
      out.push_back(parse_polynomial(names, trim(item.substr(0, eq))) - rhs);
    } else {
      out.push_back(parse_polynomial(names, item));
    }
  }
  return out;
}

}  // namespace

std::string evaluate_golden(const CatalogEntry& entry, const std::string& key) {
  const LieDocument& doc = entry.doc;
  const LieAlgebra& a = doc.algebra;
  auto w = words(key);
  if (w.empty()) throw InputError("golden: empty key");
  const std::string& op = w[0];
  if (op == "jacobi") {
    auto bad = jacobi_check(a.structure());
    return bad ? "violation " + a.format(bad->residual) : "ok";
  }
  if (op == "central_series") return series_string(a);
  if (op == "nilpotency_step") return std::to_string(a.nilpotency_step());
  if (op == "bracket") return a.format(a.bracket(parse_combination(a, w.at(1)), parse_combination(a, w.at(2))));
  if (op == "star") return a.format(star(a, parse_combination(a, w.at(1)), parse_combination(a, w.at(2))));
  if (op == "center") return format_basis(a, a.center().basis());
  if (op == "h_slice") return format_basis(a, h_slice(a, doc.subspace(w.at(1))).part_bases[0]);
  if (op == "levi_malcev") {
    auto r = levi_malcev_decomposition(a, doc.subspace(w.at(1)), doc.subspace(w.at(2)));
    if (auto* ne = std::get_if<NotExists>(&r)) return "NotExists(" + std::to_string(ne->level) + ")";
    return "exists";
  }
  if (op == "freeness") return to_string(freeness_check(a, doc.subspace(w.at(1)), doc.subspace(w.at(2))).verdict);
  if (op == "induced") {
    Vector x = parse_combination(a, rest_after(key, 3));
    auto act = induced_action(doc, a.span({x}), doc.subspace(w.at(2)));
    return format_derivation(act.family.at(0));
  }
  if (op == "slice_search") {
    auto act = action_for(doc, w);
    auto fs = slice_function_search(act.family, static_cast<unsigned>(std::stoul(w.at(3))));
    if (!fs) return "NoneFound";
    std::vector<std::string> out;
    for (const auto& f : *fs) out.push_back(f.to_string(act.chart.ring.names));
    return join(out);
  }
  if (op == "witness") {
    auto act = action_for(doc, w);
    auto r = properness_witness_search(act.family, static_cast<unsigned>(std::stoul(w.at(3))));
    return r.found ? "WitnessFound" : "NoneFound";
  }
  if (op == "family_split") return family_split(a, doc.subspace(w.at(1)), doc.subspace(w.at(2))) ? "found" : "none";
  if (op == "three_step_degree")
    return std::to_string(three_step_normal_pair(a, doc.subspace(w.at(1)), doc.subspace(w.at(2))).degree);
  if (op == "dim1") {
    auto r = dim1_pipeline(doc, doc.subspace(w.at(1)), doc.subspace(w.at(2)));
    if (auto* u = std::get_if<Unsupported>(&r)) return "Unsupported(" + u->reason + ")";
    return std::get<SliceDescription>(r).describe();
  }
  if (op == "degree_one_slice") {
    auto act = action_for(doc, w);
    auto s = degree_one_slice(act.family);
    return s ? "dim " + std::to_string(s->dimension) : "NoneFound";
  }
  if (op == "depth") return depth_of_quotient(doc, static_cast<unsigned>(std::stoul(w.at(2))));
  if (op == "model_star_entry") return model_star_entry(doc, std::stoul(w.at(1)), std::stoul(w.at(2)));
  throw InputError("golden: unknown key '" + key + "'");
}

bool golden_matches(const CatalogEntry& entry, const std::string& key, const std::string& expected,
                    const std::string& actual) {
  if (expected == actual) return true;
  const LieDocument& doc = entry.doc;
  auto w = words(key);
  if (w.empty()) return false;
  const std::string& op = w[0];
  try {
    if (op == "center" || op == "h_slice") {
      auto x = split_list(expected), y = split_list(actual);
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      return x == y;
    }
    if (op == "induced") {
      auto ring = make_chart(doc, doc.subspace(w.at(2))).ring;
      return parse_derivation(ring, expected) == parse_derivation(ring, actual);
    }
    if (op == "slice_search" || op == "dim1") {
      if (actual == "NoneFound" || expected == "NoneFound" || actual.rfind("Unsupported", 0) == 0) return false;
      auto names = make_chart(doc, doc.subspace(w.at(2))).ring.names;
      return parse_equations(names, expected) == parse_equations(names, actual);
    }
    if (op == "model_star_entry") {
      auto names = model_names(doc);
      return parse_polynomial(names, expected) == parse_polynomial(names, actual);
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

std::vector<GoldenOutcome> check_goldens(const CatalogEntry& entry) {
  std::vector<GoldenOutcome> out;
  for (const auto& g : entry.goldens) {
    GoldenOutcome o{g, "", false};
    try {
      o.actual = evaluate_golden(entry, g.key);
      o.pass = golden_matches(entry, g.key, g.value, o.actual);
    } catch (const std::exception& e) {
      o.actual = std::string("error: ") + e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace nilq
