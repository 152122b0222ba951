#include "nilq/witness.hpp"

#include <climits>
#include <set>

namespace nilq {
namespace {

using QPoly = BasicPolynomial<QuadraticNumber>;
using LaurentPoly = std::map<int, QPoly>;

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto& slot = out[ea + eb];
      slot += ca * cb;
      if (slot.is_zero()) out.erase(ea + eb);
    }
  return out;
}

/// Substitutes Laurent rays into the flow polynomials.
std::vector<LaurentPoly> evaluate_flow(const std::vector<Polynomial>& phi, const std::vector<LaurentPoly>& inputs) {
  std::vector<std::vector<LaurentPoly>> powers(inputs.size());
  auto power = [&](std::size_t var, unsigned e) -> const LaurentPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(LaurentPoly{{0, QPoly(1)}});
    while (cache.size() <= e) cache.push_back(multiply(cache.back(), inputs[var]));
    return cache[e];
  };
  std::vector<LaurentPoly> out;
  for (const auto& p : phi) {
    LaurentPoly sum;
    for (const auto& [m, c] : p.terms()) {
      LaurentPoly term{{0, QPoly(QuadraticNumber(c))}};
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) term = multiply(term, power(i, m[i]));
      for (const auto& [e, q] : term) {
        auto& slot = sum[e];
        slot += q;
        if (slot.is_zero()) sum.erase(e);
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

struct BudgetExceeded {};

class Solver {
 public:
  Solver(std::size_t vars, std::size_t budget) : vars_(vars), budget_(budget) {}

  std::optional<std::vector<QuadraticNumber>> solve(std::vector<QPoly> eqs) {
    try {
      return search(std::move(eqs), {}, 0);
    } catch (const BudgetExceeded&) {
      exhausted = true;
      return std::nullopt;
    }
  }

  std::size_t nodes = 0;
  bool exhausted = false;

 private:
  using Subs = std::vector<std::pair<std::size_t, QPoly>>;

  std::optional<std::vector<QuadraticNumber>> finish(const Subs& subs) const {
    std::vector<QuadraticNumber> point(vars_);
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) point[it->first] = it->second.evaluate(point);
    return point;
  }

  static QPoly divide_monomial(const QPoly& p, const Monomial& m) {
    QPoly out;
    for (const auto& [mono, c] : p.terms()) {
      Monomial q = mono;
      for (std::size_t i = 0; i < m.size(); ++i) q[i] -= m[i];
      out.add_term(q, c);
    }
    return out;
  }

  static Monomial common_factor(const QPoly& p) {
    Monomial g;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
      if (first) {
        g = m;
        first = false;
        continue;
      }
      g.resize(std::min(g.size(), m.size()));
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
    }
    trim(g);
    return g;
  }

  std::optional<std::vector<QuadraticNumber>> assign(std::vector<QPoly> eqs, Subs subs, long field, std::size_t var,
                                                     const QPoly& value) {
    try {
      for (auto& e : eqs) e = e.substitute(var, value);
    } catch (const CapabilityError&) {
      return std::nullopt;
    }
    subs.emplace_back(var, value);
    return search(std::move(eqs), std::move(subs), field);
  }

  std::optional<std::vector<QuadraticNumber>> search(std::vector<QPoly> eqs, Subs subs, long field) {
    if (++nodes > budget_) throw BudgetExceeded{};
    std::vector<QPoly> live;
    for (auto& e : eqs) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return std::nullopt;
      live.push_back(std::move(e));
    }
    if (live.empty()) return finish(subs);

    // linear elimination with a constant pivot, preferring short right-hand sides
    std::optional<std::pair<std::size_t, QPoly>> best;
    std::size_t best_cost = SIZE_MAX;
    for (const auto& e : live)
      for (std::size_t v = 0; v < e.span(); ++v) {
        if (!e.uses(v)) continue;
        auto parts = e.coefficients_in(v);
        if (parts.size() != 2 || !parts[1].is_constant()) continue;
        if (parts[0].size() >= best_cost) continue;
        best_cost = parts[0].size();
        QPoly value = parts[0] * (QuadraticNumber(-1) / parts[1].constant_term());
        best.emplace(v, std::move(value));
      }
    if (best) return assign(std::move(live), std::move(subs), field, best->first, best->second);

    // a monomial factor splits the branch
    for (std::size_t k = 0; k < live.size(); ++k) {
      Monomial g = common_factor(live[k]);
      if (g.empty()) continue;
      for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v])
          if (auto r = assign(live, subs, field, v, QPoly())) return r;
      live[k] = divide_monomial(live[k], g);
      return search(std::move(live), std::move(subs), field);
    }

    // univariate quadratics
    for (const auto& e : live) {
      std::set<std::size_t> used;
      for (const auto& [m, c] : e.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
          if (m[i]) used.insert(i);
      if (used.size() != 1) continue;
      std::size_t v = *used.begin();
      auto c = e.coefficients_in(v);
      if (c.size() != 3) continue;
      QuadraticNumber a = c[2].constant_term(), b = c[1].constant_term(), k = c[0].constant_term();
      std::optional<QuadraticNumber> root;
      try {
        root = quadratic_sqrt(b * b - QuadraticNumber(4) * a * k, field);
      } catch (const CapabilityError&) {
        return std::nullopt;
      }
      if (!root) return std::nullopt;
      long f = root->is_rational() ? field : root->field();
      for (int sign : {1, -1}) {
        QuadraticNumber r = (-b + QuadraticNumber(sign) * *root) / (QuadraticNumber(2) * a);
        if (auto out = assign(live, subs, f, v, QPoly(r))) return out;
      }
      return std::nullopt;
    }

    // seeded guesses on the most frequent unknown
    std::map<std::size_t, std::size_t> freq;
    for (const auto& e : live)
      for (const auto& [m, c] : e.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
          if (m[i]) ++freq[i];
    std::size_t v = freq.begin()->first;
    for (const auto& [i, n] : freq)
      if (n > freq[v]) v = i;
    for (int guess : {0, 1, -1})
      if (auto r = assign(live, subs, field, v, QPoly(guess))) return r;
    return std::nullopt;
  }

  std::size_t vars_;
  std::size_t budget_;
};

std::vector<LaurentPoly> lift_rays(const std::vector<LaurentSeries>& rays) {
  std::vector<LaurentPoly> out;
  for (const auto& r : rays) {
    LaurentPoly p;
    for (const auto& [e, c] : r) p[e] = QPoly(c);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<LaurentSeries> image_of(const std::vector<Derivation>& family, const std::vector<LaurentSeries>& point,
                                    const std::vector<LaurentSeries>& group) {
  auto inputs = lift_rays(point);
  auto g = lift_rays(group);
  inputs.insert(inputs.end(), g.begin(), g.end());
  std::vector<LaurentSeries> out;
  for (const auto& lp : evaluate_flow(flow(family), inputs)) {
    LaurentSeries s;
    for (const auto& [e, q] : lp) {
      if (!q.is_constant()) throw InconsistencyError("witness ray has unresolved unknowns");
      if (!is_zero(q.constant_term())) s[e] = q.constant_term();
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

int laurent_degree(const LaurentSeries& s) { return s.empty() ? INT_MIN : s.rbegin()->first; }

std::string format_laurent(const LaurentSeries& s, const std::string& var) {
  if (s.empty()) return "0";
  std::string out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = c.to_string();
    bool negative = coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
    std::string mono = e == 0 ? "" : e == 1 ? var : var + "^" + std::to_string(e);
    if (mono.empty())
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

PropernessReport properness_witness_search(const std::vector<Derivation>& family, unsigned ansatz_degree,
                                           std::size_t node_budget) {
  if (family.empty()) throw InputError("properness_witness_search: empty family");
  if (!pairwise_commuting(family)) throw InputError("properness_witness_search: derivations do not commute");
  std::size_t m = family[0].ring.size(), k = family.size();
  auto phi = flow(family);
  PropernessReport report;
  report.ansatz_degree = ansatz_degree;
  for (unsigned d = 1; d <= ansatz_degree; ++d)
    for (unsigned top = 1; top <= d; ++top)
      for (std::size_t lead = 0; lead < k; ++lead) {
        // unknowns: x_{i,e} for t^{-e}, e = 0..d, then s_{j,e} for t^e, e = 1..d
        std::size_t xs = m * (d + 1);
        std::size_t vars = xs + k * d;
        std::vector<LaurentPoly> inputs;
        for (std::size_t i = 0; i < m; ++i) {
          LaurentPoly r;
          for (unsigned e = 0; e <= d; ++e) r[-static_cast<int>(e)] = QPoly::variable(i * (d + 1) + e);
          inputs.push_back(std::move(r));
        }
        for (std::size_t j = 0; j < k; ++j) {
          LaurentPoly r;
          for (unsigned e = 1; e <= d; ++e) {
            if (j == lead && e > top) continue;
            r[static_cast<int>(e)] = (j == lead && e == top) ? QPoly(1) : QPoly::variable(xs + j * d + (e - 1));
          }
          inputs.push_back(std::move(r));
        }
        std::vector<QPoly> eqs;
        for (auto& lp : evaluate_flow(phi, inputs))
          for (auto& [e, q] : lp)
            if (e > 0) eqs.push_back(std::move(q));
        Solver solver(vars, node_budget);
        auto sol = solver.solve(std::move(eqs));
        report.nodes += solver.nodes;
        report.budget_exhausted |= solver.exhausted;
        if (!sol) continue;
        PropernessReport found = report;
        found.found = true;
        found.ansatz_degree = d;
        found.unbounded_index = lead;
        for (std::size_t i = 0; i < m; ++i) {
          LaurentSeries s;
          for (unsigned e = 0; e <= d; ++e)
            if (!is_zero((*sol)[i * (d + 1) + e])) s[-static_cast<int>(e)] = (*sol)[i * (d + 1) + e];
          found.point_ray.push_back(std::move(s));
        }
        for (std::size_t j = 0; j < k; ++j) {
          LaurentSeries s;
          for (unsigned e = 1; e <= d; ++e) {
            if (j == lead && e > top) continue;
            QuadraticNumber c = (j == lead && e == top) ? QuadraticNumber(1) : (*sol)[xs + j * d + (e - 1)];
            if (!is_zero(c)) s[static_cast<int>(e)] = c;
          }
          found.group_ray.push_back(std::move(s));
        }
        found.image_ray = image_of(family, found.point_ray, found.group_ray);
        if (verify_witness(family, found)) return found;
      }
  return report;
}

bool verify_witness(const std::vector<Derivation>& family, const PropernessReport& r) {
  if (!r.found || r.group_ray.size() != family.size() || r.point_ray.size() != family.at(0).ring.size()) return false;
  if (laurent_degree(r.group_ray.at(r.unbounded_index)) <= 0) return false;
  for (const auto& x : r.point_ray)
    if (laurent_degree(x) > 0) return false;
  auto image = image_of(family, r.point_ray, r.group_ray);
  if (image != r.image_ray) return false;
  for (const auto& y : image)
    if (laurent_degree(y) > 0) return false;
  return true;
}

}  // namespace nilq
