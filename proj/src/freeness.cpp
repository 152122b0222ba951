#include "nilq/freeness.hpp"

#include <functional>
#include <random>
#include <set>
#include <unordered_map>

#include "nilq/linalg.hpp"

namespace nilq {
namespace {

using Univariate = std::vector<Scalar>;  // coefficient of x^k at index k

void strip(Univariate& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

Univariate univariate_rem(Univariate a, const Univariate& b) {
  strip(a);
  while (a.size() >= b.size() && !a.empty()) {
    Scalar f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    strip(a);
  }
  return a;
}

Univariate univariate_gcd(Univariate a, Univariate b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Univariate r = univariate_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Univariate as_univariate(const Polynomial& p, std::size_t var) {
  Univariate out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = exponent(m, var);
    if (out.size() <= e) out.resize(e + 1);
    out[e] += c;
  }
  strip(out);
  return out;
}

std::optional<Scalar> rational_sqrt(const Scalar& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class n = x.get_num(), d = x.get_den();
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Scalar(rn) / Scalar(rd);
}

/// Rational roots of a polynomial of degree one or two.
std::vector<Scalar> low_degree_roots(const Univariate& p) {
  if (p.size() == 2) return {-p[0] / p[1]};
  if (p.size() == 3) {
    Scalar disc = p[1] * p[1] - 4 * p[0] * p[2];
    if (auto r = rational_sqrt(disc)) return {(-p[1] + *r) / (2 * p[2]), (-p[1] - *r) / (2 * p[2])};
  }
  return {};
}

Vector random_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-10, 10), den(1, 4);
  Vector t(n);
  for (auto& x : t) {
    x = Scalar(num(rng)) / den(rng);
  }
  return t;
}

std::string key(const Polynomial& p) { return p.to_string({}); }

}  // namespace

std::string to_string(FreenessVerdict v) {
  switch (v) {
    case FreenessVerdict::Certified:
      return "Certified";
    case FreenessVerdict::Refuted:
      return "Refuted";
    default:
      return "Unknown";
  }
}

Subspace isotropy_condition(const LieAlgebra& a, const Subspace& v, const Subspace& h, const GroupElement& g) {
  Matrix ad = Ad(a, g);
  std::vector<Vector> moved;
  for (const auto& b : v.basis()) moved.push_back(mat_vec(ad, b));
  return intersect(a.span(moved), h);
}

Matrix ParamMatrix::evaluate(const Vector& t) const {
  Matrix out = zero_matrix(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) out[r][c] = entries[r][c].evaluate(t);
  return out;
}

ParamMatrix param_matrix(const LieAlgebra& a, const Subspace& v, const Subspace& h) {
  std::size_t n = a.dim();
  std::vector<Polynomial> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(Polynomial::variable(i));
  ParamMatrix m;
  m.v_columns = v.dim();
  m.entries.assign(n, {});
  for (const auto& b : v.basis()) {
    auto col = adjoint(a, t, lift<Polynomial>(b));
    for (std::size_t r = 0; r < n; ++r) m.entries[r].push_back(col[r]);
  }
  for (const auto& b : h.basis())
    for (std::size_t r = 0; r < n; ++r) m.entries[r].emplace_back(b[r]);
  return m;
}

std::vector<Polynomial> maximal_minors(const ParamMatrix& m) {
  std::size_t n = m.rows(), c = m.cols();
  if (c == 0 || c > n || n > 30) return {};
  // det of the rows in `mask` against the last popcount(mask) columns, by Laplace expansion
  std::unordered_map<std::uint32_t, Polynomial> memo;
  std::function<Polynomial(std::uint32_t)> det = [&](std::uint32_t mask) -> Polynomial {
    if (mask == 0) return Polynomial(1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::size_t col = c - static_cast<std::size_t>(__builtin_popcount(mask));
    Polynomial out;
    int sign = 1;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(mask & (1u << r))) continue;
      if (!m.entries[r][col].is_zero()) {
        Polynomial sub = det(mask & ~(1u << r));
        if (!sub.is_zero()) out += sign > 0 ? m.entries[r][col] * sub : -(m.entries[r][col] * sub);
      }
      sign = -sign;
    }
    memo.emplace(mask, out);
    return out;
  };
  std::vector<Polynomial> out;
  std::set<std::string> seen;
  std::vector<std::size_t> rows(c);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t k) {
    if (k == c) {
      std::uint32_t mask = 0;
      for (auto r : rows) mask |= 1u << r;
      Polynomial d = det(mask);
      if (d.is_zero()) return;
      d *= Scalar(1 / d.terms().rbegin()->second);
      if (seen.insert(key(d)).second) out.push_back(std::move(d));
      return;
    }
    for (std::size_t r = start; r < n; ++r) {
      rows[k] = r;
      choose(r + 1, k + 1);
    }
  };
  choose(0, 0);
  std::sort(out.begin(), out.end(), [](const Polynomial& x, const Polynomial& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    if (x.size() != y.size()) return x.size() < y.size();
    return key(x) < key(y);
  });
  return out;
}

namespace {

/// Multipliers q_i of degree <= d with sum q_i m_i = 1, if any.
std::optional<std::vector<Polynomial>> unit_combination(const std::vector<Polynomial>& minors, unsigned d) {
  std::set<std::size_t> used;
  for (const auto& m : minors)
    for (const auto& [mono, c] : m.terms())
      for (std::size_t i = 0; i < mono.size(); ++i)
        if (mono[i]) used.insert(i);
  auto monos = monomials_up_to(std::vector<std::size_t>(used.begin(), used.end()), d);
  std::size_t unknowns = minors.size() * monos.size();
  std::map<Monomial, SparseSystem::Row, GrLex> rows;
  rows[Monomial{}];
  for (std::size_t i = 0; i < minors.size(); ++i)
    for (std::size_t k = 0; k < monos.size(); ++k)
      for (const auto& [nu, c] : minors[i].terms()) {
        Monomial prod = multiply(monos[k], nu);
        trim(prod);
        rows[prod][i * monos.size() + k] += c;
      }
  SparseSystem sys(unknowns);
  for (auto& [mono, row] : rows)
    if (!sys.add(std::move(row), mono.empty() ? Scalar(1) : Scalar(0))) return std::nullopt;
  auto sol = sys.solution();
  if (!sol) return std::nullopt;
  std::vector<Polynomial> q(minors.size());
  for (std::size_t i = 0; i < minors.size(); ++i)
    for (std::size_t k = 0; k < monos.size(); ++k) q[i].add_term(monos[k], (*sol)[i * monos.size() + k]);
  return q;
}

/// A nonzero x in v with M(t) rank-deficient gives Ad(exp t)(x) ∈ h.
std::optional<Vector> deficiency_witness(const ParamMatrix& m, const Subspace& v, const Vector& t) {
  Matrix num = m.evaluate(t);
  if (rank(num) == m.cols()) return std::nullopt;
  auto ns = nullspace(num, m.cols());
  Vector x(v.ambient());
  for (std::size_t i = 0; i < m.v_columns; ++i) x = add(x, scale(ns.at(0)[i], v.basis()[i]));
  return x;
}

}  // namespace

FreenessCertificate freeness_check(const LieAlgebra& a, const Subspace& v, const Subspace& h, unsigned degree_budget,
                                   std::uint64_t seed, std::size_t samples) {
  if (!a.is_subalgebra(v) || !a.is_subalgebra(h)) throw InputError("freeness_check: v and h must be subalgebras");
  FreenessCertificate cert;
  Subspace meet = intersect(v, h);
  if (!meet.is_zero()) {
    cert.verdict = FreenessVerdict::Refuted;
    cert.witness = identity(a);
    cert.witness_x = meet.basis()[0];
    return cert;
  }
  unsigned budget = degree_budget ? degree_budget : static_cast<unsigned>(2 * a.nilpotency_step());
  ParamMatrix m = param_matrix(a, v, h);
  auto minors = maximal_minors(m);
  cert.minor_count = minors.size();
  for (const auto& p : minors)
    if (p.is_constant()) {
      cert.verdict = FreenessVerdict::Certified;
      cert.reason = "constant-minor";
      cert.minors = {p};
      cert.multipliers = {Polynomial(Scalar(1) / p.constant_term())};
      return cert;
    }
  if (!minors.empty())
    for (unsigned d = 0; d <= budget; ++d) {
      cert.max_degree_searched = d;
      if (auto q = unit_combination(minors, d)) {
        cert.verdict = FreenessVerdict::Certified;
        cert.reason = "unit-ideal";
        cert.degree = d;
        for (std::size_t i = 0; i < minors.size(); ++i)
          if (!(*q)[i].is_zero()) {
            cert.minors.push_back(minors[i]);
            cert.multipliers.push_back((*q)[i]);
          }
        return cert;
      }
    }

  std::mt19937_64 rng(seed);
  auto refute = [&](const Vector& t, const Vector& x) {
    cert.verdict = FreenessVerdict::Refuted;
    cert.witness = GroupElement{t};
    cert.witness_x = x;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    Vector t = random_point(rng, a.dim());
    ++cert.samples_tried;
    if (auto x = deficiency_witness(m, v, t)) {
      refute(t, *x);
      return cert;
    }
    ++cert.clean_samples;
    // back-substitution along one coordinate line through the sample
    if (s >= 50 || minors.empty()) continue;
    for (std::size_t k = 0; k < a.dim(); ++k) {
      std::vector<Polynomial> images;
      for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(i == k ? Polynomial::variable(k) : Polynomial(t[i]));
      Univariate g;
      for (const auto& p : minors) {
        g = univariate_gcd(g, as_univariate(p.substitute(images), k));
        if (g.size() == 1) break;
      }
      for (const auto& root : low_degree_roots(g)) {
        Vector u = t;
        u[k] = root;
        if (auto x = deficiency_witness(m, v, u)) {
          refute(u, *x);
          return cert;
        }
      }
    }
  }
  return cert;
}

bool verify_certificate(const LieAlgebra& a, const Subspace& v, const Subspace& h, const FreenessCertificate& c) {
  switch (c.verdict) {
    case FreenessVerdict::Refuted: {
      if (!c.witness || is_zero(c.witness_x) || !v.contains(c.witness_x)) return false;
      return h.contains(mat_vec(Ad(a, *c.witness), c.witness_x));
    }
    case FreenessVerdict::Certified: {
      if (c.minors.size() != c.multipliers.size() || c.minors.empty()) return false;
      auto all = maximal_minors(param_matrix(a, v, h));
      std::set<std::string> known;
      for (const auto& p : all) known.insert(key(p));
      Polynomial total;
      for (std::size_t i = 0; i < c.minors.size(); ++i) {
        if (!known.count(key(c.minors[i]))) return false;
        total += c.multipliers[i] * c.minors[i];
      }
      return total == Polynomial(1);
    }
    default:
      return true;
  }
}

}  // namespace nilq
