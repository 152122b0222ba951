#include "nilq/bch.hpp"

#include <algorithm>
#include <array>

namespace nilq {
namespace {

using FreeElement = std::map<std::string, Scalar>;

FreeElement free_multiply(const FreeElement& a, const FreeElement& b, std::size_t max_len) {
  FreeElement out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      if (wa.size() + wb.size() > max_len) continue;
      out[wa + wb] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

FreeElement free_exp(char letter, std::size_t max_len) {
  FreeElement out;
  Scalar f = 1;
  for (std::size_t k = 0; k <= max_len; ++k) {
    if (k) f /= static_cast<unsigned long>(k);
    out[std::string(k, letter)] = f;
  }
  return out;
}

BchTable build_table(int max_degree) {
  auto n = static_cast<std::size_t>(max_degree);
  FreeElement z = free_multiply(free_exp('x', n), free_exp('y', n), n);
  z.erase("");
  FreeElement log;
  FreeElement power = z;
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar c(k % 2 ? 1 : -1, static_cast<unsigned long>(k));
    for (const auto& [w, v] : power) log[w] += c * v;
    power = free_multiply(power, z, n);
  }
  // Dynkin–Specht–Wever: a homogeneous Lie element P of degree d equals
  // (1/d) sum_w P_w [w], with [w] the left-normed bracketing of w.
  std::map<std::string, Scalar> lie;
  for (const auto& [w, v] : log) {
    if (is_zero(v)) continue;
    Scalar c = v / static_cast<unsigned long>(w.size());
    if (w.size() == 1) {
      lie[w] += c;
      continue;
    }
    if (w[0] == w[1]) continue;
    if (w[0] == 'y') {
      std::string flipped = w;
      std::swap(flipped[0], flipped[1]);
      lie[flipped] -= c;
    } else {
      lie[w] += c;
    }
  }
  BchTable table{max_degree, {}};
  for (const auto& [w, c] : lie)
    if (!is_zero(c)) table.terms.push_back({c, w});
  // Prefixes before extensions; the evaluator relies on it.
  std::stable_sort(table.terms.begin(), table.terms.end(), [](const BchTerm& a, const BchTerm& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  return table;
}

}  // namespace

const BchTable& bch_table(int max_degree) {
  if (max_degree < 1 || max_degree > kMaxBchDegree)
    throw CapabilityError("BCH degree " + std::to_string(max_degree) + " outside supported range 1.." +
                          std::to_string(kMaxBchDegree));
  static const std::array<BchTable, kMaxBchDegree> tables = [] {
    std::array<BchTable, kMaxBchDegree> t;
    BchTable full = build_table(kMaxBchDegree);
    for (int d = 1; d <= kMaxBchDegree; ++d) {
      t[d - 1].max_degree = d;
      for (const auto& term : full.terms)
        if (static_cast<int>(term.word.size()) <= d) t[d - 1].terms.push_back(term);
    }
    return t;
  }();
  return tables[max_degree - 1];
}

Vector star(const LieAlgebra& a, const Vector& x, const Vector& y) { return star<Scalar>(a, x, y); }

GroupElement identity(const LieAlgebra& a) { return {Vector(a.dim())}; }

GroupElement multiply(const LieAlgebra& a, const GroupElement& g, const GroupElement& h) {
  return {star(a, g.log, h.log)};
}

GroupElement inverse(const GroupElement& g) { return {negate(g.log)}; }

Matrix Ad(const LieAlgebra& a, const GroupElement& g) {
  Matrix m = zero_matrix(a.dim(), a.dim());
  for (std::size_t c = 0; c < a.dim(); ++c) {
    Vector col = adjoint(a, g.log, a.basis_vector(c));
    for (std::size_t r = 0; r < a.dim(); ++r) m[r][c] = col[r];
  }
  return m;
}

Matrix exp_nilpotent(const Matrix& m) {
  std::size_t n = m.size();
  Matrix out = identity_matrix(n);
  Matrix term = identity_matrix(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = multiply(term, m);
    Scalar inv(1, static_cast<unsigned long>(k));
    for (auto& row : term)
      for (auto& x : row) x *= inv;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out[r][c] += term[r][c];
  }
  return out;
}

Matrix log_unipotent(const Matrix& u) {
  std::size_t n = u.size();
  Matrix nil = u;
  for (std::size_t i = 0; i < n; ++i) nil[i][i] -= 1;
  Matrix out = zero_matrix(n, n);
  Matrix power = nil;
  for (std::size_t k = 1; k <= n; ++k) {
    Scalar c(k % 2 ? 1 : -1, static_cast<unsigned long>(k));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) out[r][col] += c * power[r][col];
    power = multiply(power, nil);
  }
  return out;
}

Matrix present(const LieAlgebra& a, const Vector& x) {
  if (!a.presentation()) throw CapabilityError("algebra '" + a.name() + "' has no matrix presentation");
  const auto& p = *a.presentation();
  Matrix out = zero_matrix(p.size, p.size);
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (is_zero(x[k])) continue;
    for (std::size_t r = 0; r < p.size; ++r)
      for (std::size_t c = 0; c < p.size; ++c)
        if (!is_zero(p.images[k][r][c])) out[r][c] += x[k] * p.images[k][r][c];
  }
  return out;
}

Vector pull_back(const LieAlgebra& a, const Matrix& m) {
  if (!a.presentation()) throw CapabilityError("algebra '" + a.name() + "' has no matrix presentation");
  const auto& p = *a.presentation();
  std::size_t cells = p.size * p.size;
  Matrix system = zero_matrix(cells, a.dim());
  Vector rhs(cells);
  for (std::size_t r = 0; r < p.size; ++r)
    for (std::size_t c = 0; c < p.size; ++c) {
      for (std::size_t k = 0; k < a.dim(); ++k) system[r * p.size + c][k] = p.images[k][r][c];
      rhs[r * p.size + c] = m[r][c];
    }
  auto x = solve(system, rhs);
  if (!x) throw InconsistencyError("matrix lies outside the presented algebra");
  return *x;
}

Vector model_star(const LieAlgebra& a, const Vector& x, const Vector& y) {
  Matrix prod = multiply(exp_nilpotent(present(a, x)), exp_nilpotent(present(a, y)));
  return pull_back(a, log_unipotent(prod));
}

}  // namespace nilq
