#include "nilq/linalg.hpp"

#include <cctype>

namespace nilq {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw InputError("malformed rational literal '" + std::string(text) + "'");
  Scalar x;
  if (x.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + std::string(text) + "'");
  if (sgn(x.get_den()) == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  x.canonicalize();
  return x;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, Vector(cols)); }

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t = zero_matrix(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size();
  if (a[0].size() != inner) throw InputError("matrix shape mismatch");
  std::size_t cols = inner ? b[0].size() : 0;
  Matrix out = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!is_zero(b[k][j])) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Vector mat_vec(const Matrix& m, const Vector& x) {
  Vector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != x.size()) throw InputError("matrix/vector shape mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!is_zero(m[i][j]) && !is_zero(x[j])) out[i] += m[i][j] * x[j];
  }
  return out;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Scalar inv = 1 / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || is_zero(m[r][col])) continue;
      Scalar f = m[r][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!is_zero(m[row][j])) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Vector> nullspace(const Matrix& m, std::size_t cols) {
  Matrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (m.size() != b.size()) throw InputError("solve: shape mismatch");
  std::size_t cols = m.empty() ? 0 : m[0].size();
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  if (aug.empty()) return Vector(cols);
  auto pivots = rref(aug);
  Vector x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;
    x[pivots[i]] = aug[i][cols];
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  std::size_t n = m.size();
  Matrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) throw InputError("inverse: matrix not square");
    aug[i].resize(2 * n);
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || (n && pivots.back() != n - 1)) throw InputError("inverse: matrix is singular");
  Matrix out = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

bool SparseSystem::add(Row row, Scalar rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (is_zero(it->second))
      it = row.erase(it);
    else
      ++it;
  }
  // Pivot rows have their pivot as lowest column, so an ascending sweep terminates.
  auto it = row.begin();
  while (it != row.end()) {
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    Scalar f = it->second;
    std::size_t col = it->first;
    for (const auto& [c, v] : piv->second.row) {
      auto [slot, inserted] = row.try_emplace(c, 0);
      slot->second -= f * v;
      if (is_zero(slot->second)) row.erase(slot);
    }
    rhs -= f * piv->second.rhs;
    it = row.upper_bound(col);
  }
  if (row.empty()) {
    if (!is_zero(rhs)) consistent_ = false;
    return consistent_;
  }
  std::size_t col = row.begin()->first;
  Scalar inv = 1 / row.begin()->second;
  for (auto& [c, v] : row) v *= inv;
  rhs *= inv;
  pivots_.emplace(col, PivotRow{std::move(row), std::move(rhs)});
  return consistent_;
}

std::optional<std::vector<Scalar>> SparseSystem::solution() const {
  if (!consistent_) return std::nullopt;
  std::vector<Scalar> x(unknowns_);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Scalar v = it->second.rhs;
    for (const auto& [c, coeff] : it->second.row)
      if (c != it->first && !is_zero(x[c])) v -= coeff * x[c];
    x[it->first] = v;
  }
  return x;
}

}  // namespace nilq
