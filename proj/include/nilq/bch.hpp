#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilq/lie_algebra.hpp"

namespace nilq {

inline constexpr int kMaxBchDegree = 6;

/// One term c·[...[[w1,w2],w3],...,wn] of the BCH series; `word` is over {'x','y'}.
struct BchTerm {
  Scalar coefficient;
  std::string word;
};

/// log(exp x · exp y) through a degree bound, as left-normed bracket words.
/// Words of length >= 2 are normalised to start with "xy".
struct BchTable {
  int max_degree = 0;
  std::vector<BchTerm> terms;
};

/// Memoised table; throws CapabilityError outside 1..kMaxBchDegree.
const BchTable& bch_table(int max_degree);

/// Evaluates a table on x, y in the given algebra, for any coefficient ring R.
template <class R>
std::vector<R> evaluate_bch(const LieAlgebra& a, const BchTable& table, const std::vector<R>& x,
                            const std::vector<R>& y) {
  std::vector<R> out(a.dim());
  std::map<std::string, std::vector<R>> prefix;
  prefix["x"] = x;
  prefix["y"] = y;
  // Left-normed brackets share prefixes; cache them, filling gaps left by zero coefficients.
  auto value = [&](const std::string& word) -> const std::vector<R>& {
    std::size_t known = word.size();
    while (!prefix.count(word.substr(0, known))) --known;
    for (; known < word.size(); ++known) {
      const std::vector<R>& left = prefix.at(word.substr(0, known));
      prefix.emplace(word.substr(0, known + 1), a.bracket(left, word[known] == 'x' ? x : y));
    }
    return prefix.at(word);
  };
  for (const auto& t : table.terms) {
    const std::vector<R>& v = value(t.word);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!is_zero(v[k])) out[k] += R(v[k] * t.coefficient);
  }
  return out;
}

/// Product in logarithmic coordinates: exp(star(x,y)) = exp(x) exp(y).
/// Uses the table at the algebra's nilpotency step, which is exact.
template <class R>
std::vector<R> star(const LieAlgebra& a, const std::vector<R>& x, const std::vector<R>& y) {
  int l = static_cast<int>(a.nilpotency_step());
  if (l > kMaxBchDegree)
    throw CapabilityError("nilpotency step " + std::to_string(l) + " exceeds the BCH degree ceiling");
  return evaluate_bch(a, bch_table(std::max(l, 1)), x, y);
}

Vector star(const LieAlgebra& a, const Vector& x, const Vector& y);

/// Product of several elements, left to right.
template <class R>
std::vector<R> star_all(const LieAlgebra& a, const std::vector<std::vector<R>>& xs) {
  std::vector<R> out(a.dim());
  for (const auto& x : xs) out = star(a, out, x);
  return out;
}

/// Ad(exp x)(y) = sum_k ad(x)^k y / k!, finite because ad(x) is nilpotent.
template <class R>
std::vector<R> adjoint(const LieAlgebra& a, const std::vector<R>& x, const std::vector<R>& y) {
  std::vector<R> out = y;
  std::vector<R> term = y;
  Scalar factorial = 1;
  for (std::size_t k = 1; k <= a.nilpotency_step(); ++k) {
    term = a.bracket(x, term);
    factorial *= static_cast<unsigned long>(k);
    bool zero = true;
    for (std::size_t i = 0; i < term.size(); ++i)
      if (!is_zero(term[i])) {
        zero = false;
        out[i] += R(term[i] * Scalar(1 / factorial));
      }
    if (zero) break;
  }
  return out;
}

/// Group element of G = exp(g) stored by its logarithm.
struct GroupElement {
  Vector log;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity(const LieAlgebra& a);
GroupElement multiply(const LieAlgebra& a, const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

/// Matrix of Ad(g) on coordinate columns.
Matrix Ad(const LieAlgebra& a, const GroupElement& g);

/// Exponential and logarithm of nilpotent matrices by finite series.
Matrix exp_nilpotent(const Matrix& m);
Matrix log_unipotent(const Matrix& u);

/// Image of x under the algebra's matrix presentation.
Matrix present(const LieAlgebra& a, const Vector& x);

/// log(exp M(x) · exp M(y)) pulled back to coordinates; requires a presentation.
Vector model_star(const LieAlgebra& a, const Vector& x, const Vector& y);

/// Coordinates of a matrix in the span of the presentation; throws if outside.
Vector pull_back(const LieAlgebra& a, const Matrix& m);

}  // namespace nilq
