#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nilq/scalar.hpp"

namespace nilq {

/// Exponent vector with trailing zeros trimmed, so monomials are independent
/// of how many variables the surrounding ring declares.
using Monomial = std::vector<unsigned>;

inline unsigned exponent(const Monomial& m, std::size_t var) { return var < m.size() ? m[var] : 0; }

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

inline void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

inline Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

/// Graded lexicographic order; earlier variables dominate within a degree.
struct GrLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      unsigned ea = exponent(a, i), eb = exponent(b, i);
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

/// All monomials of total degree <= degree in the given variables, in GrLex order.
inline std::vector<Monomial> monomials_up_to(const std::vector<std::size_t>& vars, unsigned degree) {
  std::vector<Monomial> out{Monomial{}};
  std::size_t width = 0;
  for (auto v : vars) width = std::max(width, v + 1);
  for (auto var : vars) {
    std::vector<Monomial> next;
    for (const auto& m : out)
      for (unsigned e = 0; total_degree(m) + e <= degree; ++e) {
        Monomial x = m;
        x.resize(width, 0);
        x[var] = e;
        trim(x);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), GrLex{});
  return out;
}

namespace detail {
template <class K>
bool coeff_zero(const K& c) {
  return is_zero(c);
}
}  // namespace detail

/// Sparse multivariate polynomial over a field K. No zero coefficients are stored.
template <class K>
class BasicPolynomial {
 public:
  using Terms = std::map<Monomial, K, GrLex>;

  BasicPolynomial() = default;
  BasicPolynomial(const K& c) {  // NOLINT(google-explicit-constructor)
    if (!detail::coeff_zero(c)) terms_.emplace(Monomial{}, c);
  }
  BasicPolynomial(int c) : BasicPolynomial(K(c)) {}  // NOLINT(google-explicit-constructor)

  static BasicPolynomial variable(std::size_t i) {
    Monomial m(i + 1, 0);
    m[i] = 1;
    BasicPolynomial p;
    p.terms_.emplace(std::move(m), K(1));
    return p;
  }

  static BasicPolynomial monomial(Monomial m, const K& c) {
    trim(m);
    BasicPolynomial p;
    if (!detail::coeff_zero(c)) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  K constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? K(0) : it->second;
  }

  K coefficient(const Monomial& m) const {
    Monomial key = m;
    trim(key);
    auto it = terms_.find(key);
    return it == terms_.end() ? K(0) : it->second;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first)); }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(exponent(m, var)));
    return d;
  }

  /// Number of variable slots touched by any monomial.
  std::size_t span() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
  }

  bool uses(std::size_t var) const {
    for (const auto& [m, c] : terms_)
      if (exponent(m, var) > 0) return true;
    return false;
  }

  void add_term(const Monomial& m, const K& c) {
    if (detail::coeff_zero(c)) return;
    Monomial key = m;
    trim(key);
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BasicPolynomial& operator*=(const K& c) {
    if (detail::coeff_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator-(BasicPolynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicPolynomial operator*(BasicPolynomial a, const K& c) { return a *= c; }
  friend BasicPolynomial operator*(const K& c, BasicPolynomial a) { return a *= c; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    BasicPolynomial out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), K(ca * cb));
    return out;
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const BasicPolynomial& a, const BasicPolynomial& b) { return !(a == b); }

  BasicPolynomial pow(unsigned e) const {
    BasicPolynomial out(K(1));
    BasicPolynomial base = *this;
    while (e) {
      if (e & 1u) out = out * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return out;
  }

  BasicPolynomial derivative(std::size_t var) const {
    BasicPolynomial out;
    for (const auto& [m, c] : terms_) {
      unsigned e = exponent(m, var);
      if (e == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      out.add_term(d, K(c * K(static_cast<int>(e))));
    }
    return out;
  }

  /// Substitutes a polynomial for every variable slot; missing slots map to themselves.
  BasicPolynomial substitute(const std::vector<BasicPolynomial>& images) const {
    BasicPolynomial out;
    for (const auto& [m, c] : terms_) {
      BasicPolynomial term(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        const BasicPolynomial base = i < images.size() ? images[i] : variable(i);
        term = term * base.pow(m[i]);
      }
      out += term;
    }
    return out;
  }

  /// Substitutes for a single variable.
  BasicPolynomial substitute(std::size_t var, const BasicPolynomial& image) const {
    std::vector<BasicPolynomial> images;
    std::size_t n = std::max(span(), var + 1);
    for (std::size_t i = 0; i < n; ++i) images.push_back(i == var ? image : variable(i));
    return substitute(images);
  }

  template <class Point>
  K evaluate(const Point& point) const {
    K out(0);
    for (const auto& [m, c] : terms_) {
      K term = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned e = 0; e < m[i]; ++e) term *= K(point.at(i));
      out += term;
    }
    return out;
  }

  /// Groups terms by the power of one variable: result[k] is the coefficient of var^k.
  std::vector<BasicPolynomial> coefficients_in(std::size_t var) const {
    std::vector<BasicPolynomial> out;
    for (const auto& [m, c] : terms_) {
      unsigned e = exponent(m, var);
      if (out.size() <= e) out.resize(e + 1);
      Monomial rest = m;
      if (var < rest.size()) rest[var] = 0;
      out[e].add_term(rest, c);
    }
    return out;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Terms terms_;
};

template <class K>
inline bool is_zero(const BasicPolynomial<K>& p) {
  return p.is_zero();
}

using Polynomial = BasicPolynomial<Scalar>;

std::string coefficient_string(const Scalar& c);

template <class K>
std::string BasicPolynomial<K>::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string coeff = coefficient_string(c);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (mono.empty())
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace nilq
