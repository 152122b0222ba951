#pragma once

#include <optional>
#include <string>

#include "nilq/scalar.hpp"

namespace nilq {

/// a + b·sqrt(d) with d a squarefree integer; d = 0 marks a plain rational.
/// Mixing two different radicals throws CapabilityError.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Scalar& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(int a) : a_(a) {}            // NOLINT(google-explicit-constructor)
  QuadraticNumber(Scalar a, Scalar b, long d);

  static QuadraticNumber sqrt_of(long d) { return QuadraticNumber(0, 1, d); }

  const Scalar& rational() const { return a_; }
  const Scalar& radical() const { return b_; }
  long field() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend QuadraticNumber operator-(QuadraticNumber x) {
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.is_rational() || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x == y); }

  std::string to_string() const;

 private:
  long join(const QuadraticNumber& o) const;
  void normalize();

  Scalar a_, b_;
  long d_ = 0;
};

inline bool is_zero(const QuadraticNumber& x) { return is_zero(x.rational()) && is_zero(x.radical()); }

inline std::string coefficient_string(const QuadraticNumber& x) { return x.to_string(); }

/// A square root of x inside Q(sqrt(field)) or, for rational x with field 0, in a new
/// quadratic field; nullopt when neither exists (or the radicand is too large to factor).
std::optional<QuadraticNumber> quadratic_sqrt(const QuadraticNumber& x, long field);

/// Squarefree s with x = r^2 s for rational r; nullopt when |numerator·denominator| is too large.
std::optional<std::pair<long, Scalar>> squarefree_decomposition(const Scalar& x);

}  // namespace nilq
