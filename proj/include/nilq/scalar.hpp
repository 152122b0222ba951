#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilq {

/// Exact rational scalar. gmp keeps it canonical (reduced, positive denominator).
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Raised for malformed caller input (dimension mismatch, bad subspace, parse errors).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation exceeds a configured ceiling (BCH degree, missing presentation).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Scalar& x) { return sgn(x) == 0; }

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& x);

inline Vector zero_vector(std::size_t n) { return Vector(n); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

template <class R>
std::vector<R> add(const std::vector<R>& a, const std::vector<R>& b) {
  if (a.size() != b.size()) throw InputError("vector dimension mismatch");
  std::vector<R> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class R>
std::vector<R> sub(const std::vector<R>& a, const std::vector<R>& b) {
  if (a.size() != b.size()) throw InputError("vector dimension mismatch");
  std::vector<R> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class R>
std::vector<R> scale(const Scalar& c, const std::vector<R>& a) {
  std::vector<R> out(a);
  for (auto& x : out) x *= c;
  return out;
}

template <class R>
std::vector<R> negate(const std::vector<R>& a) {
  std::vector<R> out(a);
  for (auto& x : out) x = -x;
  return out;
}

/// Lifts a rational vector into another coefficient ring.
template <class R>
std::vector<R> lift(const Vector& v) {
  std::vector<R> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::string to_string(const Vector& v);

}  // namespace nilq
