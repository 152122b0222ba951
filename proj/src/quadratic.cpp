#include "nilq/quadratic.hpp"

namespace nilq {
namespace {

std::optional<Scalar> rational_sqrt(const Scalar& x) {
  if (sgn(x) < 0) return std::nullopt;
  mpz_class n = x.get_num(), d = x.get_den();
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Scalar(rn) / Scalar(rd);
}

}  // namespace

QuadraticNumber::QuadraticNumber(Scalar a, Scalar b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  normalize();
}

void QuadraticNumber::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (d_ == 0 || sgn(b_) == 0) {
    if (d_ == 0 && sgn(b_) != 0) throw InconsistencyError("quadratic number with a radical part but no field");
    b_ = 0;
  }
}

long QuadraticNumber::join(const QuadraticNumber& o) const {
  if (is_rational()) return o.is_rational() ? 0 : o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw CapabilityError("arithmetic across two different quadratic fields");
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = join(o);
  a_ += o.a_;
  b_ += o.b_;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  d_ = join(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (sgn(b_) == 0) d_ = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  long d = join(o);
  Scalar a = a_ * o.a_ + b_ * o.b_ * d;
  Scalar b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = sgn(b_) == 0 ? 0 : d;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  if (nilq::is_zero(o)) throw InconsistencyError("division by zero in a quadratic field");
  long d = join(o);
  Scalar norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
  QuadraticNumber conj(o.a_ / norm, -o.b_ / norm, d == 0 ? 0 : d);
  if (conj.is_rational()) conj.d_ = 0;
  return *this *= conj;
}

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return nilq::to_string(a_);
  std::string root = "sqrt(" + std::to_string(d_) + ")";
  std::string rad = b_ == 1 ? root : b_ == -1 ? "-" + root : nilq::to_string(b_) + "*" + root;
  if (sgn(a_) == 0) return rad;
  std::string out = nilq::to_string(a_);
  if (rad[0] == '-')
    out += " - " + rad.substr(1);
  else
    out += " + " + rad;
  return "(" + out + ")";
}

std::optional<std::pair<long, Scalar>> squarefree_decomposition(const Scalar& x) {
  if (sgn(x) == 0) return std::make_pair(0L, Scalar(0));
  mpz_class m = x.get_num() * x.get_den();
  if (abs(m) > mpz_class(1000000000000L)) return std::nullopt;
  long v = m.get_si();
  long s = v < 0 ? -1 : 1;
  unsigned long rest = static_cast<unsigned long>(v < 0 ? -v : v);
  Scalar r = 1;
  for (unsigned long p = 2; p * p <= rest; ++p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) r *= static_cast<unsigned long>(p);
    if (e % 2) s *= static_cast<long>(p);
  }
  s *= static_cast<long>(rest);
  return std::make_pair(s, r / Scalar(x.get_den()));
}

std::optional<QuadraticNumber> quadratic_sqrt(const QuadraticNumber& x, long field) {
  if (is_zero(x)) return QuadraticNumber(0);
  if (x.is_rational()) {
    auto dec = squarefree_decomposition(x.rational());
    if (!dec) return std::nullopt;
    auto [s, r] = *dec;
    if (s == 1) return QuadraticNumber(r);
    if (field != 0 && field != s) return std::nullopt;
    return QuadraticNumber(0, r, s);
  }
  // (p + q sqrt(d))^2 = a + b sqrt(d): p^2 is a root of P^2 - aP + b^2 d / 4
  const Scalar& a = x.rational();
  const Scalar& b = x.radical();
  long d = x.field();
  auto disc = rational_sqrt(a * a - b * b * d);
  if (!disc) return std::nullopt;
  for (int sign : {1, -1}) {
    Scalar p2 = (a + sign * *disc) / 2;
    if (sgn(p2) == 0) continue;
    if (auto p = rational_sqrt(p2)) return QuadraticNumber(*p, b / (2 * *p), d);
  }
  return std::nullopt;
}

}  // namespace nilq
