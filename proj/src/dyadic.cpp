#include "wlvc/dyadic.hpp"

#include <cmath>
#include <cstdlib>

#include "wlvc/errors.hpp"

namespace wlvc {

namespace mp = boost::multiprecision;

void Dyadic::normalize() {
  if (m_.is_zero()) {
    e_ = 0;
    return;
  }
  const unsigned shift = mp::lsb(abs(m_));
  if (shift > 0) {
    m_ >>= shift;
    e_ += static_cast<long long>(shift);
  }
}

std::size_t Dyadic::mantissa_bits() const {
  if (m_.is_zero()) return 0;
  return static_cast<std::size_t>(mp::msb(abs(m_))) + 1;
}

bigint Dyadic::to_integer() const {
  if (is_zero()) return bigint(0);
  if (e_ < 0) throw precondition_error("Dyadic::to_integer: value is not an integer: " + str());
  return m_ << static_cast<unsigned long long>(e_);
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  // Keep the significand in double range, push the rest into the exponent.
  const long long bits = static_cast<long long>(mantissa_bits());
  long long drop = bits > 512 ? bits - 512 : 0;
  const bigint m = m_ >> static_cast<unsigned long long>(drop);
  return std::ldexp(m.convert_to<double>(), static_cast<int>(e_ + drop));
}

std::string Dyadic::str() const {
  std::string s = m_.str();
  if (e_ != 0 && !m_.is_zero()) s += "*2^" + std::to_string(e_);
  return s;
}

Dyadic Dyadic::scale_pow2(long long k) const {
  if (is_zero()) return Dyadic();
  return Dyadic(m_, e_ + k);
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  const long long e = e_ < o.e_ ? e_ : o.e_;
  bigint a = m_ << static_cast<unsigned long long>(e_ - e);
  a += o.m_ << static_cast<unsigned long long>(o.e_ - e);
  m_ = std::move(a);
  e_ = e;
  normalize();
  return *this;
}

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  if (is_zero() || o.is_zero()) {
    m_ = 0;
    e_ = 0;
    return *this;
  }
  m_ *= o.m_;
  e_ += o.e_;  // product of odd mantissas stays odd
  return *this;
}

int Dyadic::cmp(const Dyadic& o) const {
  const int sa = sign(), sb = o.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  // Same nonzero sign: compare magnitudes via floor(log2) first, exactly on a tie.
  const long long la = static_cast<long long>(mantissa_bits()) + e_;
  const long long lb = static_cast<long long>(o.mantissa_bits()) + o.e_;
  if (la != lb) return (la < lb) == (sa > 0) ? -1 : 1;
  const long long e = e_ < o.e_ ? e_ : o.e_;
  const bigint a = m_ << static_cast<unsigned long long>(e_ - e);
  const bigint b = o.m_ << static_cast<unsigned long long>(o.e_ - e);
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

std::size_t encoded_bits(const Dyadic& d) {
  std::size_t eb = 0;
  unsigned long long e = d.exponent() < 0 ? static_cast<unsigned long long>(-(d.exponent() + 1)) + 1
                                          : static_cast<unsigned long long>(d.exponent());
  while (e > 0) {
    ++eb;
    e >>= 1;
  }
  return (d.is_zero() ? 1 : d.mantissa_bits()) + eb + 2;
}

}  // namespace wlvc
