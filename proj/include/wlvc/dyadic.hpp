#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wlvc {

using bigint = boost::multiprecision::cpp_int;

// Exact dyadic rational mantissa * 2^exponent, normalized so the mantissa is
// odd (zero is stored as 0 * 2^0). Closed under +, -, * and power-of-two
// scaling; general division is deliberately not provided.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long v) : m_(v) { normalize(); }  // NOLINT: implicit by design
  Dyadic(bigint mantissa, long long exponent) : m_(std::move(mantissa)), e_(exponent) { normalize(); }

  static Dyadic pow2(long long e) { return Dyadic(bigint(1), e); }

  const bigint& mantissa() const { return m_; }
  long long exponent() const { return e_; }

  bool is_zero() const { return m_.is_zero(); }
  int sign() const { return m_.sign(); }
  bool is_integer() const { return e_ >= 0; }
  // Bit length of |mantissa|; 0 for zero.
  std::size_t mantissa_bits() const;

  bigint to_integer() const;  // requires is_integer()
  double to_double() const;   // lossy, for display only
  std::string str() const;    // exact, "m" or "m*2^e"

  Dyadic scale_pow2(long long k) const;

  Dyadic operator-() const { return Dyadic(-m_, e_); }
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o) { return *this += -o; }
  Dyadic& operator*=(const Dyadic& o);

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  // Three-way comparison: -1, 0, +1.
  int cmp(const Dyadic& o) const;
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return a.cmp(b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return a.cmp(b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return a.cmp(b) >= 0; }

 private:
  void normalize();

  bigint m_ = 0;
  long long e_ = 0;
};

using DyVec = std::vector<Dyadic>;
using DyMat = std::vector<DyVec>;  // row-major; mat[r][c]

// Encoded size of a weight: mantissa bits + exponent magnitude bits + two sign bits.
std::size_t encoded_bits(const Dyadic& d);

}  // namespace wlvc
