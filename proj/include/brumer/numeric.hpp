#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace brumer {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed input data (bad cycle strings, schema errors, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation is asked for something outside its contract.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t euler_phi(std::uint64_t n);
/// Least positive primitive root modulo an odd prime or 2.
std::uint64_t primitive_root(std::uint64_t p);

/// p-adic valuation; kInfiniteValuation for zero.
int valuation(const Integer& x, std::uint64_t p);
int valuation(const Rational& x, std::uint64_t p);
int valuation_u64(std::uint64_t x, std::uint64_t p);

Integer power(const Integer& base, unsigned long exponent);
Rational power(const Rational& base, long exponent);

/// Inverse of a modulo m; throws DomainError when not invertible.
Integer mod_inverse(const Integer& a, const Integer& m);

/// Image of a p-local rational (denominator prime to p) in Z/m, m a power of p.
Integer reduce_mod(const Rational& x, const Integer& m);

/// Whether the denominator of x is prime to p.
bool is_p_integral(const Rational& x, std::uint64_t p);

/// num/den in lowest terms (mpq_class's two-argument constructor does not canonicalize).
Rational fraction(long num, long den);
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// The residue ring Z/p^k.  Instances are interned, so pointer equality is ring equality.
class ZModRing {
 public:
  static const ZModRing* get(std::uint64_t p, unsigned k);

  std::uint64_t prime() const { return p_; }
  unsigned exponent() const { return k_; }
  const Integer& modulus() const { return modulus_; }

 private:
  ZModRing(std::uint64_t p, unsigned k);
  std::uint64_t p_;
  unsigned k_;
  Integer modulus_;
};

/// An element of Z/p^k, stored as its canonical representative in [0, p^k).
class ZMod {
 public:
  ZMod() = default;
  ZMod(const ZModRing* ring, const Integer& value);
  ZMod(const ZModRing* ring, long value) : ZMod(ring, Integer(value)) {}

  const ZModRing* ring() const { return ring_; }
  const Integer& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  /// p-adic valuation of the representative, capped at k.
  int valuation() const;

  ZMod operator+(const ZMod& o) const;
  ZMod operator-(const ZMod& o) const;
  ZMod operator*(const ZMod& o) const;
  ZMod operator-() const;
  ZMod& operator+=(const ZMod& o) { return *this = *this + o; }
  ZMod& operator-=(const ZMod& o) { return *this = *this - o; }
  ZMod& operator*=(const ZMod& o) { return *this = *this * o; }
  ZMod inverse() const;
  bool operator==(const ZMod& o) const { return ring_ == o.ring_ && value_ == o.value_; }
  bool operator!=(const ZMod& o) const { return !(*this == o); }

  /// Reduction to a coarser precision p^j, j <= k.
  ZMod reduce(unsigned j) const;

 private:
  void check_same_ring(const ZMod& o) const;
  const ZModRing* ring_ = nullptr;
  Integer value_ = 0;
};

}  // namespace brumer
