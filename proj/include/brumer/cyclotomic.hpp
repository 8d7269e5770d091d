#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brumer/numeric.hpp"

namespace brumer {

/// Q(zeta_n) with the power basis 1, z, ..., z^(phi(n)-1) modulo the n-th cyclotomic polynomial.
/// Instances are interned by conductor.
class CyclotomicField {
 public:
  static const CyclotomicField* get(std::uint64_t conductor);

  std::uint64_t conductor() const { return n_; }
  std::size_t degree() const { return phi_; }
  /// z^e written in the power basis (integer coefficients).
  const std::vector<long>& power_of_zeta(std::uint64_t e) const { return powers_[e % n_]; }
  /// Coefficients of Phi_n, lowest degree first.
  const std::vector<long>& minimal_polynomial() const { return phi_poly_; }

 private:
  explicit CyclotomicField(std::uint64_t n);
  std::uint64_t n_;
  std::size_t phi_;
  std::vector<long> phi_poly_;
  std::vector<std::vector<long>> powers_;
};

/// Cyclotomic polynomial Phi_n with integer coefficients, lowest degree first.
std::vector<long> cyclotomic_polynomial(std::uint64_t n);

/// An exact element of a cyclotomic field.  Elements of different conductors are
/// combined in the field of the least common multiple of their conductors.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const CyclotomicField* field, std::vector<Rational> coefficients);

  /// zeta_n^e.
  static Cyclotomic zeta(std::uint64_t n, std::int64_t e = 1);
  static Cyclotomic zero_in(std::uint64_t n);

  const CyclotomicField* field() const { return field_; }
  std::uint64_t conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  bool is_one() const;
  Rational to_rational() const;
  /// Algebraic integrality: all power-basis coefficients are integers.
  bool is_integral() const;
  /// p-integrality of every power-basis coefficient.
  bool is_p_integral(std::uint64_t p) const;

  /// Same number written over Q(zeta_m); requires conductor() | m.
  Cyclotomic embed(std::uint64_t m) const;
  /// Smallest conductor m | conductor() such that the element lies in Q(zeta_m).
  std::uint64_t minimal_conductor() const;
  Cyclotomic reduce_conductor() const { return restrict_to(minimal_conductor()); }

  Cyclotomic conj() const { return galois(-1); }
  /// The automorphism zeta -> zeta^a, gcd(a, n) = 1.
  Cyclotomic galois(std::int64_t a) const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator/(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }
  Cyclotomic inverse() const;
  Cyclotomic pow(long e) const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  /// Human readable form in z = zeta_n, e.g. "1/2 - z^2".
  std::string to_string() const;

 private:
  Cyclotomic restrict_to(std::uint64_t m) const;
  const CyclotomicField* field_;
  std::vector<Rational> c_;
};

/// Lift a residue-ring integer to Q(zeta_n)'s prime field.
inline Cyclotomic to_cyclotomic(const ZMod& x) { return Cyclotomic(Rational(x.value())); }
inline Cyclotomic to_cyclotomic(const Cyclotomic& x) { return x; }

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

/// Determinant by Gaussian elimination over the field (square row-major input).
Cyclotomic determinant(CycMatrix m);
/// Classical adjugate, adj(A) A = A adj(A) = det(A) I, valid for singular A.
CycMatrix adjugate(const CycMatrix& m);
CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b);
CycMatrix mat_identity(std::size_t n);
/// Inverse by Gauss-Jordan; std::nullopt when singular.
std::optional<CycMatrix> mat_inverse(CycMatrix a);
/// Indices of a maximal linearly independent subset of the rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const CycMatrix& rows);

}  // namespace brumer
