#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brumer/numeric.hpp"

namespace brumer {

using RationalVector = std::vector<Rational>;

/// Canonical representative of x modulo p^v Z_(p): zero, or a/p^m with 0 <= a/p^m < p^v.
Rational residue_modulo_power(const Rational& x, std::uint64_t p, int v);

/// A finitely generated Z_(p)-submodule of Q^n, kept in Hermite normal form: rows in echelon
/// form, each pivot an exact power of p, entries above a pivot reduced modulo that pivot.
/// Two lattices are equal exactly when their bases are.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::uint64_t p, std::size_t dimension) : p_(p), dim_(dimension) {}

  static Lattice span(std::uint64_t p, std::size_t dimension, std::vector<RationalVector> generators);
  /// Z_(p)^n.
  static Lattice standard(std::uint64_t p, std::size_t dimension);

  std::uint64_t prime() const { return p_; }
  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<RationalVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// v_p of the pivot of each basis row.
  std::vector<int> pivot_valuations() const;

  bool contains(const RationalVector& v) const;
  bool contains(const Lattice& o) const;
  bool operator==(const Lattice& o) const { return p_ == o.p_ && dim_ == o.dim_ && basis_ == o.basis_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

  Lattice operator+(const Lattice& o) const;
  Lattice scaled(const Rational& c) const;
  Lattice intersect(const Lattice& o) const;

  std::string to_string() const;

 private:
  void echelonize(std::vector<RationalVector> rows);
  void check_compatible(const Lattice& o) const;
  std::uint64_t p_ = 0;
  std::size_t dim_ = 0;
  std::vector<RationalVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace brumer
