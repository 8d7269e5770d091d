#pragma once

#include <memory>
#include <string>
#include <vector>

#include "brumer/characters.hpp"
#include "brumer/group_ring.hpp"

namespace brumer {

/// An element of the centre of K[G], held as its image in prod_chi K (one component per
/// irreducible character, in table order).
class CenterElement {
 public:
  CenterElement() = default;
  CenterElement(TablePtr table, std::vector<Cyclotomic> components);

  static CenterElement one(const TablePtr& t);
  static CenterElement zero(const TablePtr& t);
  /// From coordinates on the class sums K_C = sum_{g in C} g.
  static CenterElement from_class_sums(const TablePtr& t, const std::vector<Cyclotomic>& coords);
  /// From a central group ring element; throws if x is not central.
  static CenterElement from_group_ring(const TablePtr& t, const QGElement& x);

  const TablePtr& table() const { return table_; }
  const std::vector<Cyclotomic>& components() const { return comp_; }
  const Cyclotomic& operator[](std::size_t chi) const { return comp_[chi]; }

  std::vector<Cyclotomic> class_sum_coordinates() const;
  QGElement to_group_ring() const;

  CenterElement operator+(const CenterElement& o) const;
  CenterElement operator-(const CenterElement& o) const;
  CenterElement operator*(const CenterElement& o) const;
  CenterElement scaled(const Cyclotomic& c) const;
  bool operator==(const CenterElement& o) const { return table_ == o.table_ && comp_ == o.comp_; }
  bool operator!=(const CenterElement& o) const { return !(*this == o); }
  bool is_zero() const;
  /// No component vanishes.
  bool is_regular() const;
  CenterElement inverse() const;
  /// Componentwise: the components at the given characters kept, the rest set to zero.
  CenterElement cut(const std::vector<bool>& keep) const;
  std::string to_string() const;

 private:
  TablePtr table_;
  std::vector<Cyclotomic> comp_;
};

/// Explicit irreducible representations over Q(zeta_e), one per irreducible character,
/// realised on minimal left ideals K[G] e(chi) e_lambda.
class Wedderburn {
 public:
  static std::shared_ptr<const Wedderburn> of(const GroupPtr& g);

  const GroupPtr& group() const { return group_; }
  const TablePtr& table() const { return table_; }
  const CycMatrix& rho(std::size_t chi, std::size_t g) const { return rho_[chi][g]; }
  /// rho_chi(x) = sum_g x_g rho_chi(g).
  CycMatrix image(std::size_t chi, const QGElement& x) const;
  /// The element x of K[G] with rho_chi(x) = blocks[chi] for every chi.
  QGElement preimage(const std::vector<CycMatrix>& blocks) const;

  Wedderburn(GroupPtr g, TablePtr t, std::vector<std::vector<CycMatrix>> rho);

 private:
  GroupPtr group_;
  TablePtr table_;
  std::vector<std::vector<CycMatrix>> rho_;  // [chi][element]
};

/// rho_chi applied entrywise: the (b chi(1)) x (b chi(1)) matrix of H on the chi-component.
CycMatrix block_matrix(const Wedderburn& w, std::size_t chi, const QGMatrix& h);

/// nr(H): det of the block matrix at every character.
CenterElement reduced_norm(const QGMatrix& h);
/// nr of the canonical integer lift of a Z/p^k matrix.
CenterElement reduced_norm(const ZpGMatrix& h);
inline CenterElement reduced_norm(const QGElement& x) { return reduced_norm(QGMatrix::single(x)); }

/// H* with H* H = H H* = nr(H) 1, computed as the classical adjugate on every block.
QGMatrix generalized_adjoint(const QGMatrix& h);

}  // namespace brumer
