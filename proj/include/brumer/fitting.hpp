#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brumer/lattice.hpp"
#include "brumer/module.hpp"
#include "brumer/wedderburn.hpp"

namespace brumer {

/// The centre of the order Z_p[G] e, e = sum of e(chi) over a Galois-stable set of characters
/// (e = 1 by default).  Central elements are written in class-sum coordinates of Q[G], so every
/// lattice below lives in Q^r, r the number of classes.
class CenterOrder {
 public:
  static std::shared_ptr<const CenterOrder> group_ring(const GroupPtr& g, std::uint64_t p);
  static std::shared_ptr<const CenterOrder> cut(const GroupPtr& g, std::uint64_t p, std::vector<bool> support);
  /// Z_p[G]_- = Z_p[G](1-j)/2: the odd characters.
  static std::shared_ptr<const CenterOrder> minus_part(const CentralInvolution& j, std::uint64_t p);

  const GroupPtr& group() const { return group_; }
  const TablePtr& table() const { return table_; }
  std::uint64_t prime() const { return p_; }
  std::size_t dimension() const { return table_->size(); }
  const std::vector<bool>& support() const { return support_; }
  bool is_full() const;
  /// Every character in the support is linear.
  bool is_commutative() const;
  const QGElement& idempotent() const { return e_; }
  bool idempotent_is_integral() const { return e_integral_; }

  /// zeta(Z_p[G] e).
  const Lattice& center() const { return center_; }
  /// zeta(M) e for a maximal order M containing Z_p[G].
  const Lattice& maximal_center() const { return maximal_; }

  /// Class-sum coordinates of x e; throws if they are not rational.
  RationalVector coordinates(const CenterElement& x) const;
  CenterElement element(const RationalVector& c) const;
  RationalVector multiply(const RationalVector& a, const RationalVector& b) const;
  /// The zeta(Z_p[G] e)-module generated by the given vectors.
  Lattice module_span(const std::vector<RationalVector>& generators) const;
  /// The lattice spanned by all products a_i b_j.
  Lattice product(const Lattice& a, const Lattice& b) const;
  Lattice times(const RationalVector& x, const Lattice& l) const;
  RationalVector project(const RationalVector& full) const;
  std::string description() const;

  CenterOrder(GroupPtr g, std::uint64_t p, std::vector<bool> support);

 private:
  GroupPtr group_;
  TablePtr table_;
  std::uint64_t p_;
  std::vector<bool> support_;
  QGElement e_;
  bool e_integral_ = true;
  Lattice center_, maximal_;
};

using CenterOrderPtr = std::shared_ptr<const CenterOrder>;

enum class FittingKind {
  Zero,        // fewer relations than generators
  Quadratic,   // square presentation: this is Fitt of the module
  LowerBound,  // non-square presentation: a lower bound for Fitt^max
  Relative,    // Fitt(B) Fitt(A)^-1 of a two-term complex
  Cut,         // e Fitt over Z_p[G], as a module over zeta(Z_p[G]) e
  Product
};
std::string to_string(FittingKind k);

/// One representative lattice of a Fitting invariant class, with the reduced norms it was
/// generated from.
struct FittingInvariant {
  CenterOrderPtr order;
  FittingKind kind = FittingKind::Zero;
  std::vector<RationalVector> generators;
  Lattice lattice;

  bool is_zero() const { return lattice.is_zero(); }
  /// Whether the lattice is the Fitting invariant itself rather than a lower bound.
  bool is_exact() const;
  /// lattice + p^k zeta(M) e: depends only on the presentation modulo p^k.
  Lattice at_precision(unsigned k) const;
};

/// Z_p[G]^a -> Z_p[G]^b, v -> v h; the module is the cokernel.  Entries are lifted to [0, p^k).
FittingInvariant fitting_of_presentation(const CenterOrderPtr& order, const ZpGMatrix& h);
/// Fitt(B) Fitt(A)^-1 for quadratic presentations h_a of A and h_b of B.
FittingInvariant fitting_of_two_term_complex(const CenterOrderPtr& order, const ZpGMatrix& h_a, const ZpGMatrix& h_b);
FittingInvariant fitting_product(const FittingInvariant& a, const FittingInvariant& b);
/// e Fitt, e the idempotent of `cut`; the generators are multiplied by e.
FittingInvariant idempotent_cut(const FittingInvariant& f, const CenterOrderPtr& cut);

/// A word in the unit generators of Z_p[G] e and its reduced norm.
struct UnitWitness {
  std::vector<std::string> word;
  RationalVector value;
};

enum class Relation { Holds, Fails, Undecided };
std::string to_string(Relation r);

struct ComparisonResult {
  Relation verdict = Relation::Undecided;
  std::optional<UnitWitness> unit;
  std::string reason;
  std::size_t units_tried = 0;
};

/// Searches u = nr(w), w a word of length <= bound, with the relation holding for u.
/// Fails definitively when the relation already fails after extending scalars to zeta(M).
ComparisonResult nr_contained(const FittingInvariant& a, const FittingInvariant& b, int bound);
ComparisonResult nr_equal(const FittingInvariant& a, const FittingInvariant& b, int bound);
ComparisonResult nr_member(const RationalVector& x, const FittingInvariant& f, int bound);

/// The words searched: group generators, -1, a topological generator of the scalar units and 1 + p g for each generator g.
std::vector<UnitWitness> unit_generators(const CenterOrder& order);

/// Checks an explicit map phi: M -> M' (row i is the image of the i-th generator of M) against
/// presentations h of M and h2 of M', then compares the Fitting invariants.
struct SurjectionCertificate {
  bool well_defined = false;
  bool surjective = false;
  ComparisonResult containment;
};
SurjectionCertificate fitting_surjection_monotone(const CenterOrderPtr& order, const ZpGMatrix& h, const ZpGMatrix& h2,
                                                  const ZpGMatrix& phi, int bound);

enum class DenominatorType { FullCenter, Proper };
std::string to_string(DenominatorType t);
/// The denominator ideal of Z_p[G] is the whole centre exactly when p does not divide |G'|.
DenominatorType denominator_dichotomy(const FiniteGroup& g, std::uint64_t p);

struct DenominatorCertificate {
  RationalVector x;  // class-sum coordinates of a central element of Z_p[G]
  enum class Verdict { FullCenter, Conductor, VerifiedOnSample, NonMember } verdict = Verdict::NonMember;
  std::size_t tested = 0;
  std::optional<QGMatrix> witness;
  std::string reason;
  bool granted() const { return verdict != Verdict::NonMember; }
};
std::string to_string(DenominatorCertificate::Verdict v);

/// Random integral matrices of sizes 1..max chi(1), deterministic in the seed.
std::vector<QGMatrix> denominator_sample(const GroupPtr& g, std::size_t per_size, std::uint64_t seed);
/// Membership of x in the denominator ideal of Z_p[G]: proven by the dichotomy or by x in |G| zeta(M),
/// otherwise tested as p-integrality of x H* on the sample.
DenominatorCertificate certify_denominator(const GroupPtr& g, std::uint64_t p, const RationalVector& x,
                                           const std::vector<QGMatrix>& sample);

struct AnnihilationResult {
  bool passed = false;
  std::string reason;
  std::optional<RationalVector> failing_element;
  std::optional<std::pair<std::size_t, std::vector<Integer>>> image;
};
/// x f kills M for every basis vector f of the Fitting lattice.
AnnihilationResult annihilation_check(const DenominatorCertificate& x, const FittingInvariant& f, const GModule& m);

QGElement center_to_group_ring(const CenterOrder& order, const RationalVector& c);

Json lattice_to_json(const Lattice& l);
Json fitting_to_json(const FittingInvariant& f, const ZpGMatrix* presentation, unsigned precision);
Json comparison_to_json(const ComparisonResult& c);

}  // namespace brumer
