#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brumer/cyclotomic.hpp"
#include "brumer/group.hpp"
#include "brumer/json_io.hpp"

namespace brumer {

/// A class function with values in Q(zeta_e), e the exponent of the group.
class Character {
 public:
  Character() = default;
  Character(GroupPtr group, std::vector<Cyclotomic> values);

  const GroupPtr& group() const { return group_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t cls) const { return values_[cls]; }
  const Cyclotomic& at_element(std::size_t g) const { return values_[group_->class_of(g)]; }
  /// chi(1) as an integer; throws when it is not a non-negative integer.
  long degree() const;
  bool is_linear() const { return degree() == 1; }

  Character operator+(const Character& o) const;
  Character operator-(const Character& o) const;
  Character operator*(const Character& o) const;
  Character scaled(const Cyclotomic& c) const;
  bool operator==(const Character& o) const { return group_ == o.group_ && values_ == o.values_; }

  /// {g : chi(g) = chi(1)}.
  Subgroup kernel() const;
  std::string to_string() const;

 private:
  GroupPtr group_;
  std::vector<Cyclotomic> values_;
};

/// <a, b> = |G|^-1 sum_g a(g) conj(b(g)).
Cyclotomic inner_product(const Character& a, const Character& b);

class CharacterTable {
 public:
  CharacterTable(GroupPtr group, std::vector<Character> irreducibles, std::uint64_t modular_prime = 0);

  const GroupPtr& group() const { return group_; }
  std::uint64_t conductor() const { return group_->exponent(); }
  std::size_t size() const { return irr_.size(); }
  const Character& operator[](std::size_t i) const { return irr_[i]; }
  const std::vector<Character>& irreducibles() const { return irr_; }
  std::size_t trivial_index() const;
  /// Position of chi in the table; throws when chi is not irreducible.
  std::size_t index_of(const Character& chi) const;
  std::size_t contragredient_index(std::size_t i) const;
  /// The prime used by the modular construction (0 when imported).
  std::uint64_t modular_prime() const { return modular_prime_; }

  /// Multiplicities <f, chi> for every irreducible chi.
  std::vector<Cyclotomic> decompose(const Character& f) const;

 private:
  GroupPtr group_;
  std::vector<Character> irr_;
  std::uint64_t modular_prime_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

/// Irreducible complex characters, computed once per group and cached.  Sorted by
/// (degree, value vector), values compared through their coefficient vectors in Q(zeta_e).
/// Row and column orthogonality are verified exactly before the table is returned.
TablePtr character_table(const GroupPtr& g);

/// Exact orthogonality checks; returns an empty string when all hold.
std::string verify_table(const CharacterTable& t);

Character trivial_character(const GroupPtr& g);
Character regular_character(const GroupPtr& g);
Character contragredient(const Character& chi);

enum class Parity { Even, Odd };
std::string to_string(Parity p);
/// Even when chi(j) = chi(1), odd when chi(j) = -chi(1).
Parity parity(const Character& chi, const CentralInvolution& j);

Character induce(const Character& lambda, const EmbeddedSubgroup& u, const GroupPtr& g);
Character restrict(const Character& chi, const EmbeddedSubgroup& u);
Character inflate(const Character& phi, const Quotient& q, const GroupPtr& g);

/// A subgroup U and a linear character lambda of U with <res chi, lambda>_U = 1.
/// When [G:U] = chi(1) this says chi = ind lambda.
struct InductionWitness {
  EmbeddedSubgroup subgroup;
  Character lambda;
};

/// Induction witness for chi, if any: U of index chi(1) and linear lambda with ind lambda = chi.
std::optional<InductionWitness> monomial_witness(const Character& chi);
/// Any pair (U, lambda) with multiplicity one, preferring cyclic U and then lambda with the
/// smallest field of values.
std::optional<InductionWitness> multiplicity_one_pair(const Character& chi);

struct MonomialResult {
  bool monomial = true;
  std::vector<std::optional<InductionWitness>> witnesses;  // indexed like the table
};
MonomialResult is_monomial(const GroupPtr& g);

/// v_p(chi(1)) = v_p(|G|).
bool defect_zero(const Character& chi, std::uint64_t p);

/// Export: conductor, classes, and every value as an integer coefficient vector in Q(zeta_e).
Json character_table_to_json(const CharacterTable& t);
/// Import against an existing group; class representatives are matched as permutations.
/// The imported table is re-verified.
TablePtr character_table_from_json(const Json& j, const GroupPtr& g);

}  // namespace brumer
