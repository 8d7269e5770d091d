#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "brumer/numeric.hpp"

namespace brumer {

/// A permutation of {0, ..., n-1}; composition is right-to-left, (a*b)(x) = a(b(x)).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images);

  static Perm identity(std::size_t degree);
  /// Parses 1-based cycle notation such as "(1,2,3)(4,5)"; "()" is the identity.
  static Perm from_cycles(std::size_t degree, const std::string& cycles);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const;
  std::string to_cycles() const;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

struct ConjugacyClass {
  std::size_t representative;
  std::vector<std::size_t> elements;  // sorted element indices
  std::size_t size() const { return elements.size(); }
};

class CharacterTable;

/// A finite permutation group with all elements enumerated.  Elements are indexed in
/// lexicographic order of their image arrays, so the identity has index 0 and indexing
/// does not depend on the chosen generators.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultOrderBound = 2000;

  FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::size_t order_bound = kDefaultOrderBound);
  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<std::size_t>& generator_indices() const { return generator_indices_; }
  const Perm& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::optional<std::size_t> index_of(const Perm& p) const;
  std::size_t index_of_checked(const Perm& p) const;

  static constexpr std::size_t identity() { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conjugate(std::size_t g, std::size_t x) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  std::size_t pow(std::size_t g, long e) const;
  std::size_t element_order(std::size_t g) const { return orders_[g]; }
  std::uint64_t exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }

  /// Classes sorted by (element order, lexicographically least member); identity class first.
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  std::size_t class_of(std::size_t g) const { return class_of_[g]; }
  std::size_t inverse_class(std::size_t c) const { return class_of(inv(classes_[c].representative)); }
  std::size_t power_class(std::size_t c, long e) const { return class_of(pow(classes_[c].representative, e)); }
  /// a_{ijk} = #{(x, y) in C_i x C_j : x y = g_k}, so that K_i K_j = sum_k a_{ijk} K_k.
  long class_structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

  // lazily computed character table (see characters.hpp)
  std::shared_ptr<const CharacterTable> cached_table() const;
  void set_cached_table(std::shared_ptr<const CharacterTable> table) const;
  // lazily computed Wedderburn representations (see wedderburn.hpp)
  std::shared_ptr<const void> cached_representations() const;
  void set_cached_representations(std::shared_ptr<const void> reps) const;

 private:
  std::size_t degree_;
  std::vector<Perm> generators_;
  std::vector<std::size_t> generator_indices_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> orders_;
  std::uint64_t exponent_ = 1;
  bool abelian_ = true;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<long> structure_;  // r^3 entries

  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const CharacterTable> table_cache_;
  mutable std::shared_ptr<const void> reps_cache_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group(std::size_t degree, std::vector<Perm> generators,
                    std::size_t order_bound = FiniteGroup::kDefaultOrderBound);
/// Convenience: generators in cycle notation.
GroupPtr make_group(std::size_t degree, const std::vector<std::string>& generator_cycles,
                    std::size_t order_bound = FiniteGroup::kDefaultOrderBound);

/// A subgroup of a parent group, stored as the sorted list of its element indices.
struct Subgroup {
  std::vector<std::size_t> elements;
  std::vector<std::size_t> generators;  // parent element indices
  bool is_normal = false;
  std::size_t index = 1;

  std::size_t order() const { return elements.size(); }
  bool contains(std::size_t g) const;
  bool operator==(const Subgroup& o) const { return elements == o.elements; }
};

/// A subgroup realised as a standalone group, with the embedding into its parent.
struct EmbeddedSubgroup {
  GroupPtr group;
  std::vector<std::size_t> to_parent;  // subgroup element index -> parent element index
  Subgroup handle;
};

/// A central element of order dividing 2 (complex conjugation in the CM setting).
class CentralInvolution {
 public:
  CentralInvolution(GroupPtr group, std::size_t element);
  const GroupPtr& group() const { return group_; }
  std::size_t element() const { return element_; }

 private:
  GroupPtr group_;
  std::size_t element_;
};

struct ClassSummary {
  std::size_t representative;
  std::size_t size;
  std::size_t element_order;
};

std::vector<ClassSummary> conjugacy_classes(const FiniteGroup& g);

Subgroup generate_subgroup(const FiniteGroup& g, std::span<const std::size_t> generators);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
Subgroup normal_closure(const FiniteGroup& g, std::span<const std::size_t> elements);
Subgroup commutator_subgroup(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g);
/// Representatives of the conjugacy classes of subgroups whose order divides `order_divisor`
/// (0 = no restriction), sorted by order.
std::vector<Subgroup> subgroup_class_representatives(const FiniteGroup& g, std::size_t order_divisor = 0);
Subgroup sylow_subgroup(const FiniteGroup& g, std::uint64_t p);
bool is_nilpotent(const FiniteGroup& g, const Subgroup& h);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);
EmbeddedSubgroup embed_subgroup(const GroupPtr& g, const Subgroup& h);

struct FrobeniusStructure {
  Subgroup kernel;
  Subgroup complement;
};

/// Kernel and complement when g is a Frobenius group; std::nullopt otherwise.
std::optional<FrobeniusStructure> frobenius_structure(const FiniteGroup& g);

struct Quotient {
  GroupPtr group;
  std::vector<std::size_t> projection;  // parent element -> quotient element
};

/// G/N realised as the permutation action of G on the cosets of N.
Quotient quotient(const GroupPtr& g, const Subgroup& n);

/// Invariant fingerprint: order, class sizes, element orders.  Used only for labels.
std::string fingerprint(const FiniteGroup& g);
/// A conventional name ("S3", "A4", "C7:C3", ...) when the fingerprint is recognised, else "".
std::string guess_name(const FiniteGroup& g);

}  // namespace brumer
