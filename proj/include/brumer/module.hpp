#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brumer/group_ring.hpp"
#include "brumer/json_io.hpp"

namespace brumer {

using IntMatrix = std::vector<std::vector<Integer>>;

/// A finite abelian group Z/d_1 + ... + Z/d_r (1 < d_1 | d_2 | ...) with a left G-action.
/// Column i of the matrix of g holds the coordinates of g e_i; row l is read modulo d_l.
class GModule {
 public:
  GModule() = default;
  /// One matrix per generator of the group, in the group's generator order.
  GModule(GroupPtr group, std::vector<Integer> invariant_factors, std::vector<IntMatrix> generator_action,
          std::string label = "");
  static GModule zero(GroupPtr group, std::string label = "");

  const GroupPtr& group() const { return group_; }
  const std::string& label() const { return label_; }
  const std::vector<Integer>& invariant_factors() const { return d_; }
  std::size_t rank() const { return d_.size(); }
  Integer order() const;
  Integer exponent() const { return d_.empty() ? Integer(1) : d_.back(); }
  bool is_zero() const { return d_.empty(); }
  /// Matrix of an arbitrary group element.
  const IntMatrix& action(std::size_t g) const { return action_[g]; }
  const std::vector<IntMatrix>& generator_action() const { return generator_action_; }

  /// x v for x with coefficients integral at every prime dividing the exponent.
  std::vector<Integer> act(const QGElement& x, const std::vector<Integer>& v) const;
  /// The first generator e_i with x e_i != 0, together with x e_i.
  std::optional<std::pair<std::size_t, std::vector<Integer>>> survivor(const QGElement& x) const;

  /// The p-primary component.
  GModule p_part(std::uint64_t p) const;
  /// Pontryagin dual with (g f)(m) = f(g^-1 m), on the dual basis f_i(e_i) = 1/d_i.
  GModule dual() const;
  /// Relations d_i e_i and s e_i - sum_l A_s[l][i] e_l as rows of a matrix over Z/p^k[G];
  /// the invariant factors must be powers of p below p^k.
  ZpGMatrix presentation(const ZModRing* ring) const;

 private:
  void build_action();
  GroupPtr group_;
  std::vector<Integer> d_;
  std::vector<IntMatrix> generator_action_;
  std::vector<IntMatrix> action_;
  std::string label_;
};

Json module_to_json(const GModule& m);
/// {"invariant_factors": [...], "action": [matrix per generator], "label": "..."}.
GModule module_from_json(const Json& j, const GroupPtr& g);

}  // namespace brumer
