#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brumer/fitting.hpp"
#include "brumer/lvalues.hpp"

namespace brumer {

enum class Outcome { Pass, Fail, Undecided };
std::string to_string(Outcome o);
/// 0 pass, 1 fail, 2 undecided.
int exit_code(Outcome o);

struct RunConfig {
  unsigned precision = 20;
  int unit_bound = 6;
  unsigned jobs = 1;
};
Json config_to_json(const RunConfig& c);

struct Premise {
  std::string name;
  bool holds = false;
  std::string witness;
};
Json premise_to_json(const Premise& p);

/// An arithmetic fact supplied by the user rather than derived.
struct Assumption {
  std::string name;
  bool holds = true;
  std::string statement;
};
/// [{"name": ..., "holds": true, "statement": ...}, ...]
std::vector<Assumption> assumptions_from_json(const Json& j);
Json assumption_to_json(const Assumption& a);

struct HypVerdict {
  bool s_contains_ramified_and_infinite = false;
  bool s_t_disjoint = false;
  bool torsionfree = false;
  std::vector<std::string> reasons;
  bool passed() const { return s_contains_ramified_and_infinite && s_t_disjoint && torsionfree; }
};
Json hyp_to_json(const HypVerdict& h);

/// Some non-trivial root of unity of L is congruent to 1 modulo every place above T exactly
/// when all places in T have one residue characteristic l and l divides |mu_L|.
bool t_units_torsionfree(std::uint64_t mu_order, const std::vector<std::uint64_t>& t_characteristics);
/// The p-primary variant: no non-trivial p-power root of unity is 1 modulo T.
bool t_units_torsionfree_at(std::uint64_t mu_order, const std::vector<std::uint64_t>& t_characteristics,
                            std::uint64_t p);
/// Hyp(S, T) with S the places flagged S in the datum.
HypVerdict check_hyp(const ExtensionDatum& d, const std::vector<std::string>& t);

struct CheckVerdict {
  std::string check;
  std::string extension;
  Outcome outcome = Outcome::Undecided;
  std::uint64_t p = 0;
  RunConfig config;
  std::vector<Premise> premises;
  std::vector<Assumption> assumptions;
  Json witnesses = Json::object();
  std::vector<std::string> notes;
};
Json verdict_to_json(const CheckVerdict& v);
std::string verdict_to_text(const CheckVerdict& v);

/// For each admissible T and each certified x in the denominator ideal: x delta_T(0) theta_S is
/// p-integral and kills cl_L(p).
CheckVerdict brumer_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg);
/// theta^# in the Fitting invariant of the Pontryagin dual of A over Z_p[G]_-.
CheckVerdict dual_sbs_membership(const CenterElement& theta, const GModule& a, const CentralInvolution& j,
                                 std::uint64_t p, const RunConfig& cfg);
/// dual_sbs_membership for the ray class group and T recorded in the datum.
CheckVerdict dual_sbs_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg);
/// omega_L theta_S in I(G), class annihilation by x omega_L theta_S, and the anti-unit clause as far as
/// the supplied ideal data allows.
CheckVerdict bs_antiunit_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg);

/// nr(|mu_L|): the component at chi is |mu_L|^chi(1).
CenterElement omega_element(const TablePtr& t, std::uint64_t mu_order);

struct HybridVerdict {
  bool hybrid = false;
  std::string rule;  // "trivial-subgroup", "frobenius-kernel", "base-change", "defect-zero", "order-divisible"
  std::string reason;
  std::optional<Subgroup> intermediate;  // H for the base-change rule
};
Json hybrid_to_json(const FiniteGroup& g, const HybridVerdict& h);

/// Whether Z_p[G](1 - e_N) is a maximal order: p must not divide |N|, and every character with
/// N not in its kernel must have p-defect zero.
bool defect_zero_hybrid(const GroupPtr& g, const Subgroup& n, std::uint64_t p);
/// Z_p[G] is N-hybrid, with the rule that proves it.
HybridVerdict hybrid_check(const GroupPtr& g, const Subgroup& n, std::uint64_t p);

enum class TheoremTag { CoprimeDegree, FrobeniusAbelianComplement, HybridMonomial, None };
std::string to_string(TheoremTag t);

struct TheoremVerdict {
  TheoremTag tag = TheoremTag::None;
  std::string statement;
  std::uint64_t p = 0;
  std::optional<Subgroup> n;
  /// Named families recognized among the Frobenius cases with an l-group kernel, e.g. "Aff(7)".
  std::vector<std::string> examples;
  std::vector<Premise> premises;
  std::vector<Assumption> assumptions;
  std::vector<std::string> notes;
  bool applies() const { return tag != TheoremTag::None; }
};
Json theorem_to_json(const FiniteGroup& g, const TheoremVerdict& v);
std::string theorem_to_text(const FiniteGroup& g, const TheoremVerdict& v);

/// Which unconditional result gives the Brumer and Brumer-Stark conjectures at p for CM-extensions
/// L/Q with Gal(L+/Q) = g_plus and S containing the places above p, the ramified places and
/// infinity.  Subfields of L+ that must be abelian over Q are recognised group-theoretically: the
/// fixed field of H is abelian exactly when H contains the commutator subgroup.  An assumption named
/// "base-field-Q" with holds = false switches this off, and the abelian premises are then taken
/// from assumptions named "abelian:(L+)^U" and "abelian:F^P".
TheoremVerdict classify_theorem(const GroupPtr& g_plus, std::uint64_t p, const std::optional<Subgroup>& n = std::nullopt,
                                const std::vector<Assumption>& assumptions = {});

/// G/<j>.
Quotient plus_quotient(const ExtensionDatum& d);

/// A subgroup named by generators in cycle notation, normal closure not taken.
Subgroup subgroup_from_json(const GroupPtr& g, const Json& generators, const std::string& where);
Json subgroup_to_json(const FiniteGroup& g, const Subgroup& h);

}  // namespace brumer
