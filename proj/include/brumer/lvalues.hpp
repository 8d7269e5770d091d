#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brumer/characters.hpp"
#include "brumer/lattice.hpp"
#include "brumer/module.hpp"
#include "brumer/wedderburn.hpp"

namespace brumer {

/// A character of (Z/f)^x, extended by zero to Z/f.
class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  /// values[a] for 0 <= a < f; must vanish exactly on residues not prime to f.
  DirichletCharacter(std::uint64_t modulus, std::vector<Cyclotomic> values);
  /// The Kronecker symbol (d / .) for a fundamental discriminant d, of modulus |d|.
  static DirichletCharacter kronecker(long d);
  static DirichletCharacter trivial(std::uint64_t modulus);

  std::uint64_t modulus() const { return f_; }
  const Cyclotomic& operator()(std::int64_t a) const;
  std::uint64_t conductor() const;
  bool is_primitive() const { return conductor() == f_; }
  DirichletCharacter primitive() const;
  bool is_odd() const { return (*this)(-1) == Cyclotomic(-1); }
  bool is_trivial() const;
  DirichletCharacter conj() const;
  /// The values at 0, ..., f-1.
  const std::vector<Cyclotomic>& values() const { return values_; }

 private:
  std::uint64_t f_ = 1;
  std::vector<Cyclotomic> values_;
};

/// L(0, chi) = -B_{1,chi} = -(1/f) sum_{a=1}^{f} chi(a) a for odd primitive chi.
Cyclotomic bernoulli_L0(const DirichletCharacter& chi);

/// A place v of the base field Q with a chosen place w above it.
struct PlaceDatum {
  std::string label;
  bool archimedean = false;
  Integer norm = 0;                  // N(v); 0 for archimedean places
  std::uint64_t characteristic = 0;  // residue characteristic
  std::size_t frobenius = 0;         // a lift of the Frobenius at w (complex conjugation at infinity)
  Subgroup inertia;
  bool in_s = false;
  bool in_t = false;
};

/// det(1 - N(v)^s phi_w^-1 | V_chi^{I_w}).  With s = 0 this is the Euler factor at v removed from
/// L(s, contragredient chi) by S-truncation; with s = 1 it is the factor of delta_T(0, chi).
Cyclotomic euler_factor_at_zero(const Character& chi, const PlaceDatum& v, int s_shift);
/// det(1 - x phi | V^I) as a polynomial in x, lowest degree first, from power sums and
/// Newton's identities.
std::vector<Cyclotomic> frobenius_polynomial(const Character& chi, std::size_t phi, const Subgroup& inertia);

struct LValueCertificate {
  std::string character;  // fingerprint or "chi<i>" table label
  Cyclotomic value;       // L(0, chi), without Euler factors removed
  std::string provenance = "ingested";
  std::string source;
  std::string source_hash;
};

/// The Artin map of an abelian quotient of G: residue a mod f goes to the Frobenius sigma_a,
/// determined up to the commutator subgroup.
struct ArtinMap {
  std::uint64_t modulus = 1;
  std::vector<std::pair<std::uint64_t, std::size_t>> images;  // (residue, element)
};

/// A fractional ideal recorded by its class in the class group module.
struct IdealDatum {
  std::string label;
  std::vector<Integer> class_coordinates;
  bool principal_generator_known = false;
  bool anti_unit_asserted = false;
};

/// A Galois CM-extension L/Q with group G, everything the engine needs about it.
struct ExtensionDatum {
  std::string name;
  GroupPtr group;
  std::size_t j = 0;
  std::string base_field = "Q";
  std::uint64_t mu_order = 2;
  std::vector<std::uint64_t> ramified_primes;
  std::optional<ArtinMap> artin_map;
  std::vector<PlaceDatum> places;
  std::vector<std::vector<std::string>> t_sets;
  std::vector<LValueCertificate> l_values;
  std::vector<LValueCertificate> padic_l_values;
  std::optional<GModule> class_group;
  std::optional<GModule> ray_class_group;
  std::vector<std::string> ray_class_t;
  std::vector<IdealDatum> ideals;

  CentralInvolution involution() const { return CentralInvolution(group, j); }
  const PlaceDatum& place(const std::string& label) const;
  std::vector<std::string> s_labels() const;
  std::vector<std::string> t_labels() const;
};

ExtensionDatum extension_from_json(const Json& j);
Json extension_to_json(const ExtensionDatum& d);
Json certificate_to_json(const LValueCertificate& c);

/// "d<degree>:[v_1,...,v_r]", values in class order.
std::string character_fingerprint(const Character& chi);

/// The Dirichlet character chi o Art for a linear character chi of G.
DirichletCharacter dirichlet_character(const ArtinMap& art, const Character& chi);

struct ComponentTrace {
  std::size_t character = 0;
  std::string fingerprint;
  Parity parity = Parity::Even;
  std::string rule;  // how the component was obtained
  std::optional<Cyclotomic> l_value;  // L(0, contragredient chi)
  Cyclotomic truncation = Cyclotomic(1);
  Cyclotomic delta = Cyclotomic(1);
  Cyclotomic component = Cyclotomic(0);
};

struct StickelbergerResult {
  CenterElement theta;
  std::vector<std::string> s_places;
  std::vector<std::string> t_places;
  std::vector<ComponentTrace> components;
  std::string provenance;
};

/// theta_S^T = sum_chi delta_T(0, chi) L_S(0, contragredient chi) e(chi).  T defaults to the
/// places flagged T in the datum.
StickelbergerResult stickelberger(const ExtensionDatum& d, const std::optional<std::vector<std::string>>& t = std::nullopt);
/// The p-adic Stickelberger element: equal to theta_S^T when G/<j> is monomial, otherwise
/// assembled from ingested p-adic L-values.
StickelbergerResult p_adic_stickelberger(const ExtensionDatum& d, std::uint64_t p,
                                         const std::optional<std::vector<std::string>>& t = std::nullopt);

/// delta_T(0) as a centre element.
CenterElement delta_element(const ExtensionDatum& d, const std::vector<std::string>& t);

struct IntegralityReport {
  enum class Verdict { Integral, NotIntegral, Undecided } verdict = Verdict::Integral;
  std::string lattice;
  std::vector<std::pair<std::size_t, Rational>> failures;  // class index, coefficient
  std::string reason;
  bool passed() const { return verdict == Verdict::Integral; }
};
std::string to_string(IntegralityReport::Verdict v);
/// Whether theta lies in Z[G] (for abelian G) or in the integrality ring I(G): membership in
/// zeta(Z[G]) proves it, failure to lie in zeta(M(G)) disproves it.
IntegralityReport integrality_report(const CenterElement& theta);

/// Class-sum coordinates; throws if some coordinate is not rational.
RationalVector rational_coordinates(const CenterElement& x);

Json center_element_to_json(const CenterElement& x);
/// "1 - j", "3/2 - 3/2*j", "2 + K(1,2,3)": class sums named by a representative.
std::string center_element_to_text(const CenterElement& x, std::optional<std::size_t> j = std::nullopt);
Json stickelberger_to_json(const StickelbergerResult& r);
Json integrality_to_json(const IntegralityReport& r);

}  // namespace brumer
