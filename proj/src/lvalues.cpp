#include "brumer/lvalues.hpp"

#include <algorithm>
#include <set>

#include "brumer/fitting.hpp"

namespace brumer {

namespace {

std::uint64_t mod_u64(std::int64_t a, std::uint64_t f) {
  std::int64_t r = a % static_cast<std::int64_t>(f);
  if (r < 0) r += static_cast<std::int64_t>(f);
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string cycles_at(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (const auto& c : j) {
      if (!c.is_string()) throw InputError(where + ": expected cycle strings");
      s += c.get<std::string>();
    }
    return s.empty() ? "()" : s;
  }
  throw InputError(where + ": expected a permutation in cycle notation");
}

std::size_t element_at(const GroupPtr& g, const Json& j, const std::string& where) {
  Perm p;
  try {
    p = Perm::from_cycles(g->degree(), cycles_at(j, where));
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  auto idx = g->index_of(p);
  if (!idx) throw InputError(where + ": " + p.to_cycles() + " is not in the group");
  return *idx;
}

std::uint64_t u64_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Integer integer_at(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw InputError(where + ": expected an integer");
}

std::vector<std::string> labels_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of place labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw InputError(where + "/" + std::to_string(i) + ": expected a place label");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

LValueCertificate certificate_at(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("character") || !j["character"].is_string() || !j.contains("value"))
    throw InputError(where + ": a certificate needs 'character' and 'value'");
  LValueCertificate c;
  c.character = j["character"].get<std::string>();
  c.value = cyclotomic_from_json(j["value"], where + "/value");
  c.provenance = j.value("provenance", std::string("ingested"));
  c.source = j.value("source", std::string());
  c.source_hash = j.value("source_hash", std::string());
  return c;
}

std::optional<std::size_t> find_certificate(const std::vector<LValueCertificate>& certs, const CharacterTable& t,
                                            std::size_t chi) {
  const std::string fp = character_fingerprint(t[chi]);
  const std::string label = "chi" + std::to_string(chi);
  for (std::size_t i = 0; i < certs.size(); ++i)
    if (certs[i].character == fp || certs[i].character == label) return i;
  return std::nullopt;
}

bool s_contains_archimedean(const ExtensionDatum& d) {
  return std::any_of(d.places.begin(), d.places.end(), [](const PlaceDatum& v) { return v.in_s && v.archimedean; });
}

std::vector<std::string> class_labels(const FiniteGroup& g, std::optional<std::size_t> j) {
  std::vector<std::string> out;
  for (const auto& c : g.classes()) {
    if (c.representative == 0)
      out.push_back("1");
    else if (j && c.representative == *j && c.size() == 1)
      out.push_back("j");
    else if (c.size() == 1)
      out.push_back(g.element(c.representative).to_cycles());
    else
      out.push_back("K" + g.element(c.representative).to_cycles());
  }
  return out;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::uint64_t modulus, std::vector<Cyclotomic> values)
    : f_(modulus), values_(std::move(values)) {
  if (f_ == 0) throw InputError("Dirichlet character modulus must be positive");
  if (values_.size() != f_) throw InputError("Dirichlet character needs one value per residue");
  for (std::uint64_t a = 0; a < f_; ++a) {
    const bool unit = gcd_u64(a, f_) == 1;
    if (unit == values_[a].is_zero()) throw InputError("Dirichlet character must vanish exactly off the units");
  }
  if (!values_[1 % f_].is_one()) throw InputError("Dirichlet character must send 1 to 1");
  // multiplicativity against a generating set of the unit group
  std::vector<bool> reached(f_, false);
  reached[1 % f_] = true;
  std::vector<std::uint64_t> span{1 % f_};
  for (std::uint64_t b = 1; b < f_; ++b) {
    if (gcd_u64(b, f_) != 1 || reached[b]) continue;
    for (std::uint64_t a = 0; a < f_; ++a)
      if (values_[(a * b) % f_] != values_[a] * values_[b]) throw InputError("Dirichlet character is not multiplicative");
    for (std::size_t i = 0; i < span.size(); ++i) {
      std::uint64_t y = (span[i] * b) % f_;
      if (!reached[y]) {
        reached[y] = true;
        span.push_back(y);
      }
    }
  }
}

DirichletCharacter DirichletCharacter::kronecker(long d) {
  if (d == 0 || d == 1) throw InputError("not a fundamental discriminant");
  const std::uint64_t f = static_cast<std::uint64_t>(d < 0 ? -d : d);
  std::vector<Cyclotomic> v;
  Integer dz(d);
  for (std::uint64_t a = 0; a < f; ++a) v.emplace_back(static_cast<long>(mpz_kronecker_si(dz.get_mpz_t(), static_cast<long>(a))));
  return DirichletCharacter(f, std::move(v));
}

DirichletCharacter DirichletCharacter::trivial(std::uint64_t modulus) {
  std::vector<Cyclotomic> v;
  for (std::uint64_t a = 0; a < modulus; ++a) v.emplace_back(gcd_u64(a, modulus) == 1 ? 1 : 0);
  return DirichletCharacter(modulus, std::move(v));
}

const Cyclotomic& DirichletCharacter::operator()(std::int64_t a) const { return values_[mod_u64(a, f_)]; }

bool DirichletCharacter::is_trivial() const {
  for (std::uint64_t a = 0; a < f_; ++a)
    if (!values_[a].is_zero() && !values_[a].is_one()) return false;
  return true;
}

std::uint64_t DirichletCharacter::conductor() const {
  for (auto c : divisors(f_)) {
    bool ok = true;
    for (std::uint64_t a = 1; a < f_ && ok; a += c)
      if (gcd_u64(a, f_) == 1 && !values_[a].is_one()) ok = false;
    if (ok) return c;
  }
  return f_;
}

DirichletCharacter DirichletCharacter::primitive() const {
  const std::uint64_t c = conductor();
  std::vector<Cyclotomic> v;
  for (std::uint64_t b = 0; b < c; ++b) {
    if (gcd_u64(b, c) != 1) {
      v.emplace_back(0);
      continue;
    }
    std::uint64_t a = b;
    while (gcd_u64(a, f_) != 1) a += c;
    v.push_back(values_[a % f_]);
  }
  return DirichletCharacter(c, std::move(v));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<Cyclotomic> v;
  for (const auto& x : values_) v.push_back(x.conj());
  return DirichletCharacter(f_, std::move(v));
}

Cyclotomic bernoulli_L0(const DirichletCharacter& chi) {
  if (!chi.is_odd()) throw DomainError("L(0, chi) via Bernoulli numbers needs an odd character");
  if (!chi.is_primitive()) throw DomainError("bernoulli_L0 needs a primitive character");
  const std::uint64_t f = chi.modulus();
  Cyclotomic sum(0);
  for (std::uint64_t a = 1; a <= f; ++a) {
    const auto& v = chi(static_cast<std::int64_t>(a));
    if (!v.is_zero()) sum += v * Cyclotomic(static_cast<long>(a));
  }
  return -sum / Cyclotomic(static_cast<long>(f));
}

std::vector<Cyclotomic> frobenius_polynomial(const Character& chi, std::size_t phi, const Subgroup& inertia) {
  const auto& g = *chi.group();
  for (auto i : inertia.elements)
    if (!inertia.contains(g.conjugate(i, phi))) throw DomainError("Frobenius does not normalise the inertia group");
  const Cyclotomic size(static_cast<long>(inertia.order()));
  auto invariant_trace = [&](std::size_t x) {
    Cyclotomic s(0);
    for (auto i : inertia.elements) s += chi.at_element(g.mul(x, i));
    return s / size;
  };
  Cyclotomic dim = invariant_trace(0);
  if (!dim.is_rational() || dim.to_rational().get_den() != 1 || dim.to_rational() < 0)
    throw DomainError("inconsistent inertia data: invariant dimension " + dim.to_string());
  const long d = dim.to_rational().get_num().get_si();
  std::vector<Cyclotomic> power_sums(d + 2);
  for (long m = 1; m <= d + 1; ++m) power_sums[m] = invariant_trace(g.pow(phi, m));
  std::vector<Cyclotomic> e(d + 2, Cyclotomic(0));
  e[0] = 1;
  for (long k = 1; k <= d + 1; ++k) {
    Cyclotomic acc(0);
    for (long i = 1; i <= k; ++i) {
      Cyclotomic term = e[k - i] * power_sums[i];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[k] = acc / Cyclotomic(k);
  }
  if (!e[d + 1].is_zero()) throw DomainError("inconsistent Frobenius data: power sums do not come from " + std::to_string(d) + " eigenvalues");
  std::vector<Cyclotomic> poly;
  for (long k = 0; k <= d; ++k) poly.push_back(k % 2 == 0 ? e[k] : -e[k]);
  return poly;
}

Cyclotomic euler_factor_at_zero(const Character& chi, const PlaceDatum& v, int s_shift) {
  if (v.archimedean) throw DomainError("no Euler factor at an archimedean place");
  auto poly = frobenius_polynomial(chi, chi.group()->inv(v.frobenius), v.inertia);
  Cyclotomic q = s_shift == 0 ? Cyclotomic(1) : Cyclotomic(Rational(power(v.norm, static_cast<unsigned long>(s_shift))));
  Cyclotomic out(0), x(1);
  for (const auto& c : poly) {
    out += c * x;
    x *= q;
  }
  return out;
}

const PlaceDatum& ExtensionDatum::place(const std::string& label) const {
  for (const auto& v : places)
    if (v.label == label) return v;
  throw InputError("unknown place '" + label + "'");
}

std::vector<std::string> ExtensionDatum::s_labels() const {
  std::vector<std::string> out;
  for (const auto& v : places)
    if (v.in_s) out.push_back(v.label);
  return out;
}

std::vector<std::string> ExtensionDatum::t_labels() const {
  std::vector<std::string> out;
  for (const auto& v : places)
    if (v.in_t) out.push_back(v.label);
  return out;
}

std::string character_fingerprint(const Character& chi) {
  std::string s = "d" + std::to_string(chi.degree()) + ":[";
  for (std::size_t c = 0; c < chi.values().size(); ++c) {
    if (c) s += ",";
    s += chi[c].to_string();
  }
  return s + "]";
}

DirichletCharacter dirichlet_character(const ArtinMap& art, const Character& chi) {
  if (!chi.is_linear()) throw DomainError("only linear characters factor through the Artin map");
  const std::uint64_t f = art.modulus;
  std::vector<std::optional<Cyclotomic>> val(f);
  val[1 % f] = Cyclotomic(1);
  std::vector<std::uint64_t> queue{1 % f};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint64_t x = queue[head];
    for (const auto& [a, sigma] : art.images) {
      const std::uint64_t y = (x * (a % f)) % f;
      Cyclotomic v = *val[x] * chi.at_element(sigma);
      if (val[y]) {
        if (*val[y] != v) throw InputError("Artin map is inconsistent with the group law");
        continue;
      }
      val[y] = v;
      queue.push_back(y);
    }
  }
  if (queue.size() != euler_phi(f)) throw InputError("Artin map residues do not generate (Z/" + std::to_string(f) + ")^x");
  std::vector<Cyclotomic> values;
  for (std::uint64_t a = 0; a < f; ++a) values.push_back(val[a] ? *val[a] : Cyclotomic(0));
  return DirichletCharacter(f, std::move(values));
}

ExtensionDatum extension_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("extension JSON must be an object");
  ExtensionDatum d;
  d.name = j.value("name", std::string());
  if (!j.contains("group")) throw InputError("/group: missing");
  GroupSpec spec;
  try {
    spec = group_from_json(j["group"]);
  } catch (const InputError& e) {
    throw InputError(std::string("/group: ") + e.what());
  }
  d.group = spec.group;
  if (!spec.j) throw InputError("/group/j: complex conjugation is required");
  d.j = *spec.j;
  d.base_field = j.value("base_field", std::string("Q"));
  if (d.base_field != "Q") throw InputError("/base_field: only extensions of Q are supported");
  if (!j.contains("mu_order")) throw InputError("/mu_order: missing");
  d.mu_order = u64_at(j["mu_order"], "/mu_order");
  if (d.mu_order < 2 || d.mu_order % 2 != 0) throw InputError("/mu_order: a CM field has an even number of roots of unity");
  if (j.contains("ramified_primes")) {
    for (std::size_t i = 0; i < j["ramified_primes"].size(); ++i)
      d.ramified_primes.push_back(u64_at(j["ramified_primes"][i], "/ramified_primes/" + std::to_string(i)));
  }
  if (j.contains("artin_map")) {
    const auto& a = j["artin_map"];
    ArtinMap art;
    art.modulus = u64_at(a.value("modulus", Json()), "/artin_map/modulus");
    if (art.modulus == 0) throw InputError("/artin_map/modulus: must be positive");
    if (!a.contains("images") || !a["images"].is_array()) throw InputError("/artin_map/images: expected a list");
    for (std::size_t i = 0; i < a["images"].size(); ++i) {
      const std::string w = "/artin_map/images/" + std::to_string(i);
      const auto& im = a["images"][i];
      std::uint64_t r = u64_at(im.value("residue", Json()), w + "/residue");
      if (gcd_u64(r, art.modulus) != 1) throw InputError(w + "/residue: not prime to the modulus");
      art.images.emplace_back(r, element_at(d.group, im.value("frobenius", Json()), w + "/frobenius"));
    }
    d.artin_map = art;
  }
  if (!j.contains("places") || !j["places"].is_array()) throw InputError("/places: expected a list");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j["places"].size(); ++i) {
    const std::string w = "/places/" + std::to_string(i);
    const auto& pj = j["places"][i];
    if (!pj.is_object() || !pj.contains("label") || !pj["label"].is_string()) throw InputError(w + "/label: missing");
    PlaceDatum v;
    v.label = pj["label"].get<std::string>();
    if (!seen.insert(v.label).second) throw InputError(w + "/label: duplicate place '" + v.label + "'");
    v.archimedean = pj.value("archimedean", false);
    v.in_s = pj.value("S", false);
    v.in_t = pj.value("T", false);
    if (v.archimedean) {
      v.frobenius = pj.contains("frobenius") ? element_at(d.group, pj["frobenius"], w + "/frobenius") : d.j;
      if (v.frobenius != d.j) throw InputError(w + "/frobenius: complex conjugation must be j");
      v.inertia = trivial_subgroup(*d.group);
    } else {
      if (!pj.contains("norm")) throw InputError(w + "/norm: missing");
      v.norm = integer_at(pj["norm"], w + "/norm");
      if (v.norm < 2 || !v.norm.fits_ulong_p()) throw InputError(w + "/norm: must be a prime power");
      auto ps = prime_factors(v.norm.get_ui());
      if (ps.size() != 1) throw InputError(w + "/norm: must be a prime power");
      v.characteristic = ps[0];
      v.frobenius = pj.contains("frobenius") ? element_at(d.group, pj["frobenius"], w + "/frobenius") : 0;
      std::vector<std::size_t> gens;
      if (pj.contains("inertia")) {
        if (!pj["inertia"].is_array()) throw InputError(w + "/inertia: expected a list of generators");
        for (std::size_t k = 0; k < pj["inertia"].size(); ++k)
          gens.push_back(element_at(d.group, pj["inertia"][k], w + "/inertia/" + std::to_string(k)));
      }
      v.inertia = generate_subgroup(*d.group, gens);
      for (auto x : v.inertia.elements)
        if (!v.inertia.contains(d.group->conjugate(x, v.frobenius)))
          throw InputError(w + ": the Frobenius does not normalise the inertia group");
    }
    d.places.push_back(std::move(v));
  }
  if (j.contains("t_sets")) {
    if (!j["t_sets"].is_array()) throw InputError("/t_sets: expected a list of lists");
    for (std::size_t i = 0; i < j["t_sets"].size(); ++i) {
      auto t = labels_at(j["t_sets"][i], "/t_sets/" + std::to_string(i));
      for (const auto& l : t)
        if (!seen.count(l)) throw InputError("/t_sets/" + std::to_string(i) + ": unknown place '" + l + "'");
      d.t_sets.push_back(std::move(t));
    }
  }
  for (const char* key : {"l_values", "padic_l_values"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_array()) throw InputError(std::string("/") + key + ": expected a list");
    auto& dest = std::string(key) == "l_values" ? d.l_values : d.padic_l_values;
    for (std::size_t i = 0; i < j[key].size(); ++i)
      dest.push_back(certificate_at(j[key][i], std::string("/") + key + "/" + std::to_string(i)));
  }
  auto module_at = [&](const char* key) {
    try {
      return module_from_json(j[key], d.group);
    } catch (const InputError& e) {
      throw InputError(std::string("/") + key + e.what());
    }
  };
  if (j.contains("class_group")) d.class_group = module_at("class_group");
  if (j.contains("ray_class_group")) {
    d.ray_class_group = module_at("ray_class_group");
    if (j["ray_class_group"].contains("T")) d.ray_class_t = labels_at(j["ray_class_group"]["T"], "/ray_class_group/T");
    for (const auto& l : d.ray_class_t)
      if (!seen.count(l)) throw InputError("/ray_class_group/T: unknown place '" + l + "'");
  }
  if (j.contains("ideals")) {
    if (!j["ideals"].is_array()) throw InputError("/ideals: expected a list");
    const std::size_t rank = d.class_group ? d.class_group->rank() : 0;
    for (std::size_t i = 0; i < j["ideals"].size(); ++i) {
      const std::string w = "/ideals/" + std::to_string(i);
      const auto& ij = j["ideals"][i];
      IdealDatum id;
      id.label = ij.value("label", std::string());
      if (!ij.contains("class") || !ij["class"].is_array() || ij["class"].size() != rank)
        throw InputError(w + "/class: need " + std::to_string(rank) + " coordinates in the class group");
      for (std::size_t k = 0; k < rank; ++k) id.class_coordinates.push_back(integer_at(ij["class"][k], w + "/class/" + std::to_string(k)));
      id.principal_generator_known = ij.value("principal_generator_known", false);
      id.anti_unit_asserted = ij.value("anti_unit", false);
      d.ideals.push_back(std::move(id));
    }
  }
  return d;
}

Json certificate_to_json(const LValueCertificate& c) {
  Json out;
  out["character"] = c.character;
  out["value"] = cyclotomic_to_json(c.value);
  out["provenance"] = c.provenance;
  if (!c.source.empty()) out["source"] = c.source;
  if (!c.source_hash.empty()) out["source_hash"] = c.source_hash;
  return out;
}

Json extension_to_json(const ExtensionDatum& d) {
  Json out;
  if (!d.name.empty()) out["name"] = d.name;
  out["group"] = group_to_json(*d.group, d.j);
  out["base_field"] = d.base_field;
  out["mu_order"] = d.mu_order;
  if (!d.ramified_primes.empty()) out["ramified_primes"] = d.ramified_primes;
  if (d.artin_map) {
    Json a;
    a["modulus"] = d.artin_map->modulus;
    Json ims = Json::array();
    for (const auto& [r, s] : d.artin_map->images) {
      Json im;
      im["residue"] = r;
      im["frobenius"] = d.group->element(s).to_cycles();
      ims.push_back(im);
    }
    a["images"] = ims;
    out["artin_map"] = a;
  }
  Json places = Json::array();
  for (const auto& v : d.places) {
    Json pj;
    pj["label"] = v.label;
    if (v.archimedean) {
      pj["archimedean"] = true;
    } else {
      pj["norm"] = v.norm.fits_slong_p() ? Json(v.norm.get_si()) : Json(v.norm.get_str());
      pj["frobenius"] = d.group->element(v.frobenius).to_cycles();
      Json in = Json::array();
      for (auto g : v.inertia.generators) in.push_back(d.group->element(g).to_cycles());
      pj["inertia"] = in;
    }
    pj["S"] = v.in_s;
    pj["T"] = v.in_t;
    places.push_back(pj);
  }
  out["places"] = places;
  if (!d.t_sets.empty()) out["t_sets"] = d.t_sets;
  auto certs = [](const std::vector<LValueCertificate>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(certificate_to_json(c));
    return a;
  };
  if (!d.l_values.empty()) out["l_values"] = certs(d.l_values);
  if (!d.padic_l_values.empty()) out["padic_l_values"] = certs(d.padic_l_values);
  if (d.class_group) out["class_group"] = module_to_json(*d.class_group);
  if (d.ray_class_group) {
    Json r = module_to_json(*d.ray_class_group);
    r["T"] = d.ray_class_t;
    out["ray_class_group"] = r;
  }
  if (!d.ideals.empty()) {
    Json ids = Json::array();
    for (const auto& id : d.ideals) {
      Json ij;
      ij["label"] = id.label;
      Json c = Json::array();
      for (const auto& x : id.class_coordinates) c.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
      ij["class"] = c;
      ij["principal_generator_known"] = id.principal_generator_known;
      ij["anti_unit"] = id.anti_unit_asserted;
      ids.push_back(ij);
    }
    out["ideals"] = ids;
  }
  return out;
}

CenterElement delta_element(const ExtensionDatum& d, const std::vector<std::string>& t) {
  auto table = character_table(d.group);
  std::vector<Cyclotomic> comp;
  for (const auto& chi : table->irreducibles()) {
    Cyclotomic delta(1);
    for (const auto& l : t) delta *= euler_factor_at_zero(chi, d.place(l), 1);
    comp.push_back(delta);
  }
  return CenterElement(table, std::move(comp));
}

StickelbergerResult stickelberger(const ExtensionDatum& d, const std::optional<std::vector<std::string>>& t) {
  if (!s_contains_archimedean(d)) throw DomainError("S must contain the infinite place");
  StickelbergerResult res;
  res.s_places = d.s_labels();
  res.t_places = t ? *t : d.t_labels();
  for (const auto& l : res.t_places)
    if (d.place(l).archimedean) throw DomainError("T cannot contain an archimedean place");
  auto table = character_table(d.group);
  const CentralInvolution j = d.involution();
  std::vector<Cyclotomic> comp;
  for (std::size_t i = 0; i < table->size(); ++i) {
    const Character& chi = (*table)[i];
    ComponentTrace tr;
    tr.character = i;
    tr.fingerprint = character_fingerprint(chi);
    tr.parity = parity(chi, j);
    for (const auto& l : res.t_places) tr.delta *= euler_factor_at_zero(chi, d.place(l), 1);
    if (i == table->trivial_index()) {
      if (res.s_places.size() > 1) {
        tr.rule = "vanishes: trivial character and |S| > 1";
      } else {
        tr.rule = "zeta(0) = -1/2";
        tr.l_value = Cyclotomic(fraction(-1, 2));
        tr.component = tr.delta * *tr.l_value;
      }
    } else if (tr.parity == Parity::Even) {
      tr.rule = "vanishes: even character";
    } else {
      const std::size_t ic = table->contragredient_index(i);
      const Character& chic = (*table)[ic];
      std::optional<Cyclotomic> native;
      if (chic.is_linear() && d.artin_map) {
        DirichletCharacter dc = dirichlet_character(*d.artin_map, chic).primitive();
        native = bernoulli_L0(dc);
        tr.rule = "Bernoulli number of the primitive Dirichlet character of conductor " + std::to_string(dc.modulus());
      }
      auto cert = find_certificate(d.l_values, *table, ic);
      if (cert) {
        const auto& c = d.l_values[*cert];
        if (native && *native != c.value)
          throw DomainError("certificate for " + c.character + " disagrees with the computed value " + native->to_string());
        if (!native) tr.rule = "certificate (" + c.provenance + (c.source_hash.empty() ? "" : ", " + c.source_hash) + ")";
        tr.l_value = c.value;
      } else if (native) {
        tr.l_value = native;
      } else {
        throw DomainError("missing L-value for chi" + std::to_string(ic) + " " + character_fingerprint(chic) +
                          ": supply a certificate in l_values");
      }
      for (const auto& v : d.places)
        if (v.in_s && !v.archimedean) tr.truncation *= euler_factor_at_zero(chi, v, 0);
      tr.component = tr.delta * *tr.l_value * tr.truncation;
    }
    comp.push_back(tr.component);
    res.components.push_back(std::move(tr));
  }
  res.theta = CenterElement(table, std::move(comp));
  for (const auto& c : res.theta.class_sum_coordinates())
    if (!c.is_rational()) throw DomainError("theta has irrational class-sum coordinates: inconsistent L-value data");
  res.provenance = "complex";
  return res;
}

StickelbergerResult p_adic_stickelberger(const ExtensionDatum& d, std::uint64_t p,
                                         const std::optional<std::vector<std::string>>& t) {
  const bool has_p = std::any_of(d.places.begin(), d.places.end(),
                                 [&](const PlaceDatum& v) { return v.in_s && !v.archimedean && v.characteristic == p; });
  if (!has_p) throw DomainError("S must contain the place above p = " + std::to_string(p));
  Subgroup jg = generate_subgroup(*d.group, std::vector<std::size_t>{d.j});
  Quotient plus = quotient(d.group, jg);
  if (is_monomial(plus.group).monomial) {
    StickelbergerResult r = stickelberger(d, t);
    r.provenance = "p-adic: equal to the complex element since G/<j> is monomial";
    return r;
  }
  auto table = character_table(d.group);
  StickelbergerResult res;
  res.s_places = d.s_labels();
  res.t_places = t ? *t : d.t_labels();
  const CentralInvolution j = d.involution();
  std::vector<Cyclotomic> comp;
  for (std::size_t i = 0; i < table->size(); ++i) {
    const Character& chi = (*table)[i];
    ComponentTrace tr;
    tr.character = i;
    tr.fingerprint = character_fingerprint(chi);
    tr.parity = parity(chi, j);
    if (tr.parity == Parity::Odd) {
      for (const auto& l : res.t_places) tr.delta *= euler_factor_at_zero(chi, d.place(l), 1);
      const std::size_t ic = table->contragredient_index(i);
      auto cert = find_certificate(d.padic_l_values, *table, ic);
      if (!cert)
        throw DomainError("G/<j> is not monomial and no p-adic L-value was supplied for chi" + std::to_string(ic) +
                          "; the identity L_{p,S}(0, chi) = L_S(0, chi omega^-1) is unproven here");
      tr.l_value = d.padic_l_values[*cert].value;
      tr.rule = "p-adic certificate";
      tr.component = tr.delta * *tr.l_value;
    } else {
      tr.rule = "vanishes: even character";
    }
    comp.push_back(tr.component);
    res.components.push_back(std::move(tr));
  }
  res.theta = CenterElement(table, std::move(comp));
  res.provenance = "p-adic: ingested values";
  return res;
}

std::string to_string(IntegralityReport::Verdict v) {
  switch (v) {
    case IntegralityReport::Verdict::Integral: return "pass";
    case IntegralityReport::Verdict::NotIntegral: return "fail";
    case IntegralityReport::Verdict::Undecided: return "undecided";
  }
  return "?";
}

RationalVector rational_coordinates(const CenterElement& x) {
  RationalVector out;
  for (const auto& c : x.class_sum_coordinates()) {
    if (!c.is_rational()) throw DomainError("central element with irrational class-sum coordinates");
    out.push_back(c.to_rational());
  }
  return out;
}

IntegralityReport integrality_report(const CenterElement& theta) {
  IntegralityReport r;
  const auto& g = theta.table()->group();
  RationalVector x = rational_coordinates(theta);
  for (std::size_t c = 0; c < x.size(); ++c)
    if (x[c].get_den() != 1) r.failures.emplace_back(c, x[c]);
  r.lattice = g->is_abelian() ? "Z[G]" : "I(G)";
  if (r.failures.empty()) {
    r.verdict = IntegralityReport::Verdict::Integral;
    r.reason = "all class-sum coefficients are integers";
    return r;
  }
  if (g->is_abelian()) {
    r.verdict = IntegralityReport::Verdict::NotIntegral;
    r.reason = "coefficient " + to_string(r.failures[0].second) + " at " + g->element(g->classes()[r.failures[0].first].representative).to_cycles() + " is not integral";
    return r;
  }
  Integer den = 1;
  for (const auto& [c, q] : r.failures) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  for (auto p : prime_factors(den.get_ui())) {
    auto order = CenterOrder::group_ring(g, p);
    if (!order->maximal_center().contains(x)) {
      r.verdict = IntegralityReport::Verdict::NotIntegral;
      r.reason = "not in the centre of a maximal order at p = " + std::to_string(p);
      return r;
    }
  }
  r.verdict = IntegralityReport::Verdict::Undecided;
  r.reason = "in the centre of a maximal order but not of Z[G]";
  return r;
}

Json center_element_to_json(const CenterElement& x) {
  Json out;
  const auto& g = *x.table()->group();
  Json cs = Json::array();
  auto coords = x.class_sum_coordinates();
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (coords[c].is_zero()) continue;
    Json e;
    e["class"] = g.element(g.classes()[c].representative).to_cycles();
    e["size"] = g.classes()[c].size();
    e["c"] = cyclotomic_to_json(coords[c]);
    cs.push_back(e);
  }
  out["class_sums"] = cs;
  Json comps = Json::array();
  for (std::size_t i = 0; i < x.components().size(); ++i) comps.push_back(cyclotomic_to_json(x[i]));
  out["components"] = comps;
  return out;
}

std::string center_element_to_text(const CenterElement& x, std::optional<std::size_t> j) {
  const auto& g = *x.table()->group();
  auto labels = class_labels(g, j);
  auto coords = x.class_sum_coordinates();
  std::string s;
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (coords[c].is_zero()) continue;
    std::string v = coords[c].is_rational() ? to_string(coords[c].to_rational()) : "(" + coords[c].to_string() + ")";
    bool neg = !v.empty() && v[0] == '-';
    if (neg) v = v.substr(1);
    if (s.empty())
      s = neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (labels[c] == "1")
      s += v;
    else
      s += (v == "1" ? "" : v + "*") + labels[c];
  }
  return s.empty() ? "0" : s;
}

Json stickelberger_to_json(const StickelbergerResult& r) {
  Json out;
  out["S"] = r.s_places;
  out["T"] = r.t_places;
  out["provenance"] = r.provenance;
  out["theta"] = center_element_to_json(r.theta);
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json cj;
    cj["character"] = "chi" + std::to_string(c.character);
    cj["fingerprint"] = c.fingerprint;
    cj["parity"] = to_string(c.parity);
    cj["rule"] = c.rule;
    if (c.l_value) cj["L0_contragredient"] = cyclotomic_to_json(*c.l_value);
    cj["truncation"] = cyclotomic_to_json(c.truncation);
    cj["delta_T"] = cyclotomic_to_json(c.delta);
    cj["component"] = cyclotomic_to_json(c.component);
    comps.push_back(cj);
  }
  out["components"] = comps;
  return out;
}

Json integrality_to_json(const IntegralityReport& r) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  out["lattice"] = r.lattice;
  out["reason"] = r.reason;
  return out;
}

}  // namespace brumer
