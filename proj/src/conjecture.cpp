#include "brumer/conjecture.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "brumer/parallel.hpp"

namespace brumer {

namespace {

bool p_integral(const Rational& q, std::uint64_t p) {
  return mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string set_text(const std::vector<std::string>& v) { return "{" + join(v) + "}"; }

CenterElement sharp(const CenterElement& x) {
  const auto& t = x.table();
  std::vector<Cyclotomic> comp(t->size());
  for (std::size_t i = 0; i < t->size(); ++i) comp[i] = x[t->contragredient_index(i)];
  return CenterElement(t, std::move(comp));
}

bool subset_of(const Subgroup& a, const Subgroup& b) {
  return std::all_of(a.elements.begin(), a.elements.end(), [&](std::size_t g) { return b.contains(g); });
}

std::string group_label(const FiniteGroup& g) {
  std::string n = guess_name(g);
  return n.empty() ? "order " + std::to_string(g.order()) : n;
}

std::string subgroup_label(const GroupPtr& g, const Subgroup& h) {
  auto e = embed_subgroup(g, h);
  return group_label(*e.group);
}

/// A greedy generating set, in element order.
std::vector<std::size_t> small_generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::size_t> gens;
  Subgroup cur = trivial_subgroup(g);
  for (std::size_t x : h.elements) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = generate_subgroup(g, gens);
  }
  return gens;
}

Json json_strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

const Assumption* find_assumption(const std::vector<Assumption>& a, const std::string& name) {
  for (const auto& x : a)
    if (x.name == name) return &x;
  return nullptr;
}

/// The admissible T sets recorded in the datum, with one premise per candidate.
std::vector<std::vector<std::string>> admissible_t_sets(const ExtensionDatum& d, std::vector<Premise>& premises) {
  std::vector<std::vector<std::string>> candidates = d.t_sets;
  if (candidates.empty() && !d.t_labels().empty()) candidates.push_back(d.t_labels());
  std::vector<std::vector<std::string>> out;
  for (const auto& t : candidates) {
    HypVerdict h = check_hyp(d, t);
    premises.push_back({"Hyp(S,T) for T = " + set_text(t), h.passed(), join(h.reasons, "; ")});
    if (h.passed()) out.push_back(t);
  }
  return out;
}

/// x = 1 when the denominator ideal is the whole centre, x = |G| otherwise.
DenominatorCertificate denominator_element(const GroupPtr& g, std::uint64_t p) {
  const std::size_t r = g->num_classes();
  RationalVector x(r, Rational(0));
  x[0] = denominator_dichotomy(*g, p) == DenominatorType::FullCenter ? Rational(1)
                                                                      : Rational(static_cast<unsigned long>(g->order()));
  auto cert = certify_denominator(g, p, x, {});
  if (!cert.granted()) throw DomainError("internal: |G| was not certified in the denominator ideal");
  return cert;
}

Json certificate_json(const DenominatorCertificate& c) {
  Json out;
  out["x"] = to_string(c.x[0]);
  out["verdict"] = to_string(c.verdict);
  out["reason"] = c.reason;
  return out;
}

std::string module_text(const GModule& m) {
  if (m.is_zero()) return "0";
  std::vector<std::string> f;
  for (const auto& d : m.invariant_factors()) f.push_back("Z/" + d.get_str());
  return join(f, " + ");
}

struct ItemResult {
  Outcome outcome = Outcome::Pass;
  Json witness;
};

Outcome combine(const std::vector<ItemResult>& items) {
  Outcome o = Outcome::Pass;
  for (const auto& r : items) {
    if (r.outcome == Outcome::Fail) return Outcome::Fail;
    if (r.outcome == Outcome::Undecided) o = Outcome::Undecided;
  }
  return o;
}

bool j_acts_as_minus_one(const GModule& m, std::size_t j) {
  const auto& a = m.action(j);
  for (std::size_t l = 0; l < m.rank(); ++l)
    for (std::size_t i = 0; i < m.rank(); ++i) {
      Integer want = l == i ? Integer(-1) : Integer(0);
      Integer diff = a[l][i] - want;
      if (diff % m.invariant_factors()[l] != 0) return false;
    }
  return true;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Undecided: return "undecided";
  }
  return "";
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Undecided: return 2;
  }
  return 2;
}

Json config_to_json(const RunConfig& c) {
  Json out;
  out["precision"] = c.precision;
  out["unit_bound"] = c.unit_bound;
  return out;
}

Json premise_to_json(const Premise& p) {
  Json out;
  out["name"] = p.name;
  out["holds"] = p.holds;
  if (!p.witness.empty()) out["witness"] = p.witness;
  return out;
}

std::vector<Assumption> assumptions_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("assumptions") ? j["assumptions"] : j;
  if (!list.is_array()) throw InputError("/assumptions: expected a list of assumption records");
  std::vector<Assumption> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = "/assumptions/" + std::to_string(i);
    const auto& a = list[i];
    if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) throw InputError(w + "/name: missing");
    Assumption x;
    x.name = a["name"].get<std::string>();
    if (a.contains("holds")) {
      if (!a["holds"].is_boolean()) throw InputError(w + "/holds: expected a boolean");
      x.holds = a["holds"].get<bool>();
    }
    if (a.contains("statement")) {
      if (!a["statement"].is_string()) throw InputError(w + "/statement: expected a string");
      x.statement = a["statement"].get<std::string>();
    }
    out.push_back(std::move(x));
  }
  return out;
}

Json assumption_to_json(const Assumption& a) {
  Json out;
  out["name"] = a.name;
  out["holds"] = a.holds;
  if (!a.statement.empty()) out["statement"] = a.statement;
  return out;
}

Json hyp_to_json(const HypVerdict& h) {
  Json out;
  out["S_contains_ramified_and_infinite"] = h.s_contains_ramified_and_infinite;
  out["S_T_disjoint"] = h.s_t_disjoint;
  out["T_units_torsionfree"] = h.torsionfree;
  out["passed"] = h.passed();
  out["reasons"] = json_strings(h.reasons);
  return out;
}

bool t_units_torsionfree(std::uint64_t mu_order, const std::vector<std::uint64_t>& t_characteristics) {
  std::set<std::uint64_t> chars(t_characteristics.begin(), t_characteristics.end());
  if (chars.empty()) return mu_order == 1;
  if (chars.size() > 1) return true;
  return mu_order % *chars.begin() != 0;
}

bool t_units_torsionfree_at(std::uint64_t mu_order, const std::vector<std::uint64_t>& t_characteristics,
                            std::uint64_t p) {
  if (mu_order % p != 0) return true;
  return std::any_of(t_characteristics.begin(), t_characteristics.end(), [&](std::uint64_t l) { return l != p; });
}

HypVerdict check_hyp(const ExtensionDatum& d, const std::vector<std::string>& t) {
  HypVerdict h;
  h.s_contains_ramified_and_infinite = true;
  if (!std::any_of(d.places.begin(), d.places.end(), [](const PlaceDatum& v) { return v.archimedean && v.in_s; })) {
    h.s_contains_ramified_and_infinite = false;
    h.reasons.push_back("S does not contain the infinite place");
  }
  for (auto l : d.ramified_primes) {
    bool found = std::any_of(d.places.begin(), d.places.end(),
                             [&](const PlaceDatum& v) { return !v.archimedean && v.characteristic == l && v.in_s; });
    if (!found) {
      h.s_contains_ramified_and_infinite = false;
      h.reasons.push_back("the ramified prime " + std::to_string(l) + " is not in S");
    }
  }
  for (const auto& v : d.places)
    if (!v.archimedean && v.inertia.order() > 1 && !v.in_s) {
      h.s_contains_ramified_and_infinite = false;
      h.reasons.push_back("the place " + v.label + " has non-trivial inertia and is not in S");
    }
  h.s_t_disjoint = true;
  std::vector<std::uint64_t> chars;
  for (const auto& l : t) {
    const PlaceDatum& v = d.place(l);
    if (v.in_s) {
      h.s_t_disjoint = false;
      h.reasons.push_back("the place " + l + " lies in both S and T");
    }
    if (v.archimedean) {
      h.s_t_disjoint = false;
      h.reasons.push_back("T contains the archimedean place " + l);
    } else {
      chars.push_back(v.characteristic);
    }
  }
  h.torsionfree = t_units_torsionfree(d.mu_order, chars);
  if (!h.torsionfree) {
    if (t.empty())
      h.reasons.push_back("T is empty and L has " + std::to_string(d.mu_order) + " roots of unity");
    else
      h.reasons.push_back("every place in T has residue characteristic " + std::to_string(chars[0]) + ", which divides |mu_L| = " +
                          std::to_string(d.mu_order));
  }
  if (h.passed()) h.reasons.push_back("Hyp(S,T) holds");
  return h;
}

Json verdict_to_json(const CheckVerdict& v) {
  Json out;
  out["check"] = v.check;
  out["extension"] = v.extension;
  out["p"] = v.p;
  out["outcome"] = to_string(v.outcome);
  out["config"] = config_to_json(v.config);
  Json prem = Json::array();
  for (const auto& p : v.premises) prem.push_back(premise_to_json(p));
  out["premises"] = prem;
  Json as = Json::array();
  for (const auto& a : v.assumptions) as.push_back(assumption_to_json(a));
  out["assumptions"] = as;
  out["witnesses"] = v.witnesses;
  out["notes"] = json_strings(v.notes);
  return out;
}

std::string verdict_to_text(const CheckVerdict& v) {
  std::ostringstream os;
  os << v.check << " check for " << (v.extension.empty() ? "the extension" : v.extension) << " at p = " << v.p << ": "
     << to_string(v.outcome) << "\n";
  os << "  precision " << v.config.precision << ", unit bound " << v.config.unit_bound << "\n";
  for (const auto& p : v.premises)
    os << "  [" << (p.holds ? "ok" : "no") << "] " << p.name << (p.witness.empty() ? "" : ": " + p.witness) << "\n";
  for (const auto& a : v.assumptions)
    os << "  assumption " << a.name << (a.statement.empty() ? "" : ": " + a.statement) << "\n";
  for (const auto& n : v.notes) os << "  note: " << n << "\n";
  return os.str();
}

CenterElement omega_element(const TablePtr& t, std::uint64_t mu_order) {
  std::vector<Cyclotomic> comp;
  for (const auto& chi : t->irreducibles())
    comp.push_back(Cyclotomic(Rational(power(Integer(static_cast<unsigned long>(mu_order)), static_cast<unsigned long>(chi.degree())))));
  return CenterElement(t, std::move(comp));
}

CheckVerdict brumer_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg) {
  if (p == 2 || !is_prime(p)) throw DomainError("the Brumer check needs an odd prime p");
  if (!d.class_group) throw DomainError("the extension has no class group module");
  CheckVerdict v;
  v.check = "brumer";
  v.extension = d.name;
  v.p = p;
  v.config = cfg;
  const GModule cl = d.class_group->p_part(p);
  v.assumptions.push_back({"class-group", true, "cl_L = " + module_text(*d.class_group) + " with the supplied action"});
  v.witnesses["cl_p"] = module_text(cl);
  auto theta = stickelberger(d, std::vector<std::string>{});
  v.witnesses["theta_S"] = center_element_to_text(theta.theta, d.j);
  v.witnesses["stickelberger"] = stickelberger_to_json(theta);
  auto tsets = admissible_t_sets(d, v.premises);
  auto x = denominator_element(d.group, p);
  v.premises.push_back({"x in the denominator ideal", true, to_string(x.x[0]) + ": " + x.reason});
  v.witnesses["x"] = certificate_json(x);
  if (tsets.empty()) {
    v.outcome = Outcome::Undecided;
    v.notes.push_back("no admissible T set was supplied");
    return v;
  }
  const Cyclotomic xs(x.x[0]);
  auto items = parallel_map(tsets.size(), cfg.jobs, [&](std::size_t i) {
    ItemResult r;
    const auto& t = tsets[i];
    CenterElement y = (delta_element(d, t) * theta.theta).scaled(xs);
    r.witness["T"] = t;
    r.witness["element"] = center_element_to_text(y, d.j);
    RationalVector c = rational_coordinates(y);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!p_integral(c[k], p)) {
        r.outcome = Outcome::Fail;
        r.witness["reason"] = "x delta_T(0) theta_S is not p-integral";
        r.witness["class"] = d.group->element(d.group->classes()[k].representative).to_cycles();
        r.witness["coefficient"] = to_string(c[k]);
        return r;
      }
    if (auto s = cl.survivor(y.to_group_ring())) {
      r.outcome = Outcome::Fail;
      r.witness["reason"] = "x delta_T(0) theta_S does not kill cl_L(p)";
      r.witness["generator"] = s->first;
      Json img = Json::array();
      for (const auto& e : s->second) img.push_back(e.get_str());
      r.witness["image"] = img;
      return r;
    }
    r.witness["reason"] = "integral and kills cl_L(p)";
    return r;
  });
  Json per_t = Json::array();
  for (const auto& r : items) per_t.push_back(r.witness);
  v.witnesses["per_T"] = per_t;
  v.outcome = combine(items);
  v.notes.push_back("checked on the listed T sets; the ideal they generate may be smaller than the full Stickelberger ideal");
  if (x.verdict != DenominatorCertificate::Verdict::FullCenter)
    v.notes.push_back("the denominator ideal is proper; only x = |G| is checked");
  return v;
}

CheckVerdict dual_sbs_membership(const CenterElement& theta, const GModule& a, const CentralInvolution& j,
                                 std::uint64_t p, const RunConfig& cfg) {
  if (p == 2 || !is_prime(p)) throw DomainError("the dual strong Brumer-Stark check needs an odd prime p");
  CheckVerdict v;
  v.check = "dual-sbs";
  v.p = p;
  v.config = cfg;
  const GModule ap = a.p_part(p);
  if (!j_acts_as_minus_one(ap, j.element()))
    throw DomainError("j must act as -1 on the p-part of the module: supply a Z_p[G]_- module");
  auto order = CenterOrder::minus_part(j, p);
  CenterElement ts = sharp(theta);
  RationalVector x = order->coordinates(ts);
  v.witnesses["theta_sharp"] = center_element_to_json(ts);
  v.witnesses["module_p"] = module_text(ap);
  FittingInvariant f;
  if (ap.is_zero()) {
    f.order = order;
    f.kind = FittingKind::Quadratic;
    f.generators = {order->coordinates(CenterElement::one(order->table()))};
    f.lattice = order->center();
    v.witnesses["fitting"] = fitting_to_json(f, nullptr, cfg.precision);
  } else {
    const unsigned e = static_cast<unsigned>(valuation(ap.exponent(), p));
    const unsigned k = std::max(cfg.precision, e + 1);
    if (k > 64) {
      v.outcome = Outcome::Undecided;
      v.notes.push_back("the module exponent needs precision above 64");
      return v;
    }
    if (k != cfg.precision) v.notes.push_back("precision raised to " + std::to_string(k) + " to resolve the module exponent");
    ZpGMatrix h = ap.dual().presentation(ZModRing::get(p, k));
    f = fitting_of_presentation(order, h);
    v.witnesses["fitting"] = fitting_to_json(f, &h, k);
  }
  v.premises.push_back({"Fitting lattice is exact", f.is_exact(),
                        !f.is_exact() ? "non-square presentation over a non-commutative order: lower bound"
                        : f.order->is_commutative() && f.kind == FittingKind::LowerBound
                            ? "commutative order: the ideal of maximal minors is the Fitting ideal"
                            : to_string(f.kind)});
  ComparisonResult r = nr_member(x, f, cfg.unit_bound);
  v.witnesses["membership"] = comparison_to_json(r);
  switch (r.verdict) {
    case Relation::Holds: v.outcome = Outcome::Pass; break;
    case Relation::Fails:
      v.outcome = f.is_exact() ? Outcome::Fail : Outcome::Undecided;
      if (!f.is_exact()) v.notes.push_back("non-membership in a lower bound does not decide membership in Fitt^max");
      break;
    case Relation::Undecided:
      v.outcome = Outcome::Undecided;
      v.notes.push_back("no unit of word length <= " + std::to_string(cfg.unit_bound) + " was found");
      break;
  }
  return v;
}

CheckVerdict dual_sbs_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg) {
  if (!d.ray_class_group) throw DomainError("no presentation: the extension has no ray class group module");
  const auto& t = d.ray_class_t;
  HypVerdict h = check_hyp(d, t);
  std::vector<Premise> premises{{"Hyp(S,T) for T = " + set_text(t), h.passed(), join(h.reasons, "; ")}};
  std::vector<Assumption> assumptions{
      {"ray-class-group", true, "cl_L^T = " + module_text(*d.ray_class_group) + " with the supplied action, T = " + set_text(t)}};
  auto finish = [&](CheckVerdict v) {
    v.extension = d.name;
    v.premises.insert(v.premises.begin(), premises.begin(), premises.end());
    v.assumptions.insert(v.assumptions.begin(), assumptions.begin(), assumptions.end());
    return v;
  };
  if (!h.passed()) {
    CheckVerdict v;
    v.check = "dual-sbs";
    v.p = p;
    v.config = cfg;
    v.outcome = Outcome::Undecided;
    v.notes.push_back("Hyp(S,T) fails, so the statement does not apply");
    return finish(v);
  }
  const bool s_has_p = std::any_of(d.places.begin(), d.places.end(),
                                   [&](const PlaceDatum& v) { return v.in_s && !v.archimedean && v.characteristic == p; });
  StickelbergerResult theta;
  std::string note;
  if (s_has_p) {
    try {
      theta = p_adic_stickelberger(d, p, t);
    } catch (const DomainError& e) {
      CheckVerdict v;
      v.check = "dual-sbs";
      v.p = p;
      v.config = cfg;
      v.outcome = Outcome::Undecided;
      v.notes.push_back(e.what());
      return finish(v);
    }
    note = "theta: " + theta.provenance;
  } else {
    theta = stickelberger(d, t);
    note = "S does not contain the places above p: the complex theta_S^T is used (strong Brumer-Stark form)";
  }
  CheckVerdict v = dual_sbs_membership(theta.theta, *d.ray_class_group, d.involution(), p, cfg);
  v.notes.insert(v.notes.begin(), note);
  v.witnesses["theta"] = center_element_to_text(theta.theta, d.j);
  return finish(v);
}

CheckVerdict bs_antiunit_check(const ExtensionDatum& d, std::uint64_t p, const RunConfig& cfg) {
  if (p == 2 || !is_prime(p)) throw DomainError("the Brumer-Stark check needs an odd prime p");
  if (!d.class_group) throw DomainError("the extension has no class group module");
  CheckVerdict v;
  v.check = "bs";
  v.extension = d.name;
  v.p = p;
  v.config = cfg;
  v.assumptions.push_back({"class-group", true, "cl_L = " + module_text(*d.class_group) + " with the supplied action"});
  auto theta = stickelberger(d, std::vector<std::string>{});
  CenterElement w = omega_element(theta.theta.table(), d.mu_order);
  CenterElement wt = w * theta.theta;
  v.witnesses["omega_theta_S"] = center_element_to_text(wt, d.j);
  auto rep = integrality_report(wt);
  v.witnesses["integrality"] = integrality_to_json(rep);
  v.premises.push_back({"omega_L theta_S in I(G)", rep.passed(), rep.reason});
  if (rep.verdict == IntegralityReport::Verdict::NotIntegral) {
    v.outcome = Outcome::Fail;
    return v;
  }
  auto x = denominator_element(d.group, p);
  v.witnesses["x"] = certificate_json(x);
  CenterElement y = wt.scaled(Cyclotomic(x.x[0]));
  RationalVector c = rational_coordinates(y);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!p_integral(c[k], p)) {
      v.premises.push_back({"x omega_L theta_S is p-integral", false, "coefficient " + to_string(c[k])});
      v.outcome = rep.verdict == IntegralityReport::Verdict::Undecided ? Outcome::Undecided : Outcome::Fail;
      return v;
    }
  const GModule cl = d.class_group->p_part(p);
  if (auto s = cl.survivor(y.to_group_ring())) {
    v.premises.push_back({"a^(x omega_L theta_S) is principal for every a", false,
                          "the class of generator " + std::to_string(s->first) + " survives"});
    v.outcome = Outcome::Fail;
    return v;
  }
  v.premises.push_back({"a^(x omega_L theta_S) is principal for every a", true, "x omega_L theta_S kills cl_L(p)"});
  if (rep.verdict == IntegralityReport::Verdict::Undecided) v.notes.push_back(rep.reason);
  Json ideals = Json::array();
  bool all_asserted = !d.ideals.empty();
  for (const auto& id : d.ideals) {
    Json ij;
    ij["label"] = id.label;
    ij["class_killed"] = true;
    ij["anti_unit"] = id.anti_unit_asserted ? "asserted" : "not checkable";
    ideals.push_back(ij);
    if (id.anti_unit_asserted)
      v.assumptions.push_back({"anti-unit:" + id.label, true, "a generator alpha of " + id.label + "^(x omega_L theta_S) with alpha^(1+j) = 1"});
    else
      all_asserted = false;
  }
  v.witnesses["ideals"] = ideals;
  if (d.ideals.empty()) v.notes.push_back("no fractional ideals supplied: only class annihilation was checked");
  v.notes.push_back("the congruence condition on alpha relative to T is not checked");
  v.outcome = all_asserted && rep.passed() ? Outcome::Pass : Outcome::Undecided;
  if (!all_asserted) v.notes.push_back("the anti-unit clause is not checkable from class-group data; supply generator data");
  return v;
}

Json hybrid_to_json(const FiniteGroup& g, const HybridVerdict& h) {
  Json out;
  out["hybrid"] = h.hybrid;
  out["rule"] = h.rule;
  out["reason"] = h.reason;
  if (h.intermediate) out["H"] = subgroup_to_json(g, *h.intermediate);
  return out;
}

bool defect_zero_hybrid(const GroupPtr& g, const Subgroup& n, std::uint64_t p) {
  if (n.order() % p == 0) return false;
  for (const auto& chi : character_table(g)->irreducibles()) {
    bool n_in_kernel = std::all_of(n.elements.begin(), n.elements.end(),
                                   [&](std::size_t x) { return chi.at_element(x) == chi[0]; });
    if (!n_in_kernel && !defect_zero(chi, p)) return false;
  }
  return true;
}

HybridVerdict hybrid_check(const GroupPtr& g, const Subgroup& n, std::uint64_t p) {
  if (!is_normal(*g, n)) throw DomainError("N must be a normal subgroup");
  HybridVerdict v;
  if (n.order() % p == 0) {
    v.rule = "order-divisible";
    v.reason = "p divides |N|, so e_N is not p-integral";
    return v;
  }
  if (n.order() == 1) {
    v.hybrid = true;
    v.rule = "trivial-subgroup";
    v.reason = "e_N = 1 and Z_p[G](1 - e_N) = 0";
    return v;
  }
  auto fs = frobenius_structure(*g);
  if (fs && fs->kernel == n) {
    v.hybrid = true;
    v.rule = "frobenius-kernel";
    v.reason = "G is a Frobenius group with kernel N and p does not divide |N|";
    return v;
  }
  for (const auto& h : normal_subgroups(*g)) {
    if (h.order() == g->order() || !subset_of(n, h)) continue;
    if ((g->order() / h.order()) % p == 0) continue;
    auto eh = embed_subgroup(g, h);
    std::vector<std::size_t> inner;
    for (std::size_t i = 0; i < eh.to_parent.size(); ++i)
      if (n.contains(eh.to_parent[i])) inner.push_back(i);
    Subgroup nh = generate_subgroup(*eh.group, inner);
    HybridVerdict sub = hybrid_check(eh.group, nh, p);
    if (sub.hybrid && (sub.rule == "frobenius-kernel" || sub.rule == "base-change")) {
      v.hybrid = true;
      v.rule = "base-change";
      v.reason = "H = " + group_label(*eh.group) + " is normal of index prime to p and Z_p[H] is N-hybrid (" + sub.rule + ")";
      v.intermediate = h;
      return v;
    }
  }
  v.hybrid = defect_zero_hybrid(g, n, p);
  v.rule = "defect-zero";
  v.reason = v.hybrid ? "every character with N outside its kernel has p-defect zero"
                      : "some character with N outside its kernel has positive p-defect";
  return v;
}

std::string to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::CoprimeDegree: return "coprime-degree";
    case TheoremTag::FrobeniusAbelianComplement: return "frobenius-abelian-complement";
    case TheoremTag::HybridMonomial: return "hybrid-monomial";
    case TheoremTag::None: return "none";
  }
  return "";
}

Quotient plus_quotient(const ExtensionDatum& d) {
  return quotient(d.group, generate_subgroup(*d.group, std::vector<std::size_t>{d.j}));
}

Subgroup subgroup_from_json(const GroupPtr& g, const Json& generators, const std::string& where) {
  if (!generators.is_array()) throw InputError(where + ": expected a list of generators");
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& x = generators[i];
    std::string cycles;
    if (x.is_string()) {
      cycles = x.get<std::string>();
    } else if (x.is_array()) {
      for (const auto& c : x) {
        if (!c.is_string()) throw InputError(where + "/" + std::to_string(i) + ": expected cycle strings");
        cycles += c.get<std::string>();
      }
    } else {
      throw InputError(where + "/" + std::to_string(i) + ": expected a cycle string");
    }
    Perm p;
    try {
      p = Perm::from_cycles(g->degree(), cycles);
    } catch (const InputError& e) {
      throw InputError(where + "/" + std::to_string(i) + ": " + e.what());
    }
    auto idx = g->index_of(p);
    if (!idx) throw InputError(where + "/" + std::to_string(i) + ": " + p.to_cycles() + " is not in the group");
    gens.push_back(*idx);
  }
  return generate_subgroup(*g, gens);
}

Json subgroup_to_json(const FiniteGroup& g, const Subgroup& h) {
  Json out;
  out["order"] = h.order();
  Json gens = Json::array();
  for (auto x : small_generating_set(g, h)) gens.push_back(g.element(x).to_cycles());
  out["generators"] = gens;
  return out;
}

namespace {

// Aff(q) = F_q x| F_q^x and C_l x| C_q (q | l - 1) as Frobenius groups: U elementary abelian
// of order q with V cyclic of order q - 1, or |U| = l and |V| = q both prime.
std::vector<std::string> frobenius_examples(const FiniteGroup& g, const FrobeniusStructure& fs) {
  std::vector<std::string> out;
  const std::size_t u = fs.kernel.order(), v = fs.complement.order();
  std::uint64_t ell = 0;
  bool elementary = is_abelian(g, fs.kernel);
  for (auto x : fs.kernel.elements) {
    if (x == g.identity()) continue;
    const std::uint64_t o = g.element_order(x);
    if (ell == 0) ell = o;
    if (o != ell || !is_prime(o)) elementary = false;
  }
  const bool cyclic_v = std::any_of(fs.complement.elements.begin(), fs.complement.elements.end(),
                                    [&](std::size_t x) { return g.element_order(x) == v; });
  if (elementary && cyclic_v && v + 1 == u) out.push_back("Aff(" + std::to_string(u) + ")");
  if (is_prime(u) && is_prime(v) && (u - 1) % v == 0)
    out.push_back("C" + std::to_string(u) + " x| C" + std::to_string(v));
  return out;
}

}  // namespace

TheoremVerdict classify_theorem(const GroupPtr& g, std::uint64_t p, const std::optional<Subgroup>& n,
                                const std::vector<Assumption>& assumptions) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (n && !is_normal(*g, *n)) throw DomainError("N must be a normal subgroup of G+");
  TheoremVerdict v;
  v.p = p;
  const Assumption* base = find_assumption(assumptions, "base-field-Q");
  const bool base_q = base ? base->holds : true;
  v.assumptions.push_back(base ? *base : Assumption{"base-field-Q", true, "the base field is Q"});
  const Subgroup derived = commutator_subgroup(*g);
  auto abelian_fixed_field = [&](const Subgroup& h, const std::string& name) {
    Premise pr{name.substr(std::string("abelian:").size()) + " is abelian over Q", false, ""};
    if (base_q) {
      pr.holds = subset_of(derived, h);
      pr.witness = pr.holds ? "the fixing subgroup contains the commutator subgroup"
                            : "the fixing subgroup does not contain the commutator subgroup";
      return pr;
    }
    if (const Assumption* a = find_assumption(assumptions, name)) {
      pr.holds = a->holds;
      pr.witness = "assumed";
      v.assumptions.push_back(*a);
    } else {
      pr.witness = "not derivable over a general base field: supply the assumption '" + name + "'";
    }
    return pr;
  };
  const Premise odd{"p is odd", p % 2 == 1, "p = " + std::to_string(p)};
  const MonomialResult mono = is_monomial(g);
  Premise monomial{"G+ is monomial", mono.monomial, ""};
  if (mono.monomial) {
    monomial.witness = "every irreducible character is induced from a linear character";
  } else {
    for (std::size_t i = 0; i < mono.witnesses.size(); ++i)
      if (!mono.witnesses[i]) {
        monomial.witness = "chi" + std::to_string(i) + " is not induced from a linear character";
        break;
      }
  }
  auto all_hold = [](const std::vector<Premise>& ps) {
    return std::all_of(ps.begin(), ps.end(), [](const Premise& x) { return x.holds; });
  };
  auto first_failure = [](const std::vector<Premise>& ps) {
    for (const auto& x : ps)
      if (!x.holds) return x.name;
    return std::string();
  };
  std::vector<Premise> tried;
  auto record = [&](TheoremTag tag, const std::vector<Premise>& ps) {
    v.notes.push_back(to_string(tag) + ": fails at '" + first_failure(ps) + "'");
    for (auto x : ps) {
      x.name = to_string(tag) + ": " + x.name;
      tried.push_back(std::move(x));
    }
  };

  std::vector<Premise> coprime{odd, monomial,
                               {"p does not divide |G+|", g->order() % p != 0, "|G+| = " + std::to_string(g->order())}};
  if (all_hold(coprime)) {
    v.tag = TheoremTag::CoprimeDegree;
    v.statement = "p odd, G+ monomial and p prime to [L+:Q]";
    v.premises = coprime;
    return v;
  }
  record(TheoremTag::CoprimeDegree, coprime);

  std::vector<Premise> frob{odd};
  auto fs = frobenius_structure(*g);
  frob.push_back({"G+ = U x| V is a Frobenius group", fs.has_value(),
                  fs ? "kernel U of order " + std::to_string(fs->kernel.order()) + ", complement V of order " +
                           std::to_string(fs->complement.order())
                     : "no Frobenius complement"});
  if (fs) {
    frob.push_back({"the complement V is abelian", is_abelian(*g, fs->complement), subgroup_label(g, fs->complement)});
    frob.push_back(abelian_fixed_field(fs->kernel, "abelian:(L+)^U"));
    const std::size_t u = fs->kernel.order();
    std::size_t pu = u;
    while (pu % p == 0) pu /= p;
    const bool coprime_u = u % p != 0, p_group = pu == 1;
    frob.push_back({"p does not divide |U| or U is a p-group", coprime_u || p_group,
                    "|U| = " + std::to_string(u) + (coprime_u ? ", prime to p" : p_group ? ", a p-group" : "")});
  }
  if (all_hold(frob)) {
    v.tag = TheoremTag::FrobeniusAbelianComplement;
    v.statement = "G+ Frobenius with abelian complement V and kernel U, (L+)^U/Q abelian, p odd, p prime to |U| or U a p-group";
    v.premises = frob;
    v.n = fs->kernel;
    v.examples = frobenius_examples(*g, *fs);
    return v;
  }
  record(TheoremTag::FrobeniusAbelianComplement, frob);

  std::vector<Subgroup> candidates;
  if (n) {
    candidates.push_back(*n);
  } else {
    candidates = normal_subgroups(*g);
    std::reverse(candidates.begin(), candidates.end());
  }
  const Subgroup sylow = sylow_subgroup(*g, p);
  std::vector<Premise> best;
  std::optional<Subgroup> best_n;
  for (const auto& cand : candidates) {
    std::vector<Premise> hm{odd, monomial};
    HybridVerdict hv = hybrid_check(g, cand, p);
    hm.push_back({"Z_p[G+] is N-hybrid for N = " + subgroup_label(g, cand) + " of order " + std::to_string(cand.order()),
                  hv.hybrid, hv.rule + ": " + hv.reason});
    std::vector<std::size_t> np = cand.elements;
    np.insert(np.end(), sylow.elements.begin(), sylow.elements.end());
    hm.push_back(abelian_fixed_field(generate_subgroup(*g, np), "abelian:F^P"));
    if (all_hold(hm)) {
      v.tag = TheoremTag::HybridMonomial;
      v.statement = "Z_p[G+] N-hybrid, G+ monomial, F^P/Q abelian for F = (L+)^N and P a Sylow p-subgroup of G+/N";
      v.premises = hm;
      v.n = cand;
      return v;
    }
    if (best.empty()) {
      best = hm;
      best_n = cand;
    }
  }
  record(TheoremTag::HybridMonomial, best);
  v.premises = tried;
  v.n = n;
  v.statement = "no unconditional result applies";
  return v;
}

Json theorem_to_json(const FiniteGroup& g, const TheoremVerdict& v) {
  Json out;
  out["group"] = group_label(g);
  out["order"] = g.order();
  out["p"] = v.p;
  out["result"] = to_string(v.tag);
  out["applies"] = v.applies();
  out["statement"] = v.statement;
  if (v.n) out["N"] = subgroup_to_json(g, *v.n);
  if (!v.examples.empty()) out["examples"] = json_strings(v.examples);
  out["scope"] = "every S containing the places above p, the ramified places and the infinite place";
  Json prem = Json::array();
  for (const auto& p : v.premises) prem.push_back(premise_to_json(p));
  out["premises"] = prem;
  Json as = Json::array();
  for (const auto& a : v.assumptions) as.push_back(assumption_to_json(a));
  out["assumptions"] = as;
  out["notes"] = json_strings(v.notes);
  return out;
}

std::string theorem_to_text(const FiniteGroup& g, const TheoremVerdict& v) {
  std::ostringstream os;
  os << group_label(g) << " at p = " << v.p << ": " << to_string(v.tag) << "\n";
  os << "  " << v.statement << "\n";
  if (v.n) os << "  N of order " << v.n->order() << "\n";
  for (const auto& e : v.examples) os << "  recognized: " << e << ", a Frobenius group with kernel an l-group\n";
  for (const auto& p : v.premises)
    os << "  [" << (p.holds ? "ok" : "no") << "] " << p.name << (p.witness.empty() ? "" : ": " + p.witness) << "\n";
  for (const auto& n : v.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace brumer
