#include "brumer/group_ring.hpp"

#include <cstdio>

namespace brumer {

QGElement lift(const ZpGElement& x) {
  std::vector<Cyclotomic> c;
  c.reserve(x.coefficients().size());
  for (const auto& v : x.coefficients()) c.emplace_back(Rational(v.value()));
  return QGElement(x.group(), Cyclotomic(0), std::move(c));
}

QGMatrix lift(const ZpGMatrix& m) {
  QGMatrix r(m.rows(), m.cols(), QGElement(m.group(), Cyclotomic(0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = lift(m(i, j));
  return r;
}

ZpGElement reduce(const QGElement& x, const ZModRing* ring) {
  std::vector<ZMod> c;
  c.reserve(x.coefficients().size());
  for (const auto& v : x.coefficients()) {
    if (!v.is_rational()) throw DomainError("cannot reduce an irrational coefficient modulo p^k");
    Rational q = v.to_rational();
    if (!is_p_integral(q, ring->prime()))
      throw DomainError("coefficient " + q.get_str() + " is not " + std::to_string(ring->prime()) + "-integral");
    c.emplace_back(ring, reduce_mod(q, ring->modulus()));
  }
  return ZpGElement(x.group(), ZMod(ring, 0), std::move(c));
}

ZpGMatrix reduce(const QGMatrix& m, const ZModRing* ring) {
  ZpGMatrix r(m.rows(), m.cols(), ZpGElement(m.group(), ZMod(ring, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce(m(i, j), ring);
  return r;
}

QGElement group_element(const GroupPtr& g, std::size_t index) {
  return QGElement::basis(g, Cyclotomic(0), Cyclotomic(1), index);
}

QGElement qg_scalar(const GroupPtr& g, const Cyclotomic& c) { return QGElement::scalar(g, Cyclotomic(0), c); }

ZpGElement zp_element(const GroupPtr& g, const ZModRing* ring, std::size_t index) {
  return ZpGElement::basis(g, ZMod(ring, 0), ZMod(ring, 1), index);
}

ZpGElement zp_scalar(const GroupPtr& g, const ZModRing* ring, long c) {
  return ZpGElement::scalar(g, ZMod(ring, 0), ZMod(ring, c));
}

QGElement twist(const QGElement& x, const Character& eps) {
  if (eps.group() != x.group()) throw DomainError("twist: character of a different group");
  if (eps.degree() != 1) throw DomainError("twist needs a linear character");
  QGElement r(x);
  for (std::size_t g = 0; g < r.coefficients().size(); ++g) r[g] = x[g] * eps.at_element(g);
  return r;
}

ZpGElement twist(const ZpGElement& x, const Character& eps) {
  if (eps.group() != x.group()) throw DomainError("twist: character of a different group");
  if (eps.degree() != 1) throw DomainError("twist needs a linear character");
  ZpGElement r(x);
  for (std::size_t g = 0; g < r.coefficients().size(); ++g) {
    const Cyclotomic& v = eps.at_element(g);
    if (v == Cyclotomic(1)) continue;
    if (v == Cyclotomic(-1)) {
      r[g] = -x[g];
      continue;
    }
    throw DomainError("twist over Z/p^k needs a character with values +-1");
  }
  return r;
}

QGElement central_idempotent(const Character& chi) {
  const GroupPtr& g = chi.group();
  Cyclotomic factor = Cyclotomic(fraction(chi.degree(), static_cast<long>(g->order())));
  QGElement e(g, Cyclotomic(0));
  for (std::size_t x = 0; x < g->order(); ++x) e[x] = chi.at_element(g->inv(x)) * factor;
  return e;
}

std::vector<QGElement> central_idempotents(const GroupPtr& g) {
  std::vector<QGElement> out;
  for (const auto& chi : character_table(g)->irreducibles()) out.push_back(central_idempotent(chi));
  return out;
}

QGElement trace_idempotent(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(*g, n)) throw DomainError("trace idempotent requires a normal subgroup");
  QGElement e(g, Cyclotomic(0));
  Cyclotomic w(Rational(1, static_cast<long>(n.order())));
  for (auto x : n.elements) e[x] = w;
  return e;
}

QGElement subgroup_idempotent(const GroupPtr& g, const InductionWitness& w) {
  const auto& u = *w.subgroup.group;
  QGElement e(g, Cyclotomic(0));
  Cyclotomic scale(Rational(1, static_cast<long>(u.order())));
  for (std::size_t x = 0; x < u.order(); ++x) e[w.subgroup.to_parent[x]] = w.lambda.at_element(u.inv(x)) * scale;
  return e;
}

Json cyclotomic_to_json(const Cyclotomic& c) {
  if (c.is_rational()) return Json(to_string(c.to_rational()));
  Cyclotomic r = c.reduce_conductor();
  Json out;
  out["conductor"] = r.conductor();
  Json coeffs = Json::array();
  for (const auto& q : r.coefficients()) coeffs.push_back(to_string(q));
  out["coefficients"] = coeffs;
  return out;
}

Cyclotomic cyclotomic_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Cyclotomic(j.get<long>());
  if (j.is_string()) return Cyclotomic(parse_rational(j.get<std::string>()));
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coefficients") || !j["coefficients"].is_array())
    throw InputError(where + ": expected a rational string or {conductor, coefficients}");
  const auto n = j["conductor"].get<std::uint64_t>();
  if (n == 0) throw InputError(where + "/conductor: must be positive");
  const CyclotomicField* f = CyclotomicField::get(n);
  if (j["coefficients"].size() != f->degree())
    throw InputError(where + "/coefficients: need " + std::to_string(f->degree()) + " entries");
  std::vector<Rational> c;
  for (const auto& x : j["coefficients"]) {
    if (!x.is_string() && !x.is_number_integer()) throw InputError(where + "/coefficients: entries must be rationals");
    c.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
  }
  return Cyclotomic(f, std::move(c));
}

Json terms_to_json(const QGElement& x) {
  Json out = Json::array();
  const auto& g = *x.group();
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (x[i].is_zero()) continue;
    Json t;
    t["g"] = g.element(i).to_cycles();
    t["c"] = cyclotomic_to_json(x[i]);
    out.push_back(t);
  }
  return out;
}

Json terms_to_json(const ZpGElement& x) {
  Json out = Json::array();
  const auto& g = *x.group();
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (x[i].is_zero()) continue;
    Json t;
    t["g"] = g.element(i).to_cycles();
    t["c"] = x[i].value().get_str();
    out.push_back(t);
  }
  return out;
}

Json element_to_json(const QGElement& x) {
  Json out;
  out["ring"]["group"] = group_to_json(*x.group());
  out["ring"]["coeff"] = "cyclotomic(" + std::to_string(x.group()->exponent()) + ")";
  out["terms"] = terms_to_json(x);
  return out;
}

Json element_to_json(const ZpGElement& x) {
  Json out;
  const ZModRing* ring = x.zero().ring();
  out["ring"]["group"] = group_to_json(*x.group());
  out["ring"]["coeff"] = "zmod(" + std::to_string(ring->prime()) + "," + std::to_string(ring->exponent()) + ")";
  out["terms"] = terms_to_json(x);
  return out;
}

ParsedElement element_from_json(const Json& j, GroupPtr group) {
  if (!j.is_object() || !j.contains("ring") || !j["ring"].is_object()) throw InputError("/ring: missing ring descriptor");
  const Json& ring = j["ring"];
  if (!group) {
    if (!ring.contains("group")) throw InputError("/ring/group: missing");
    group = group_from_json(ring["group"]).group;
  }
  if (!ring.contains("coeff") || !ring["coeff"].is_string()) throw InputError("/ring/coeff: missing");
  const std::string coeff = ring["coeff"].get<std::string>();
  if (!j.contains("terms") || !j["terms"].is_array()) throw InputError("/terms: expected a list");
  const Json& terms = j["terms"];
  auto element_index = [&](const Json& t, std::size_t i) {
    const std::string where = "/terms/" + std::to_string(i);
    if (!t.is_object() || !t.contains("g") || !t["g"].is_string()) throw InputError(where + "/g: expected a cycle string");
    Perm p = Perm::from_cycles(group->degree(), t["g"].get<std::string>());
    auto idx = group->index_of(p);
    if (!idx) throw InputError(where + "/g: not an element of the group");
    if (!t.contains("c")) throw InputError(where + "/c: missing coefficient");
    return *idx;
  };
  ParsedElement out;
  unsigned long p = 0, k = 0;
  if (std::sscanf(coeff.c_str(), "zmod(%lu,%lu)", &p, &k) == 2) {
    const ZModRing* r = ZModRing::get(p, static_cast<unsigned>(k));
    ZpGElement x(group, ZMod(r, 0));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::size_t g = element_index(terms[i], i);
      const Json& c = terms[i]["c"];
      Integer v;
      if (c.is_number_integer()) v = Integer(c.get<long>());
      else if (!c.is_string() || v.set_str(c.get<std::string>(), 10) != 0)
        throw InputError("/terms/" + std::to_string(i) + "/c: expected an integer");
      x[g] += ZMod(r, v);
    }
    out.truncated = std::move(x);
  } else if (coeff.rfind("cyclotomic(", 0) == 0) {
    QGElement x(group, Cyclotomic(0));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::size_t g = element_index(terms[i], i);
      x[g] += cyclotomic_from_json(terms[i]["c"], "/terms/" + std::to_string(i) + "/c");
    }
    out.exact = std::move(x);
  } else {
    throw InputError("/ring/coeff: expected cyclotomic(n) or zmod(p,k)");
  }
  return out;
}

MinusQuotient::MinusQuotient(CentralInvolution j, const ZModRing* ring) : j_(std::move(j)), ring_(ring) {
  if (ring->prime() == 2) throw DomainError("the minus quotient needs an odd prime");
  const auto& g = *j_.group();
  if (j_.element() == 0) throw DomainError("the minus quotient needs j != 1");
  std::vector<bool> covered(g.order(), false);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    transversal_.push_back(x);
    covered[x] = true;
    covered[g.mul(x, j_.element())] = true;
  }
}

ZpGElement MinusQuotient::project(const ZpGElement& x) const {
  const auto& g = *group();
  ZMod half = ZMod(ring_, 2).inverse();
  ZpGElement r(group(), ZMod(ring_, 0));
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (x[a].is_zero()) continue;
    ZMod c = x[a] * half;
    r[a] += c;
    std::size_t aj = g.mul(a, j_.element());
    r[aj] -= c;
  }
  return r;
}

std::vector<ZMod> MinusQuotient::coordinates(const ZpGElement& x) const {
  // project(x) = sum_t c_t t (1-j)/2 with c_t = 2 * coefficient of t in project(x)
  ZpGElement p = project(x);
  std::vector<ZMod> out;
  for (auto t : transversal_) out.push_back(p[t] * ZMod(ring_, 2));
  return out;
}

bool MinusQuotient::is_unit(const ZpGElement& x) const {
  const auto& g = *group();
  const std::uint64_t p = ring_->prime();
  const std::size_t m = transversal_.size();
  std::vector<std::size_t> position(g.order());
  std::vector<long> sign(g.order());
  for (std::size_t i = 0; i < m; ++i) {
    position[transversal_[i]] = i;
    sign[transversal_[i]] = 1;
    std::size_t tj = g.mul(transversal_[i], j_.element());
    position[tj] = i;
    sign[tj] = -1;
  }
  // column i: x * t_i e_- in the basis t e_-, reduced mod p
  std::vector<std::vector<long>> mat(m, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < g.order(); ++a) {
      if (x[a].is_zero()) continue;
      long c = static_cast<long>(mpz_fdiv_ui(x[a].value().get_mpz_t(), p));
      std::size_t y = g.mul(a, transversal_[i]);
      long& cell = mat[position[y]][i];
      cell = ((cell + sign[y] * c) % static_cast<long>(p) + static_cast<long>(p)) % static_cast<long>(p);
    }
  // rank over F_p
  const long pl = static_cast<long>(p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && mat[piv][col] == 0) ++piv;
    if (piv == m) return false;
    std::swap(mat[piv], mat[rank]);
    long inv = mod_inverse(Integer(mat[rank][col]), Integer(pl)).get_si();
    for (std::size_t r = rank + 1; r < m; ++r) {
      if (mat[r][col] == 0) continue;
      long f = mat[r][col] * inv % pl;
      for (std::size_t k = col; k < m; ++k) mat[r][k] = ((mat[r][k] - f * mat[rank][k]) % pl + pl) % pl;
    }
    ++rank;
  }
  return rank == m;
}

}  // namespace brumer
