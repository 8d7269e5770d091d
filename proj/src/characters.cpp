#include "brumer/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace brumer {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

using ModMatrix = std::vector<std::vector<u64>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(ModMatrix& m, u64 p) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    u64 inv = invmod(m[r][c], p);
    for (auto& x : m[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      u64 f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = (m[i][k] + p - mulmod(f, m[r][k], p)) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of {x : m x = 0}.
ModMatrix nullspace(ModMatrix m, std::size_t cols, u64 p) {
  auto pivots = rref(m, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  ModMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - m[i][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Splits the invariant subspace with basis rows `space` into eigenspaces of a.
// Returns false when a is not diagonalisable on it over F_p.
bool split_space(const ModMatrix& space, const ModMatrix& a, u64 p, std::vector<ModMatrix>& out) {
  const std::size_t d = space.size(), r = a.size();
  ModMatrix basis = space;
  auto pivots = rref(basis, p);
  if (basis.size() != d) return false;
  // b[k][i] = coordinate k of a * basis_i
  ModMatrix b(d, std::vector<u64>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t row = pivots[k];
      u64 s = 0;
      for (std::size_t t = 0; t < r; ++t)
        if (a[row][t] && basis[i][t]) s = (s + mulmod(a[row][t], basis[i][t], p)) % p;
      b[k][i] = s;
    }
  }
  std::size_t found = 0;
  for (u64 lambda = 0; lambda < p && found < d; ++lambda) {
    ModMatrix shifted = b;
    for (std::size_t k = 0; k < d; ++k) shifted[k][k] = (shifted[k][k] + p - lambda) % p;
    ModMatrix ker = nullspace(shifted, d, p);
    if (ker.empty()) continue;
    ModMatrix sub;
    for (const auto& c : ker) {
      std::vector<u64> v(r, 0);
      for (std::size_t k = 0; k < d; ++k)
        if (c[k])
          for (std::size_t t = 0; t < r; ++t) v[t] = (v[t] + mulmod(c[k], basis[k][t], p)) % p;
      sub.push_back(std::move(v));
    }
    found += sub.size();
    out.push_back(std::move(sub));
  }
  return found == d;
}

int compare_values(const Cyclotomic& a, const Cyclotomic& b, u64 conductor) {
  const auto ca = a.embed(conductor).coefficients();
  const auto cb = b.embed(conductor).coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] < cb[i]) return -1;
    if (cb[i] < ca[i]) return 1;
  }
  return 0;
}

Cyclotomic normalise(const Cyclotomic& x, u64 e) {
  if (e % x.conductor() == 0) return x.embed(e);
  Cyclotomic y = x.reduce_conductor();
  if (e % y.conductor() != 0) throw DomainError("class function value " + x.to_string() + " outside Q(zeta_" +
                                                std::to_string(e) + ")");
  return y.embed(e);
}

// One attempt of the modular construction at prime p; empty result on failure.
std::vector<std::vector<Cyclotomic>> dixon_at_prime(const FiniteGroup& g, u64 p) {
  const std::size_t r = g.num_classes();
  const u64 n = g.order();
  const u64 e = g.exponent();
  std::vector<ModMatrix> spaces;
  {
    ModMatrix id(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(id);
  }
  for (std::size_t j = 1; j < r; ++j) {
    bool all_split = std::all_of(spaces.begin(), spaces.end(), [](const ModMatrix& s) { return s.size() == 1; });
    if (all_split) break;
    ModMatrix a(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) a[i][k] = static_cast<u64>(g.class_structure_constant(j, i, k)) % p;
    std::vector<ModMatrix> next;
    for (const auto& s : spaces) {
      if (s.size() == 1) {
        next.push_back(s);
        continue;
      }
      if (!split_space(s, a, p, next)) return {};
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) return {};

  const u64 z = powmod(primitive_root(p), (p - 1) / e, p);
  const u64 root_bound = static_cast<u64>(std::sqrt(static_cast<double>(n))) + 1;
  std::vector<std::vector<Cyclotomic>> table;
  for (const auto& s : spaces) {
    std::vector<u64> w = s[0];
    if (w[0] == 0) return {};
    u64 inv0 = invmod(w[0], p);
    for (auto& x : w) x = mulmod(x, inv0, p);
    // chi(1)^2 = |G| / sum_k w_k w_{k*} / |C_k|
    u64 denom = 0;
    for (std::size_t k = 0; k < r; ++k) {
      u64 term = mulmod(w[k], w[g.inverse_class(k)], p);
      denom = (denom + mulmod(term, invmod(g.classes()[k].size() % p, p), p)) % p;
    }
    if (denom == 0) return {};
    u64 d2 = mulmod(n % p, invmod(denom, p), p);
    u64 d = 0;
    for (u64 c = 1; c <= root_bound; ++c)
      if (mulmod(c, c, p) == d2 && n % c == 0) {
        d = c;
        break;
      }
    if (d == 0) return {};
    std::vector<u64> theta(r);
    for (std::size_t k = 0; k < r; ++k)
      theta[k] = mulmod(mulmod(w[k], d, p), invmod(g.classes()[k].size() % p, p), p);
    std::vector<Cyclotomic> values(r);
    for (std::size_t k = 0; k < r; ++k) {
      const u64 o = g.element_order(g.classes()[k].representative);
      const u64 step = e / o;
      const u64 inv_o = invmod(o % p, p);
      Cyclotomic value = Cyclotomic::zero_in(e);
      u64 total = 0;
      for (u64 a = 0; a < o; ++a) {
        u64 m = 0;
        for (u64 l = 0; l < o; ++l) {
          u64 chi_l = theta[g.power_class(k, static_cast<long>(l))];
          u64 root = powmod(z, ((e - (step * a * l) % e) % e), p);
          m = (m + mulmod(chi_l, root, p)) % p;
        }
        m = mulmod(m, inv_o, p);
        if (m > d) return {};
        total += m;
        if (m) value += Cyclotomic(static_cast<long>(m)) * Cyclotomic::zeta(e, static_cast<std::int64_t>(step * a));
      }
      if (total != d) return {};
      values[k] = value;
    }
    table.push_back(std::move(values));
  }
  return table;
}

}  // namespace

Character::Character(GroupPtr group, std::vector<Cyclotomic> values) : group_(std::move(group)) {
  if (!group_) throw DomainError("character without a group");
  if (values.size() != group_->num_classes()) throw DomainError("character needs one value per conjugacy class");
  const u64 e = group_->exponent();
  values_.reserve(values.size());
  for (const auto& v : values) values_.push_back(normalise(v, e));
}

long Character::degree() const {
  const Cyclotomic& v = values_.at(0);
  if (!v.is_rational()) throw DomainError("character degree is not rational");
  Rational d = v.to_rational();
  if (d.get_den() != 1 || d < 0) throw DomainError("character degree is not a non-negative integer");
  return d.get_num().get_si();
}

Character Character::operator+(const Character& o) const {
  if (group_ != o.group_) throw DomainError("adding characters of different groups");
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
  return Character(group_, std::move(v));
}

Character Character::operator-(const Character& o) const { return *this + o.scaled(Cyclotomic(-1)); }

Character Character::operator*(const Character& o) const {
  if (group_ != o.group_) throw DomainError("multiplying characters of different groups");
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * o.values_[i];
  return Character(group_, std::move(v));
}

Character Character::scaled(const Cyclotomic& c) const {
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * c;
  return Character(group_, std::move(v));
}

Subgroup Character::kernel() const {
  std::vector<std::size_t> gens;
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (values_[k] == values_[0])
      for (auto x : group_->classes()[k].elements) gens.push_back(x);
  return generate_subgroup(*group_, gens);
}

std::string Character::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < values_.size(); ++i) out << (i ? ", " : "") << values_[i].to_string();
  out << "]";
  return out.str();
}

Cyclotomic inner_product(const Character& a, const Character& b) {
  if (a.group() != b.group()) throw DomainError("inner product of characters of different groups");
  const auto& g = *a.group();
  Cyclotomic s = Cyclotomic::zero_in(g.exponent());
  for (std::size_t k = 0; k < g.num_classes(); ++k) {
    if (a[k].is_zero() || b[k].is_zero()) continue;
    s += Cyclotomic(static_cast<long>(g.classes()[k].size())) * a[k] * b[k].conj();
  }
  return s / Cyclotomic(static_cast<long>(g.order()));
}

CharacterTable::CharacterTable(GroupPtr group, std::vector<Character> irreducibles, std::uint64_t modular_prime)
    : group_(std::move(group)), irr_(std::move(irreducibles)), modular_prime_(modular_prime) {}

std::size_t CharacterTable::trivial_index() const {
  for (std::size_t i = 0; i < irr_.size(); ++i) {
    bool trivial = true;
    for (const auto& v : irr_[i].values())
      if (!v.is_one()) trivial = false;
    if (trivial) return i;
  }
  throw DomainError("character table has no trivial character");
}

std::size_t CharacterTable::index_of(const Character& chi) const {
  for (std::size_t i = 0; i < irr_.size(); ++i)
    if (irr_[i].values() == chi.values()) return i;
  throw DomainError("character " + chi.to_string() + " is not irreducible");
}

std::size_t CharacterTable::contragredient_index(std::size_t i) const { return index_of(contragredient(irr_[i])); }

std::vector<Cyclotomic> CharacterTable::decompose(const Character& f) const {
  std::vector<Cyclotomic> out;
  for (const auto& chi : irr_) out.push_back(inner_product(f, chi));
  return out;
}

std::string verify_table(const CharacterTable& t) {
  const auto& g = *t.group();
  const std::size_t r = g.num_classes();
  if (t.size() != r) return "number of irreducibles differs from number of classes";
  long sum_sq = 0;
  for (const auto& chi : t.irreducibles()) {
    long d;
    try {
      d = chi.degree();
    } catch (const DomainError& e) {
      return e.what();
    }
    if (d <= 0 || g.order() % static_cast<std::size_t>(d) != 0) return "degree does not divide |G|";
    sum_sq += d * d;
  }
  if (sum_sq != static_cast<long>(g.order())) return "sum of squared degrees differs from |G|";
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      Cyclotomic ip = inner_product(t[a], t[b]);
      if (ip != Cyclotomic(a == b ? 1 : 0)) return "row orthogonality fails for characters " + std::to_string(a) +
                                                    ", " + std::to_string(b);
    }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = k; l < r; ++l) {
      Cyclotomic s = Cyclotomic::zero_in(g.exponent());
      for (const auto& chi : t.irreducibles()) s += chi[k] * chi[l].conj();
      long want = k == l ? static_cast<long>(g.order() / g.classes()[k].size()) : 0;
      if (s != Cyclotomic(want)) return "column orthogonality fails for classes " + std::to_string(k) + ", " +
                                        std::to_string(l);
    }
  return {};
}

TablePtr character_table(const GroupPtr& gp) {
  if (auto cached = gp->cached_table()) return cached;
  const auto& g = *gp;
  const u64 n = g.order();
  const u64 e = g.exponent();
  std::vector<std::vector<Cyclotomic>> values;
  u64 p = e + 1;
  u64 used = 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    while (p <= 2 * n || !is_prime(p)) p += e;
    values = dixon_at_prime(g, p);
    if (!values.empty()) {
      used = p;
      break;
    }
    p += e;
  }
  if (values.empty()) throw DomainError("modular character table construction did not split");
  std::vector<Character> irr;
  for (auto& v : values) irr.emplace_back(gp, std::move(v));
  std::sort(irr.begin(), irr.end(), [e](const Character& a, const Character& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t k = 0; k < a.values().size(); ++k) {
      int c = compare_values(a[k], b[k], e);
      if (c != 0) return c < 0;
    }
    return false;
  });
  auto table = std::make_shared<const CharacterTable>(gp, std::move(irr), used);
  std::string problem = verify_table(*table);
  if (!problem.empty()) throw DomainError("character table verification failed: " + problem);
  gp->set_cached_table(table);
  return gp->cached_table();
}

Character trivial_character(const GroupPtr& g) {
  return Character(g, std::vector<Cyclotomic>(g->num_classes(), Cyclotomic(1)));
}

Character regular_character(const GroupPtr& g) {
  std::vector<Cyclotomic> v(g->num_classes(), Cyclotomic(0));
  v[0] = Cyclotomic(static_cast<long>(g->order()));
  return Character(g, std::move(v));
}

Character contragredient(const Character& chi) {
  const auto& g = *chi.group();
  std::vector<Cyclotomic> v(g.num_classes());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = chi[g.inverse_class(k)];
  return Character(chi.group(), std::move(v));
}

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity(const Character& chi, const CentralInvolution& j) {
  if (chi.group() != j.group()) throw DomainError("parity: involution belongs to a different group");
  const Cyclotomic& v = chi.at_element(j.element());
  const Cyclotomic d = chi[0];
  if (v == d) return Parity::Even;
  if (v == -d) return Parity::Odd;
  throw DomainError("chi(j) is neither chi(1) nor -chi(1); character is not irreducible");
}

Character induce(const Character& lambda, const EmbeddedSubgroup& u, const GroupPtr& g) {
  if (lambda.group() != u.group) throw DomainError("induce: character is not a character of the subgroup");
  const std::size_t r = g->num_classes();
  std::vector<Cyclotomic> sums(r, Cyclotomic(0));
  for (std::size_t x = 0; x < u.group->order(); ++x) {
    std::size_t c = g->class_of(u.to_parent[x]);
    sums[c] += lambda.at_element(x);
  }
  std::vector<Cyclotomic> v(r);
  for (std::size_t k = 0; k < r; ++k) {
    Rational factor = fraction(static_cast<long>(g->order()), static_cast<long>(u.group->order() * g->classes()[k].size()));
    v[k] = sums[k] * Cyclotomic(factor);
  }
  return Character(g, std::move(v));
}

Character restrict(const Character& chi, const EmbeddedSubgroup& u) {
  std::vector<Cyclotomic> v(u.group->num_classes());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = chi.at_element(u.to_parent[u.group->classes()[k].representative]);
  return Character(u.group, std::move(v));
}

Character inflate(const Character& phi, const Quotient& q, const GroupPtr& g) {
  if (phi.group() != q.group) throw DomainError("inflate: character is not a character of the quotient");
  std::vector<Cyclotomic> v(g->num_classes());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = phi.at_element(q.projection[g->classes()[k].representative]);
  return Character(g, std::move(v));
}

namespace {

std::optional<InductionWitness> search_witness(const Character& chi, const std::vector<Subgroup>& candidates) {
  const GroupPtr& g = chi.group();
  for (const auto& h : candidates) {
    EmbeddedSubgroup u = embed_subgroup(g, h);
    Character res = restrict(chi, u);
    auto table = character_table(u.group);
    for (const auto& lambda : table->irreducibles()) {
      if (lambda.degree() != 1) continue;
      if (inner_product(res, lambda) == Cyclotomic(1)) return InductionWitness{u, lambda};
    }
  }
  return std::nullopt;
}

std::uint64_t value_conductor(const Character& chi) {
  std::uint64_t m = 1;
  for (const auto& v : chi.values()) m = std::lcm(m, v.minimal_conductor());
  return m;
}

// The witness whose lambda has the smallest field of values; earlier candidates win ties.
std::optional<InductionWitness> smallest_field_witness(const Character& chi, const std::vector<Subgroup>& candidates) {
  const GroupPtr& g = chi.group();
  std::optional<InductionWitness> best;
  std::uint64_t best_m = 0;
  for (const auto& h : candidates) {
    EmbeddedSubgroup u = embed_subgroup(g, h);
    Character res = restrict(chi, u);
    auto table = character_table(u.group);
    for (const auto& lambda : table->irreducibles()) {
      if (lambda.degree() != 1) continue;
      const std::uint64_t m = value_conductor(lambda);
      if (best && m >= best_m) continue;
      if (inner_product(res, lambda) == Cyclotomic(1)) {
        best = InductionWitness{u, lambda};
        best_m = m;
        if (m <= 2) return best;
      }
    }
  }
  return best;
}

}  // namespace

std::optional<InductionWitness> monomial_witness(const Character& chi) {
  const GroupPtr& g = chi.group();
  const std::size_t d = static_cast<std::size_t>(chi.degree());
  std::vector<Subgroup> candidates;
  for (auto& h : subgroup_class_representatives(*g, g->order() / d))
    if (h.order() * d == g->order()) candidates.push_back(std::move(h));
  return search_witness(chi, candidates);
}

std::optional<InductionWitness> multiplicity_one_pair(const Character& chi) {
  const GroupPtr& g = chi.group();
  if (chi.degree() == 1) {
    EmbeddedSubgroup u = embed_subgroup(g, whole_group(*g));
    Character lambda = restrict(chi, u);
    return InductionWitness{std::move(u), std::move(lambda)};
  }
  auto all = subgroup_class_representatives(*g);
  std::vector<Subgroup> cyclic, rest;
  for (auto& h : all) {
    bool is_cyclic = false;
    for (auto x : h.elements)
      if (g->element_order(x) == h.order()) is_cyclic = true;
    (is_cyclic ? cyclic : rest).push_back(std::move(h));
  }
  // larger subgroups first
  std::reverse(cyclic.begin(), cyclic.end());
  std::reverse(rest.begin(), rest.end());
  if (auto w = smallest_field_witness(chi, cyclic)) return w;
  return smallest_field_witness(chi, rest);
}

MonomialResult is_monomial(const GroupPtr& g) {
  MonomialResult result;
  auto table = character_table(g);
  for (const auto& chi : table->irreducibles()) {
    auto w = chi.degree() == 1 ? multiplicity_one_pair(chi) : monomial_witness(chi);
    if (!w) result.monomial = false;
    result.witnesses.push_back(std::move(w));
  }
  return result;
}

bool defect_zero(const Character& chi, std::uint64_t p) {
  return valuation_u64(static_cast<u64>(chi.degree()), p) == valuation_u64(chi.group()->order(), p);
}

Json character_table_to_json(const CharacterTable& t) {
  const auto& g = *t.group();
  const u64 e = g.exponent();
  Json out;
  out["group"] = group_to_json(g);
  out["conductor"] = e;
  Json classes = Json::array();
  for (const auto& c : g.classes()) {
    Json cj;
    cj["representative"] = g.element(c.representative).to_cycles();
    cj["size"] = c.size();
    cj["order"] = g.element_order(c.representative);
    classes.push_back(cj);
  }
  out["classes"] = classes;
  Json chars = Json::array();
  for (const auto& chi : t.irreducibles()) {
    Json row = Json::array();
    for (const auto& v : chi.values()) {
      Json coeffs = Json::array();
      const Cyclotomic embedded = v.embed(e);
      for (const auto& c : embedded.coefficients()) {
        if (c.get_den() != 1) throw DomainError("character value with non-integral coefficient");
        if (!c.get_num().fits_slong_p()) throw DomainError("character value coefficient too large");
        coeffs.push_back(c.get_num().get_si());
      }
      row.push_back(coeffs);
    }
    chars.push_back(row);
  }
  out["characters"] = chars;
  return out;
}

TablePtr character_table_from_json(const Json& j, const GroupPtr& g) {
  if (!j.contains("conductor") || !j.contains("classes") || !j.contains("characters"))
    throw InputError("character table JSON needs 'conductor', 'classes' and 'characters'");
  const u64 e = j["conductor"].get<u64>();
  if (e != g->exponent()) throw InputError("character table conductor does not match the group exponent");
  const auto* field = CyclotomicField::get(e);
  const auto& classes = j["classes"];
  if (classes.size() != g->num_classes()) throw InputError("character table has the wrong number of classes");
  std::vector<std::size_t> class_map;
  for (const auto& c : classes) {
    Perm rep = Perm::from_cycles(g->degree(), c.at("representative").get<std::string>());
    class_map.push_back(g->class_of(g->index_of_checked(rep)));
  }
  std::vector<Character> irr;
  for (const auto& row : j["characters"]) {
    if (row.size() != classes.size()) throw InputError("character row has the wrong length");
    std::vector<Cyclotomic> v(g->num_classes());
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::vector<Rational> coeffs;
      for (const auto& c : row[k]) coeffs.emplace_back(c.get<long>());
      if (coeffs.size() != field->degree()) throw InputError("character value has the wrong number of coefficients");
      v[class_map[k]] = Cyclotomic(field, std::move(coeffs));
    }
    irr.emplace_back(g, std::move(v));
  }
  auto table = std::make_shared<const CharacterTable>(g, std::move(irr), 0);
  std::string problem = verify_table(*table);
  if (!problem.empty()) throw InputError("imported character table is invalid: " + problem);
  return table;
}

}  // namespace brumer
