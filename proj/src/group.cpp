#include "brumer/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace brumer {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) throw InputError("image list is not a permutation");
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  return Perm(std::move(im));
}

Perm Perm::from_cycles(std::size_t degree, const std::string& cycles) {
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[i]))) ++i;
  };
  skip_space();
  while (i < cycles.size()) {
    if (cycles[i] != '(') throw InputError("bad cycle notation '" + cycles + "': expected '('");
    ++i;
    std::vector<std::uint32_t> cyc;
    while (true) {
      skip_space();
      if (i >= cycles.size()) throw InputError("bad cycle notation '" + cycles + "': unterminated cycle");
      if (cycles[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < cycles.size() && std::isdigit(static_cast<unsigned char>(cycles[i]))) ++i;
      if (start == i) throw InputError("bad cycle notation '" + cycles + "': expected a point");
      unsigned long pt = std::stoul(cycles.substr(start, i - start));
      if (pt < 1 || pt > degree) {
        throw InputError("bad cycle notation '" + cycles + "': point " + std::to_string(pt) + " outside 1.." +
                         std::to_string(degree));
      }
      if (used[pt - 1]) throw InputError("bad cycle notation '" + cycles + "': point repeated");
      used[pt - 1] = true;
      cyc.push_back(static_cast<std::uint32_t>(pt - 1));
      skip_space();
      if (i < cycles.size() && cycles[i] == ',') ++i;
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) im[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip_space();
  }
  return Perm(std::move(im));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.degree() != degree()) throw DomainError("composing permutations of different degree");
  std::vector<std::uint32_t> im(degree());
  for (std::size_t x = 0; x < degree(); ++x) im[x] = images_[rhs.images_[x]];
  Perm r;
  r.images_ = std::move(im);
  return r;
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> im(degree());
  for (std::size_t x = 0; x < degree(); ++x) im[images_[x]] = static_cast<std::uint32_t>(x);
  Perm r;
  r.images_ = std::move(im);
  return r;
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::string Perm::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out << "(";
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) out << ",";
      out << (y + 1);
      first = false;
      y = images_[y];
    }
    out << ")";
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

FiniteGroup::FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::size_t order_bound)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree == 0) throw InputError("group degree must be positive");
  for (const auto& g : generators_) {
    if (g.degree() != degree) throw InputError("generator degree does not match group degree");
  }
  // closure
  std::unordered_set<Perm, PermHash> seen;
  std::deque<Perm> queue;
  Perm id = Perm::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const auto& s : generators_) {
      Perm y = s * x;
      if (seen.insert(y).second) {
        if (seen.size() > order_bound) {
          throw DomainError("group order exceeds the configured bound " + std::to_string(order_bound));
        }
        queue.push_back(std::move(y));
      }
    }
  }
  elements_.assign(seen.begin(), seen.end());
  std::sort(elements_.begin(), elements_.end());
  const std::size_t n = elements_.size();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], i);
  for (const auto& s : generators_) generator_indices_.push_back(index_.at(s));

  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t c = index_.at(elements_[a] * elements_[b]);
      table_[a * n + b] = static_cast<std::uint32_t>(c);
      if (c == 0) inverse_[a] = b;
    }
  }
  orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t k = 1;
    std::size_t x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    orders_[a] = k;
    exponent_ = lcm_u64(exponent_, k);
  }
  for (std::size_t a = 0; a < n && abelian_; ++a)
    for (std::size_t s : generator_indices_)
      if (mul(a, s) != mul(s, a)) {
        abelian_ = false;
        break;
      }

  // conjugacy classes
  class_of_.assign(n, n);
  std::vector<ConjugacyClass> classes;
  for (std::size_t g = 0; g < n; ++g) {
    if (class_of_[g] != n) continue;
    std::set<std::size_t> members;
    for (std::size_t x = 0; x < n; ++x) members.insert(conjugate(g, x));
    ConjugacyClass c;
    c.elements.assign(members.begin(), members.end());
    c.representative = c.elements.front();
    for (auto m : c.elements) class_of_[m] = classes.size();
    classes.push_back(std::move(c));
  }
  std::vector<std::size_t> order_idx(classes.size());
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
    auto oa = orders_[classes[a].representative], ob = orders_[classes[b].representative];
    if (oa != ob) return oa < ob;
    return classes[a].representative < classes[b].representative;
  });
  for (std::size_t i = 0; i < order_idx.size(); ++i) {
    classes_.push_back(std::move(classes[order_idx[i]]));
    for (auto m : classes_.back().elements) class_of_[m] = i;
  }

  const std::size_t r = classes_.size();
  structure_.assign(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t gk = classes_[k].representative;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t y = mul(inv(x), gk);
      structure_[(class_of_[x] * r + class_of_[y]) * r + k] += 1;
    }
  }
}

std::optional<std::size_t> FiniteGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::index_of_checked(const Perm& p) const {
  auto i = index_of(p);
  if (!i) throw InputError("permutation " + p.to_cycles() + " is not an element of the group");
  return *i;
}

std::size_t FiniteGroup::pow(std::size_t g, long e) const {
  long o = static_cast<long>(orders_[g]);
  e %= o;
  if (e < 0) e += o;
  std::size_t result = 0;
  std::size_t base = g;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

long FiniteGroup::class_structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t r = classes_.size();
  return structure_[(i * r + j) * r + k];
}

std::shared_ptr<const CharacterTable> FiniteGroup::cached_table() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return table_cache_;
}

void FiniteGroup::set_cached_table(std::shared_ptr<const CharacterTable> table) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!table_cache_) table_cache_ = std::move(table);
}

std::shared_ptr<const void> FiniteGroup::cached_representations() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return reps_cache_;
}

void FiniteGroup::set_cached_representations(std::shared_ptr<const void> reps) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!reps_cache_) reps_cache_ = std::move(reps);
}

GroupPtr make_group(std::size_t degree, std::vector<Perm> generators, std::size_t order_bound) {
  return std::make_shared<const FiniteGroup>(degree, std::move(generators), order_bound);
}

GroupPtr make_group(std::size_t degree, const std::vector<std::string>& generator_cycles, std::size_t order_bound) {
  std::vector<Perm> gens;
  for (const auto& c : generator_cycles) gens.push_back(Perm::from_cycles(degree, c));
  return make_group(degree, std::move(gens), order_bound);
}

bool Subgroup::contains(std::size_t g) const { return std::binary_search(elements.begin(), elements.end(), g); }

CentralInvolution::CentralInvolution(GroupPtr group, std::size_t element) : group_(std::move(group)), element_(element) {
  const auto& g = *group_;
  if (g.mul(element, element) != 0) throw DomainError("designated involution j does not satisfy j^2 = 1");
  for (auto s : g.generator_indices())
    if (g.mul(s, element) != g.mul(element, s)) throw DomainError("designated involution j is not central");
}

std::vector<ClassSummary> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ClassSummary> out;
  for (const auto& c : g.classes()) out.push_back({c.representative, c.size(), g.element_order(c.representative)});
  return out;
}

namespace {

Subgroup finish(const FiniteGroup& g, std::vector<bool> member, std::vector<std::size_t> gens) {
  Subgroup s;
  for (std::size_t i = 0; i < member.size(); ++i)
    if (member[i]) s.elements.push_back(i);
  s.generators = std::move(gens);
  s.index = g.order() / s.elements.size();
  s.is_normal = is_normal(g, s);
  return s;
}

std::vector<bool> closure(const FiniteGroup& g, std::vector<bool> member, std::span<const std::size_t> gens) {
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < member.size(); ++i)
    if (member[i]) queue.push_back(i);
  if (!member[0]) {
    member[0] = true;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (auto s : gens) {
      std::size_t y = g.mul(x, s);
      if (!member[y]) {
        member[y] = true;
        queue.push_back(y);
      }
    }
  }
  return member;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Subgroup generate_subgroup(const FiniteGroup& g, std::span<const std::size_t> generators) {
  std::vector<bool> member(g.order(), false);
  member[0] = true;
  auto m = closure(g, std::move(member), generators);
  return finish(g, std::move(m), std::vector<std::size_t>(generators.begin(), generators.end()));
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return generate_subgroup(g, {}); }

Subgroup whole_group(const FiniteGroup& g) { return generate_subgroup(g, g.generator_indices()); }

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (auto s : g.generator_indices())
    for (auto x : h.elements)
      if (!h.contains(g.conjugate(x, s))) return false;
  return true;
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const std::size_t> elements) {
  std::set<std::size_t> gens;
  for (auto e : elements)
    for (auto m : g.classes()[g.class_of(e)].elements) gens.insert(m);
  std::vector<std::size_t> gv(gens.begin(), gens.end());
  return generate_subgroup(g, gv);
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<std::size_t> comms;
  const auto& gens = g.generator_indices();
  for (auto a : gens)
    for (auto b : gens) {
      std::size_t c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

Subgroup center(const FiniteGroup& g) {
  std::vector<std::size_t> z;
  for (const auto& c : g.classes())
    if (c.size() == 1) z.push_back(c.representative);
  return generate_subgroup(g, z);
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<bool> member(g.order(), false);
  std::vector<std::size_t> gens;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (auto y : h.elements)
      if (!h.contains(g.conjugate(y, x))) {
        ok = false;
        break;
      }
    if (ok) {
      member[x] = true;
      gens.push_back(x);
    }
  }
  return finish(g, std::move(member), std::move(gens));
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> found;
  std::unordered_set<std::vector<std::size_t>, VecHash> seen;
  auto add = [&](Subgroup s) {
    if (seen.insert(s.elements).second) found.push_back(std::move(s));
  };
  add(trivial_subgroup(g));
  for (const auto& c : g.classes()) {
    std::size_t rep = c.representative;
    add(normal_closure(g, std::span<const std::size_t>(&rep, 1)));
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<std::size_t> gens = found[i].elements;
      gens.insert(gens.end(), found[j].elements.begin(), found[j].elements.end());
      Subgroup joined = generate_subgroup(g, gens);
      if (seen.count(joined.elements)) continue;
      joined.generators.clear();
      joined.generators.insert(joined.generators.end(), found[i].generators.begin(), found[i].generators.end());
      joined.generators.insert(joined.generators.end(), found[j].generators.begin(), found[j].generators.end());
      add(std::move(joined));
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return found;
}

std::vector<Subgroup> subgroup_class_representatives(const FiniteGroup& g, std::size_t order_divisor) {
  const std::size_t limit = order_divisor == 0 ? g.order() : order_divisor;
  std::vector<Subgroup> reps;
  std::unordered_set<std::vector<std::size_t>, VecHash> seen;
  auto register_class = [&](const Subgroup& s) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::vector<std::size_t> conj;
      conj.reserve(s.elements.size());
      for (auto y : s.elements) conj.push_back(g.conjugate(y, x));
      std::sort(conj.begin(), conj.end());
      seen.insert(std::move(conj));
    }
  };
  Subgroup triv = trivial_subgroup(g);
  register_class(triv);
  reps.push_back(triv);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t x = 1; x < g.order(); ++x) {
      if (limit % g.element_order(x) != 0) continue;
      if (reps[i].contains(x)) continue;
      std::vector<std::size_t> gens = reps[i].generators;
      gens.push_back(x);
      std::vector<bool> member(g.order(), false);
      for (auto e : reps[i].elements) member[e] = true;
      std::size_t xs[1] = {x};
      // closure must also multiply by existing generators
      auto m = closure(g, std::move(member), gens);
      (void)xs;
      std::vector<std::size_t> elems;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (m[k]) elems.push_back(k);
      if (limit % elems.size() != 0) continue;
      if (seen.count(elems)) continue;
      Subgroup s = finish(g, std::move(m), std::move(gens));
      register_class(s);
      reps.push_back(std::move(s));
    }
  }
  std::stable_sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return reps;
}

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("sylow_subgroup requires a prime, got " + std::to_string(p));
  std::size_t target = 1;
  std::size_t n = g.order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  Subgroup current = trivial_subgroup(g);
  while (current.order() < target) {
    Subgroup norm = normalizer(g, current);
    bool grown = false;
    for (auto x : norm.elements) {
      if (current.contains(x)) continue;
      if (!current.contains(g.pow(x, static_cast<long>(p)))) continue;
      std::vector<std::size_t> gens = current.generators;
      gens.push_back(x);
      current = generate_subgroup(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw DomainError("Sylow search stalled; group data inconsistent");
  }
  return current;
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  for (auto a : h.generators)
    for (auto b : h.generators)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  if (h.generators.empty()) {
    for (auto a : h.elements)
      for (auto b : h.elements)
        if (g.mul(a, b) != g.mul(b, a)) return false;
  }
  return true;
}

bool is_nilpotent(const FiniteGroup& g, const Subgroup& h) {
  // a finite group is nilpotent iff each Sylow subgroup is normal, i.e. unique
  for (auto q : prime_factors(h.order())) {
    std::size_t qpart = 1;
    std::size_t n = h.order();
    while (n % q == 0) {
      n /= q;
      qpart *= q;
    }
    std::size_t count = 0;
    for (auto x : h.elements) {
      std::size_t o = g.element_order(x);
      while (o % q == 0) o /= q;
      if (o == 1) ++count;
    }
    if (count != qpart) return false;
  }
  return true;
}

EmbeddedSubgroup embed_subgroup(const GroupPtr& g, const Subgroup& h) {
  std::vector<Perm> gens;
  for (auto s : h.generators) gens.push_back(g->element(s));
  if (gens.empty() && h.order() > 1) {
    for (auto s : h.elements) gens.push_back(g->element(s));
  }
  EmbeddedSubgroup out;
  out.group = make_group(g->degree(), std::move(gens), g->order());
  if (out.group->order() != h.order()) throw DomainError("subgroup generators do not generate the subgroup");
  out.to_parent.resize(out.group->order());
  for (std::size_t i = 0; i < out.group->order(); ++i) out.to_parent[i] = g->index_of_checked(out.group->element(i));
  out.handle = h;
  return out;
}

std::optional<FrobeniusStructure> frobenius_structure(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (const auto& kernel : normal_subgroups(g)) {
    const std::size_t k = kernel.order();
    if (k == 1 || k == n) continue;
    const std::size_t m = n / k;
    if (gcd_u64(k, m) != 1) continue;
    for (auto& h : subgroup_class_representatives(g, m)) {
      if (h.order() != m) continue;
      bool frobenius = true;
      for (std::size_t x = 0; x < n && frobenius; ++x) {
        if (h.contains(x)) continue;
        for (auto y : h.elements) {
          if (y == 0) continue;
          if (h.contains(g.conjugate(y, x))) {
            frobenius = false;
            break;
          }
        }
      }
      if (frobenius) return FrobeniusStructure{kernel, std::move(h)};
    }
  }
  return std::nullopt;
}

Quotient quotient(const GroupPtr& gp, const Subgroup& n) {
  const auto& g = *gp;
  if (!is_normal(g, n)) throw DomainError("quotient requires a normal subgroup");
  const std::size_t order = g.order();
  std::vector<std::size_t> coset_of(order, order);
  std::vector<std::size_t> coset_rep;
  for (std::size_t x = 0; x < order; ++x) {
    if (coset_of[x] != order) continue;
    std::size_t id = coset_rep.size();
    coset_rep.push_back(x);
    for (auto y : n.elements) coset_of[g.mul(x, y)] = id;
  }
  const std::size_t m = coset_rep.size();
  auto action = [&](std::size_t x) {
    std::vector<std::uint32_t> im(m);
    for (std::size_t c = 0; c < m; ++c) im[c] = static_cast<std::uint32_t>(coset_of[g.mul(x, coset_rep[c])]);
    return Perm(std::move(im));
  };
  std::vector<Perm> gens;
  for (auto s : g.generator_indices()) gens.push_back(action(s));
  Quotient q;
  q.group = make_group(m, std::move(gens), order);
  q.projection.resize(order);
  for (std::size_t x = 0; x < order; ++x) q.projection[x] = q.group->index_of_checked(action(x));
  return q;
}

std::string fingerprint(const FiniteGroup& g) {
  std::ostringstream out;
  std::vector<std::pair<std::size_t, std::size_t>> shape;
  for (const auto& c : g.classes()) shape.emplace_back(g.element_order(c.representative), c.size());
  std::sort(shape.begin(), shape.end());
  out << "order=" << g.order() << ";classes=";
  bool first = true;
  for (const auto& [o, size] : shape) {
    if (!first) out << ",";
    first = false;
    out << size << "x" << o;
  }
  return out.str();
}

std::string guess_name(const FiniteGroup& g) {
  static const std::map<std::string, std::string> known = {
      {"order=1;classes=1x1", "C1"},
      {"order=2;classes=1x1,1x2", "C2"},
      {"order=3;classes=1x1,1x3,1x3", "C3"},
      {"order=4;classes=1x1,1x2,1x4,1x4", "C4"},
      {"order=4;classes=1x1,1x2,1x2,1x2", "V4"},
      {"order=6;classes=1x1,3x2,2x3", "S3"},
      {"order=6;classes=1x1,1x2,1x3,1x3,1x6,1x6", "C6"},
      {"order=8;classes=1x1,1x2,2x2,2x2,2x4", "D4"},
      {"order=8;classes=1x1,1x2,2x4,2x4,2x4", "Q8"},
      {"order=12;classes=1x1,3x2,4x3,4x3", "A4"},
      {"order=12;classes=1x1,1x2,3x2,3x2,2x3,2x6", "C2xS3"},
      {"order=20;classes=1x1,5x2,5x4,5x4,4x5", "Aff(5)"},
      {"order=21;classes=1x1,7x3,7x3,3x7,3x7", "C7:C3"},
      {"order=24;classes=1x1,3x2,6x2,8x3,6x4", "S4"},
      {"order=24;classes=1x1,1x2,4x3,4x3,6x4,4x6,4x6", "SL(2,3)"},
  };
  auto it = known.find(fingerprint(g));
  return it == known.end() ? std::string() : it->second;
}

}  // namespace brumer
