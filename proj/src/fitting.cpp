#include "brumer/fitting.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>

namespace brumer {

namespace {

std::string key_of(const RationalVector& v) {
  std::string s;
  for (const auto& x : v) {
    s += x.get_str();
    s += ',';
  }
  return s;
}

RationalVector zero_vector(std::size_t n) { return RationalVector(n, Rational(0)); }

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

bool all_p_integral(const QGElement& x, std::uint64_t p) {
  for (const auto& c : x.coefficients())
    if (!c.is_p_integral(p)) return false;
  return true;
}

}  // namespace

CenterOrder::CenterOrder(GroupPtr g, std::uint64_t p, std::vector<bool> support)
    : group_(std::move(g)), table_(character_table(group_)), p_(p), support_(std::move(support)) {
  if (!is_prime(p_)) throw DomainError("p must be prime");
  const std::size_t r = table_->size();
  const std::size_t n = group_->order();
  if (support_.size() != r) throw DomainError("support needs one flag per irreducible character");
  e_ = QGElement(group_, Cyclotomic(0));
  for (std::size_t chi = 0; chi < r; ++chi)
    if (support_[chi]) e_ = e_ + central_idempotent(table_->irreducibles()[chi]);
  for (const auto& c : e_.coefficients())
    if (!c.is_rational()) throw DomainError("the chosen characters are not closed under Galois conjugation");
  e_integral_ = all_p_integral(e_, p_);

  const int m = valuation_u64(n, p_);
  const Rational scale = power(Rational(static_cast<unsigned long>(p_)), -m);
  const auto& classes = group_->classes();

  if (is_full()) {
    center_ = Lattice::standard(p_, r);
  } else {
    std::vector<RationalVector> ge, box;
    for (std::size_t x = 0; x < n; ++x) {
      RationalVector v = zero_vector(n);
      for (std::size_t y = 0; y < n; ++y) v[group_->mul(x, y)] = e_[y].to_rational();
      ge.push_back(std::move(v));
    }
    for (const auto& c : classes) {
      RationalVector v = zero_vector(n);
      for (auto y : c.elements) v[y] = scale;
      box.push_back(std::move(v));
    }
    Lattice inter = Lattice::span(p_, n, ge).intersect(Lattice::span(p_, n, box));
    std::vector<RationalVector> rows;
    for (const auto& v : inter.basis()) {
      RationalVector c(r);
      for (std::size_t k = 0; k < r; ++k) c[k] = v[classes[k].representative];
      rows.push_back(std::move(c));
    }
    center_ = Lattice::span(p_, r, std::move(rows));
  }

  // zeta(M) e = {x in zeta(Q[G]) e : every component integral}, found as the preimage of the
  // integral lattice under x -> (components), starting from |G|_p^-1 zeta(Z_p[G]) e.
  const std::uint64_t cond = table_->conductor();
  const std::size_t phi = CyclotomicField::get(cond)->degree();
  std::vector<std::size_t> supp;
  for (std::size_t chi = 0; chi < r; ++chi)
    if (support_[chi]) supp.push_back(chi);
  const std::size_t big = supp.size() * phi;
  std::vector<RationalVector> rows;
  for (std::size_t k = 0; k < r; ++k) {
    RationalVector unit = zero_vector(r);
    unit[k] = scale;
    RationalVector v = project(unit);
    CenterElement z = element(v);
    RationalVector row;
    for (auto chi : supp) {
      const Cyclotomic c = z[chi].embed(cond);
      for (const auto& q : c.coefficients()) row.push_back(q);
    }
    row.insert(row.end(), v.begin(), v.end());
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < big; ++j) {
    RationalVector row = zero_vector(big + r);
    row[j] = 1;
    rows.push_back(std::move(row));
  }
  Lattice graph = Lattice::span(p_, big + r, std::move(rows));
  std::vector<RationalVector> pre;
  for (std::size_t i = 0; i < graph.rank(); ++i)
    if (graph.pivots()[i] >= big) pre.emplace_back(graph.basis()[i].begin() + static_cast<long>(big), graph.basis()[i].end());
  maximal_ = Lattice::span(p_, r, std::move(pre));
}

std::shared_ptr<const CenterOrder> CenterOrder::cut(const GroupPtr& g, std::uint64_t p, std::vector<bool> support) {
  static std::mutex mutex;
  static std::map<std::tuple<const FiniteGroup*, std::uint64_t, std::vector<bool>>, std::pair<GroupPtr, CenterOrderPtr>> cache;
  auto key = std::make_tuple(g.get(), p, support);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.second;
  }
  auto order = std::make_shared<const CenterOrder>(g, p, std::move(support));
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::make_pair(g, order));
  return it->second.second;
}

std::shared_ptr<const CenterOrder> CenterOrder::group_ring(const GroupPtr& g, std::uint64_t p) {
  return cut(g, p, std::vector<bool>(character_table(g)->size(), true));
}

std::shared_ptr<const CenterOrder> CenterOrder::minus_part(const CentralInvolution& j, std::uint64_t p) {
  auto t = character_table(j.group());
  std::vector<bool> odd;
  for (const auto& chi : t->irreducibles()) odd.push_back(parity(chi, j) == Parity::Odd);
  return cut(j.group(), p, std::move(odd));
}

bool CenterOrder::is_full() const {
  return std::all_of(support_.begin(), support_.end(), [](bool b) { return b; });
}

bool CenterOrder::is_commutative() const {
  for (std::size_t chi = 0; chi < support_.size(); ++chi)
    if (support_[chi] && table_->irreducibles()[chi].degree() != 1) return false;
  return true;
}

RationalVector CenterOrder::coordinates(const CenterElement& x) const {
  if (x.table() != table_) throw DomainError("central element of a different group");
  auto c = x.cut(support_).class_sum_coordinates();
  RationalVector out;
  for (const auto& v : c) {
    if (!v.is_rational()) throw DomainError("central element does not have rational class-sum coordinates");
    out.push_back(v.to_rational());
  }
  return out;
}

CenterElement CenterOrder::element(const RationalVector& c) const {
  std::vector<Cyclotomic> coords(c.begin(), c.end());
  return CenterElement::from_class_sums(table_, coords);
}

RationalVector CenterOrder::multiply(const RationalVector& a, const RationalVector& b) const {
  const std::size_t r = dimension();
  RationalVector out = zero_vector(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      Rational ab = a[i] * b[j];
      for (std::size_t k = 0; k < r; ++k) {
        long s = group_->class_structure_constant(i, j, k);
        if (s != 0) out[k] += ab * s;
      }
    }
  }
  return out;
}

Lattice CenterOrder::module_span(const std::vector<RationalVector>& generators) const {
  std::vector<RationalVector> rows;
  for (const auto& z : center_.basis())
    for (const auto& g : generators) rows.push_back(multiply(z, g));
  return Lattice::span(p_, dimension(), std::move(rows));
}

Lattice CenterOrder::product(const Lattice& a, const Lattice& b) const {
  std::vector<RationalVector> rows;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) rows.push_back(multiply(x, y));
  return Lattice::span(p_, dimension(), std::move(rows));
}

Lattice CenterOrder::times(const RationalVector& x, const Lattice& l) const {
  std::vector<RationalVector> rows;
  for (const auto& y : l.basis()) rows.push_back(multiply(x, y));
  return Lattice::span(p_, dimension(), std::move(rows));
}

RationalVector CenterOrder::project(const RationalVector& full) const {
  if (is_full()) return full;
  return coordinates(element(full));
}

std::string CenterOrder::description() const {
  std::string name = guess_name(*group_);
  if (name.empty()) name = "G";
  std::string s = "Z_" + std::to_string(p_) + "[" + name + "]";
  if (is_full()) return s;
  s += "e{";
  bool first = true;
  for (std::size_t chi = 0; chi < support_.size(); ++chi)
    if (support_[chi]) {
      if (!first) s += ",";
      s += std::to_string(chi);
      first = false;
    }
  return s + "}";
}

std::string to_string(FittingKind k) {
  switch (k) {
    case FittingKind::Zero: return "zero";
    case FittingKind::Quadratic: return "quadratic";
    case FittingKind::LowerBound: return "lower-bound-for-max";
    case FittingKind::Relative: return "relative";
    case FittingKind::Cut: return "cut";
    case FittingKind::Product: return "product";
  }
  return "?";
}

bool FittingInvariant::is_exact() const {
  switch (kind) {
    case FittingKind::Zero:
    case FittingKind::Quadratic:
    case FittingKind::Relative:
      return true;
    default:
      return order->is_commutative();
  }
}

Lattice FittingInvariant::at_precision(unsigned k) const {
  Rational pk(power(Integer(static_cast<unsigned long>(order->prime())), k));
  return lattice + order->maximal_center().scaled(pk);
}

FittingInvariant fitting_of_presentation(const CenterOrderPtr& order, const ZpGMatrix& h) {
  if (h.group() != order->group()) throw DomainError("presentation over a different group");
  FittingInvariant f;
  f.order = order;
  f.lattice = Lattice(order->prime(), order->dimension());
  const std::size_t a = h.rows(), b = h.cols();
  if (a < b) {
    f.kind = FittingKind::Zero;
    return f;
  }
  f.kind = a == b ? FittingKind::Quadratic : FittingKind::LowerBound;
  QGMatrix lifted = lift(h);
  // Submatrices are taken with every row order; a transposition multiplies nr by (-1)^chi(1).
  std::optional<CenterElement> sign;
  if (a > b && b >= 2) sign = reduced_norm(qg_scalar(h.group(), Cyclotomic(-1)));
  for (const auto& rows : combinations(a, b)) {
    CenterElement n = reduced_norm(lifted.rows_subset(rows));
    f.generators.push_back(order->coordinates(n));
    if (sign) f.generators.push_back(order->coordinates(n * *sign));
  }
  f.lattice = order->module_span(f.generators);
  return f;
}

FittingInvariant fitting_of_two_term_complex(const CenterOrderPtr& order, const ZpGMatrix& h_a, const ZpGMatrix& h_b) {
  if (!h_a.is_square() || !h_b.is_square()) throw DomainError("two-term complexes need quadratic presentations");
  CenterElement na = reduced_norm(h_a).cut(order->support());
  CenterElement nb = reduced_norm(h_b).cut(order->support());
  std::vector<Cyclotomic> inv;
  for (std::size_t chi = 0; chi < na.components().size(); ++chi) {
    if (!order->support()[chi]) {
      inv.push_back(Cyclotomic(0));
      continue;
    }
    if (na[chi].is_zero()) throw DomainError("the source presentation has a singular reduced norm");
    inv.push_back(na[chi].inverse());
  }
  CenterElement q = nb * CenterElement(na.table(), std::move(inv));
  FittingInvariant f;
  f.order = order;
  f.kind = FittingKind::Relative;
  f.generators.push_back(order->coordinates(q));
  f.lattice = order->module_span(f.generators);
  return f;
}

FittingInvariant fitting_product(const FittingInvariant& a, const FittingInvariant& b) {
  if (a.order != b.order) throw DomainError("Fitting invariants over different orders");
  FittingInvariant f;
  f.order = a.order;
  f.kind = FittingKind::Product;
  for (const auto& x : a.generators)
    for (const auto& y : b.generators) f.generators.push_back(a.order->multiply(x, y));
  f.lattice = a.order->product(a.lattice, b.lattice);
  return f;
}

FittingInvariant idempotent_cut(const FittingInvariant& f, const CenterOrderPtr& cut) {
  if (cut->group() != f.order->group() || cut->prime() != f.order->prime())
    throw DomainError("cut order over a different group ring");
  for (std::size_t chi = 0; chi < cut->support().size(); ++chi)
    if (cut->support()[chi] && !f.order->support()[chi]) throw DomainError("cut idempotent is not below the order's idempotent");
  FittingInvariant out;
  out.order = cut;
  out.kind = FittingKind::Cut;
  for (const auto& g : f.generators) out.generators.push_back(cut->project(g));
  std::vector<RationalVector> rows;
  for (const auto& v : f.lattice.basis()) rows.push_back(cut->project(v));
  out.lattice = Lattice::span(cut->prime(), cut->dimension(), std::move(rows));
  return out;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Holds: return "holds";
    case Relation::Fails: return "fails";
    case Relation::Undecided: return "undecided-at-bound";
  }
  return "?";
}

std::vector<UnitWitness> unit_generators(const CenterOrder& order) {
  const auto& g = order.group();
  const std::uint64_t p = order.prime();
  std::vector<std::pair<std::string, QGElement>> units;
  for (std::size_t s = 0; s < g->generators().size(); ++s)
    units.emplace_back(g->generators()[s].to_cycles(), group_element(g, g->generator_indices()[s]));
  units.emplace_back("-1", qg_scalar(g, Cyclotomic(-1)));
  if (p == 2) {
    units.emplace_back("5", qg_scalar(g, Cyclotomic(5)));
  } else {
    long r = static_cast<long>(primitive_root(p));
    units.emplace_back(std::to_string(r), qg_scalar(g, Cyclotomic(r)));
    units.emplace_back(std::to_string(1 + p), qg_scalar(g, Cyclotomic(static_cast<long>(1 + p))));
  }
  for (std::size_t s = 0; s < g->generators().size(); ++s)
    units.emplace_back("1+" + std::to_string(p) + g->generators()[s].to_cycles(),
                       qg_scalar(g, Cyclotomic(1)) + group_element(g, g->generator_indices()[s]).scaled(Cyclotomic(static_cast<long>(p))));
  std::vector<UnitWitness> out;
  for (auto& [label, u] : units) {
    CenterElement n = reduced_norm(u).cut(order.support());
    out.push_back({{label}, order.coordinates(n)});
    std::vector<Cyclotomic> inv;
    for (std::size_t chi = 0; chi < n.components().size(); ++chi)
      inv.push_back(order.support()[chi] ? n[chi].inverse() : Cyclotomic(0));
    out.push_back({{label + "^-1"}, order.coordinates(CenterElement(n.table(), std::move(inv)))});
  }
  return out;
}

namespace {

constexpr std::size_t kUnitSearchCap = 2000;

ComparisonResult unit_search(const CenterOrder& order, int bound, const std::function<bool(const RationalVector&)>& pred) {
  ComparisonResult res;
  const RationalVector one = order.coordinates(CenterElement::one(order.table()));
  res.units_tried = 1;
  if (pred(one)) {
    res.verdict = Relation::Holds;
    res.unit = UnitWitness{{}, one};
    return res;
  }
  auto gens = unit_generators(order);
  std::set<std::string> seen{key_of(one)};
  std::vector<UnitWitness> frontier{UnitWitness{{}, one}};
  for (int len = 1; len <= bound; ++len) {
    std::vector<UnitWitness> next;
    for (const auto& node : frontier)
      for (const auto& gen : gens) {
        RationalVector v = order.multiply(node.value, gen.value);
        if (!seen.insert(key_of(v)).second) continue;
        UnitWitness w{node.word, v};
        w.word.push_back(gen.word.front());
        ++res.units_tried;
        if (pred(v)) {
          res.verdict = Relation::Holds;
          res.unit = std::move(w);
          return res;
        }
        if (res.units_tried >= kUnitSearchCap) {
          res.reason = "unit search stopped after " + std::to_string(kUnitSearchCap) + " units";
          return res;
        }
        next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  res.reason = "no unit found among words of length <= " + std::to_string(bound);
  return res;
}

void check_same_order(const FittingInvariant& a, const FittingInvariant& b) {
  if (a.order != b.order) throw DomainError("Fitting invariants over different orders");
}

}  // namespace

ComparisonResult nr_contained(const FittingInvariant& a, const FittingInvariant& b, int bound) {
  check_same_order(a, b);
  ComparisonResult res;
  if (a.is_zero()) {
    res.verdict = Relation::Holds;
    res.reason = "the zero class is contained in every class";
    return res;
  }
  if (b.is_zero()) {
    res.verdict = Relation::Fails;
    res.reason = "a nonzero lattice is not contained in the zero class";
    return res;
  }
  const auto& o = *a.order;
  if (!o.product(o.maximal_center(), b.lattice).contains(a.lattice)) {
    res.verdict = Relation::Fails;
    res.reason = "not contained even after extending scalars to the centre of a maximal order";
    return res;
  }
  return unit_search(o, bound, [&](const RationalVector& u) { return o.times(u, b.lattice).contains(a.lattice); });
}

ComparisonResult nr_equal(const FittingInvariant& a, const FittingInvariant& b, int bound) {
  check_same_order(a, b);
  ComparisonResult res;
  if (a.is_zero() || b.is_zero()) {
    res.verdict = a.is_zero() && b.is_zero() ? Relation::Holds : Relation::Fails;
    res.reason = "comparison with the zero class";
    return res;
  }
  const auto& o = *a.order;
  if (o.product(o.maximal_center(), a.lattice) != o.product(o.maximal_center(), b.lattice)) {
    res.verdict = Relation::Fails;
    res.reason = "the lattices differ after extending scalars to the centre of a maximal order";
    return res;
  }
  return unit_search(o, bound, [&](const RationalVector& u) { return o.times(u, b.lattice) == a.lattice; });
}

ComparisonResult nr_member(const RationalVector& x, const FittingInvariant& f, int bound) {
  ComparisonResult res;
  const auto& o = *f.order;
  const bool x_zero = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
  if (x_zero) {
    res.verdict = Relation::Holds;
    res.reason = "zero lies in every lattice";
    return res;
  }
  if (f.is_zero()) {
    res.verdict = Relation::Fails;
    res.reason = "a nonzero element is not in the zero class";
    return res;
  }
  if (!o.product(o.maximal_center(), f.lattice).contains(x)) {
    res.verdict = Relation::Fails;
    res.reason = "not a member even after extending scalars to the centre of a maximal order";
    return res;
  }
  return unit_search(o, bound, [&](const RationalVector& u) { return o.times(u, f.lattice).contains(x); });
}

namespace {

RationalVector row_vector(const QGMatrix& m, std::size_t row, std::size_t left) {
  const auto& g = *m.group();
  RationalVector v(m.cols() * g.order(), Rational(0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t x = 0; x < g.order(); ++x) {
      const auto& c = m(row, j)[x];
      if (c.is_zero()) continue;
      v[j * g.order() + g.mul(left, x)] = c.to_rational();
    }
  return v;
}

Lattice row_module(const QGMatrix& m, std::uint64_t p) {
  const auto& g = *m.group();
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t x = 0; x < g.order(); ++x) rows.push_back(row_vector(m, i, x));
  return Lattice::span(p, m.cols() * g.order(), std::move(rows));
}

}  // namespace

SurjectionCertificate fitting_surjection_monotone(const CenterOrderPtr& order, const ZpGMatrix& h, const ZpGMatrix& h2,
                                                  const ZpGMatrix& phi, int bound) {
  if (phi.rows() != h.cols() || phi.cols() != h2.cols()) throw DomainError("the map does not fit the presentations");
  const std::uint64_t p = order->prime();
  QGMatrix lh = lift(h), lh2 = lift(h2), lphi = lift(phi);
  Lattice target = row_module(lh2, p);
  SurjectionCertificate cert;
  QGMatrix composite = lh * lphi;
  cert.well_defined = true;
  for (std::size_t i = 0; i < composite.rows(); ++i)
    if (!target.contains(row_vector(composite, i, 0))) cert.well_defined = false;
  if (!cert.well_defined) throw DomainError("the map does not send relations to relations");
  cert.surjective = (target + row_module(lphi, p)) == Lattice::standard(p, h2.cols() * order->group()->order());
  if (!cert.surjective) throw DomainError("the map is not surjective");
  cert.containment = nr_contained(fitting_of_presentation(order, h), fitting_of_presentation(order, h2), bound);
  return cert;
}

std::string to_string(DenominatorType t) { return t == DenominatorType::FullCenter ? "full-center" : "proper"; }

DenominatorType denominator_dichotomy(const FiniteGroup& g, std::uint64_t p) {
  return commutator_subgroup(g).order() % p == 0 ? DenominatorType::Proper : DenominatorType::FullCenter;
}

std::string to_string(DenominatorCertificate::Verdict v) {
  switch (v) {
    case DenominatorCertificate::Verdict::FullCenter: return "member-full-center";
    case DenominatorCertificate::Verdict::Conductor: return "member-conductor";
    case DenominatorCertificate::Verdict::VerifiedOnSample: return "member-verified-on-sample";
    case DenominatorCertificate::Verdict::NonMember: return "non-member-with-witness";
  }
  return "?";
}

std::vector<QGMatrix> denominator_sample(const GroupPtr& g, std::size_t per_size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-3, 3);
  long max_degree = 1;
  for (const auto& chi : character_table(g)->irreducibles()) max_degree = std::max(max_degree, chi.degree());
  std::vector<QGMatrix> out;
  for (long n = 1; n <= max_degree; ++n)
    for (std::size_t t = 0; t < per_size; ++t) {
      QGMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), QGElement(g, Cyclotomic(0)));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          for (std::size_t x = 0; x < g->order(); ++x) m(i, j)[x] = Cyclotomic(coef(rng));
      out.push_back(std::move(m));
    }
  return out;
}

QGElement center_to_group_ring(const CenterOrder& order, const RationalVector& c) {
  const auto& g = *order.group();
  QGElement x(order.group(), Cyclotomic(0));
  for (std::size_t y = 0; y < g.order(); ++y) x[y] = Cyclotomic(c[g.class_of(y)]);
  return x;
}

DenominatorCertificate certify_denominator(const GroupPtr& g, std::uint64_t p, const RationalVector& x,
                                           const std::vector<QGMatrix>& sample) {
  DenominatorCertificate cert;
  cert.x = x;
  auto order = CenterOrder::group_ring(g, p);
  QGElement xe = center_to_group_ring(*order, x);
  if (!all_p_integral(xe, p)) {
    cert.verdict = DenominatorCertificate::Verdict::NonMember;
    cert.witness = QGMatrix::single(qg_scalar(g, Cyclotomic(1)));
    cert.reason = "x is not in the centre of Z_p[G]";
    return cert;
  }
  if (denominator_dichotomy(*g, p) == DenominatorType::FullCenter) {
    cert.verdict = DenominatorCertificate::Verdict::FullCenter;
    cert.reason = "p does not divide the order of the commutator subgroup";
    return cert;
  }
  // |G| zeta(M) lies in Z_p[G] and H* has entries in M, so x H* is integral.
  RationalVector scaled;
  for (const auto& q : x) scaled.push_back(q / Rational(static_cast<unsigned long>(g->order())));
  if (order->maximal_center().contains(scaled)) {
    cert.verdict = DenominatorCertificate::Verdict::Conductor;
    cert.reason = "x lies in |G| zeta(M), which is contained in the denominator ideal";
    return cert;
  }
  for (const auto& h : sample) {
    ++cert.tested;
    QGMatrix adj = generalized_adjoint(h);
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j)
        if (!all_p_integral(xe * adj(i, j), p)) {
          cert.verdict = DenominatorCertificate::Verdict::NonMember;
          cert.witness = h;
          cert.reason = "x H* has a coefficient that is not p-integral";
          return cert;
        }
  }
  cert.verdict = DenominatorCertificate::Verdict::VerifiedOnSample;
  cert.reason = "x H* integral on " + std::to_string(cert.tested) + " sample matrices";
  return cert;
}

AnnihilationResult annihilation_check(const DenominatorCertificate& x, const FittingInvariant& f, const GModule& m) {
  AnnihilationResult res;
  if (!x.granted()) {
    res.reason = "x is not in the denominator ideal: " + x.reason;
    return res;
  }
  const auto& o = *f.order;
  GModule mp = m.p_part(o.prime());
  for (const auto& v : f.lattice.basis()) {
    RationalVector y = o.multiply(x.x, v);
    QGElement z = center_to_group_ring(o, y);
    if (!all_p_integral(z, o.prime())) {
      res.reason = "x f is not p-integral";
      res.failing_element = y;
      return res;
    }
    if (auto s = mp.survivor(z)) {
      res.reason = "x f does not kill the module";
      res.failing_element = y;
      res.image = s;
      return res;
    }
  }
  res.passed = true;
  res.reason = "every x f kills the module";
  return res;
}

Json lattice_to_json(const Lattice& l) {
  Json out;
  out["prime"] = l.prime();
  out["dimension"] = l.dimension();
  Json basis = Json::array();
  for (const auto& v : l.basis()) {
    Json row = Json::array();
    for (const auto& q : v) row.push_back(to_string(q));
    basis.push_back(row);
  }
  out["basis"] = basis;
  return out;
}

Json comparison_to_json(const ComparisonResult& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  if (c.unit) {
    out["unit_word"] = c.unit->word;
    Json v = Json::array();
    for (const auto& q : c.unit->value) v.push_back(to_string(q));
    out["unit_value"] = v;
  }
  out["units_tried"] = c.units_tried;
  if (!c.reason.empty()) out["reason"] = c.reason;
  return out;
}

Json fitting_to_json(const FittingInvariant& f, const ZpGMatrix* presentation, unsigned precision) {
  Json out;
  out["order"] = f.order->description();
  out["kind"] = to_string(f.kind);
  out["precision"] = precision;
  if (presentation) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < presentation->rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < presentation->cols(); ++j) row.push_back(terms_to_json((*presentation)(i, j)));
      rows.push_back(row);
    }
    out["presentation"] = rows;
  }
  Json gens = Json::array();
  for (const auto& g : f.generators) {
    Json row = Json::array();
    for (const auto& q : g) row.push_back(to_string(q));
    gens.push_back(row);
  }
  out["generators"] = gens;
  out["lattice"] = lattice_to_json(f.lattice);
  out["lattice_mod_p^k"] = lattice_to_json(f.at_precision(precision));
  return out;
}

}  // namespace brumer
