#include "brumer/wedderburn.hpp"

#include <sstream>

namespace brumer {

namespace {

Cyclotomic trace_product(const CycMatrix& a, const CycMatrix& b) {
  Cyclotomic s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!a[i][k].is_zero() && !b[k][i].is_zero()) s += a[i][k] * b[k][i];
  return s;
}

std::vector<CycMatrix> build_representation(const GroupPtr& gp, const Character& chi) {
  const auto& g = *gp;
  const std::size_t n = g.order();
  const std::size_t d = static_cast<std::size_t>(chi.degree());
  if (d == 1) {
    std::vector<CycMatrix> rho(n);
    for (std::size_t x = 0; x < n; ++x) rho[x] = CycMatrix{{chi.at_element(x)}};
    return rho;
  }
  auto witness = multiplicity_one_pair(chi);
  if (!witness)
    throw DomainError("no subgroup with a multiplicity-one linear constituent for a character of degree " +
                      std::to_string(d));
  QGElement f = central_idempotent(chi) * subgroup_idempotent(gp, *witness);
  // candidate columns g f, as rows of a matrix for the independence test
  CycMatrix columns;
  std::vector<std::size_t> which;
  for (std::size_t x = 0; x < n && columns.size() < d; ++x) {
    std::vector<Cyclotomic> v = (group_element(gp, x) * f).coefficients();
    for (auto& c : v) c = c.reduce_conductor();
    CycMatrix trial = columns;
    trial.push_back(v);
    if (independent_rows(trial).size() == trial.size()) {
      columns.push_back(std::move(v));
      which.push_back(x);
    }
  }
  if (columns.size() != d) throw DomainError("minimal left ideal has the wrong dimension");
  // B is n x d with columns b_i; choose d rows making B_P invertible
  CycMatrix b(n, std::vector<Cyclotomic>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x) b[x][i] = columns[i][x];
  std::vector<std::size_t> pivots = independent_rows(b);
  pivots.resize(d);
  CycMatrix bp(d, std::vector<Cyclotomic>(d));
  for (std::size_t r = 0; r < d; ++r) bp[r] = b[pivots[r]];
  auto bp_inv = mat_inverse(bp);
  if (!bp_inv) throw DomainError("pivot block of the ideal basis is singular");
  std::vector<CycMatrix> rho(n);
  for (std::size_t x = 0; x < n; ++x) {
    // (x b_i)(y) = b_i(x^-1 y)
    const std::size_t xi = g.inv(x);
    CycMatrix moved(d, std::vector<Cyclotomic>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t i = 0; i < d; ++i) moved[r][i] = b[g.mul(xi, pivots[r])][i];
    rho[x] = mat_mul(*bp_inv, moved);
  }
  for (std::size_t x = 0; x < n; ++x) {
    Cyclotomic tr(0);
    for (std::size_t i = 0; i < d; ++i) tr += rho[x][i][i];
    if (tr != chi.at_element(x)) throw DomainError("constructed representation has the wrong character");
  }
  for (auto s : g.generator_indices())
    for (std::size_t x = 0; x < n; ++x)
      if (mat_mul(rho[s], rho[x]) != rho[g.mul(s, x)]) throw DomainError("constructed representation is not a homomorphism");
  return rho;
}

// Every coefficient must lie in Q(zeta_e), e = exp(G); the field is never enlarged.
void check_coefficient_field(const QGMatrix& h) {
  const std::uint64_t e = h.group()->exponent();
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      for (const auto& c : h(i, j).coefficients()) {
        if (e % c.conductor() == 0) continue;
        if (e % c.minimal_conductor() != 0)
          throw DomainError("coefficient field too small: entry " + c.to_string() + " is not in Q(zeta_" +
                            std::to_string(e) + ")");
      }
}

}  // namespace

CenterElement::CenterElement(TablePtr table, std::vector<Cyclotomic> components)
    : table_(std::move(table)), comp_(std::move(components)) {
  if (comp_.size() != table_->size()) throw DomainError("centre element needs one component per character");
}

CenterElement CenterElement::one(const TablePtr& t) { return CenterElement(t, std::vector<Cyclotomic>(t->size(), Cyclotomic(1))); }

CenterElement CenterElement::zero(const TablePtr& t) {
  return CenterElement(t, std::vector<Cyclotomic>(t->size(), Cyclotomic(0)));
}

CenterElement CenterElement::from_class_sums(const TablePtr& t, const std::vector<Cyclotomic>& coords) {
  const auto& g = *t->group();
  if (coords.size() != g.num_classes()) throw DomainError("class sum coordinates have the wrong length");
  std::vector<Cyclotomic> comp;
  for (const auto& chi : t->irreducibles()) {
    Cyclotomic s(0);
    for (std::size_t c = 0; c < coords.size(); ++c) {
      if (coords[c].is_zero()) continue;
      s += coords[c] * chi[c] * Cyclotomic(static_cast<long>(g.classes()[c].size()));
    }
    comp.push_back(s / chi[0]);
  }
  return CenterElement(t, std::move(comp));
}

CenterElement CenterElement::from_group_ring(const TablePtr& t, const QGElement& x) {
  if (!x.is_central()) throw DomainError("group ring element is not central");
  const auto& g = *t->group();
  std::vector<Cyclotomic> coords;
  for (const auto& c : g.classes()) coords.push_back(x[c.representative]);
  return from_class_sums(t, coords);
}

std::vector<Cyclotomic> CenterElement::class_sum_coordinates() const {
  const auto& g = *table_->group();
  std::vector<Cyclotomic> out;
  const Cyclotomic order(static_cast<long>(g.order()));
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    const std::size_t inv = g.inverse_class(c);
    Cyclotomic s(0);
    for (std::size_t i = 0; i < comp_.size(); ++i) {
      if (comp_[i].is_zero()) continue;
      const auto& chi = (*table_)[i];
      s += comp_[i] * chi[0] * chi[inv];
    }
    out.push_back(s / order);
  }
  return out;
}

QGElement CenterElement::to_group_ring() const {
  const auto& g = *table_->group();
  auto coords = class_sum_coordinates();
  QGElement x(table_->group(), Cyclotomic(0));
  for (std::size_t c = 0; c < coords.size(); ++c)
    for (auto e : g.classes()[c].elements) x[e] = coords[c];
  return x;
}

CenterElement CenterElement::operator+(const CenterElement& o) const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = comp_[i] + o.comp_[i];
  return CenterElement(table_, std::move(r));
}

CenterElement CenterElement::operator-(const CenterElement& o) const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = comp_[i] - o.comp_[i];
  return CenterElement(table_, std::move(r));
}

CenterElement CenterElement::operator*(const CenterElement& o) const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = comp_[i] * o.comp_[i];
  return CenterElement(table_, std::move(r));
}

CenterElement CenterElement::scaled(const Cyclotomic& c) const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = comp_[i] * c;
  return CenterElement(table_, std::move(r));
}

bool CenterElement::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

bool CenterElement::is_regular() const {
  for (const auto& c : comp_)
    if (c.is_zero()) return false;
  return true;
}

CenterElement CenterElement::inverse() const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = comp_[i].inverse();
  return CenterElement(table_, std::move(r));
}

CenterElement CenterElement::cut(const std::vector<bool>& keep) const {
  std::vector<Cyclotomic> r(comp_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = keep[i] ? comp_[i] : Cyclotomic(0);
  return CenterElement(table_, std::move(r));
}

std::string CenterElement::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < comp_.size(); ++i) out << (i ? ", " : "") << comp_[i].to_string();
  out << ")";
  return out.str();
}

Wedderburn::Wedderburn(GroupPtr g, TablePtr t, std::vector<std::vector<CycMatrix>> rho)
    : group_(std::move(g)), table_(std::move(t)), rho_(std::move(rho)) {}

std::shared_ptr<const Wedderburn> Wedderburn::of(const GroupPtr& g) {
  if (auto cached = g->cached_representations()) return std::static_pointer_cast<const Wedderburn>(cached);
  auto table = character_table(g);
  std::vector<std::vector<CycMatrix>> rho;
  for (const auto& chi : table->irreducibles()) rho.push_back(build_representation(g, chi));
  auto w = std::make_shared<const Wedderburn>(g, table, std::move(rho));
  g->set_cached_representations(w);
  return std::static_pointer_cast<const Wedderburn>(g->cached_representations());
}

CycMatrix Wedderburn::image(std::size_t chi, const QGElement& x) const {
  const std::size_t d = rho_[chi][0].size();
  CycMatrix m(d, std::vector<Cyclotomic>(d, Cyclotomic(0)));
  for (std::size_t g = 0; g < x.coefficients().size(); ++g) {
    if (x[g].is_zero()) continue;
    const auto& r = rho_[chi][g];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (!r[i][k].is_zero()) m[i][k] += x[g] * r[i][k];
  }
  return m;
}

QGElement Wedderburn::preimage(const std::vector<CycMatrix>& blocks) const {
  const auto& g = *group_;
  QGElement x(group_, Cyclotomic(0));
  const Cyclotomic inv_order(Rational(1, static_cast<long>(g.order())));
  for (std::size_t e = 0; e < g.order(); ++e) {
    Cyclotomic s(0);
    for (std::size_t chi = 0; chi < blocks.size(); ++chi) {
      Cyclotomic t = trace_product(rho_[chi][g.inv(e)], blocks[chi]);
      if (!t.is_zero()) s += Cyclotomic((*table_)[chi].degree()) * t;
    }
    x[e] = s * inv_order;
  }
  return x;
}

CycMatrix block_matrix(const Wedderburn& w, std::size_t chi, const QGMatrix& h) {
  const std::size_t d = static_cast<std::size_t>(w.table()->irreducibles()[chi].degree());
  const std::size_t rows = h.rows(), cols = h.cols();
  CycMatrix m(rows * d, std::vector<Cyclotomic>(cols * d, Cyclotomic(0)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      CycMatrix blk = w.image(chi, h(i, j));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) m[i * d + a][j * d + b] = blk[a][b];
    }
  return m;
}

CenterElement reduced_norm(const QGMatrix& h) {
  if (!h.is_square()) throw DomainError("reduced norm of a non-square matrix");
  const auto& gp = h.group();
  check_coefficient_field(h);
  auto w = Wedderburn::of(gp);
  std::vector<Cyclotomic> comp;
  for (std::size_t chi = 0; chi < w->table()->size(); ++chi) comp.push_back(determinant(block_matrix(*w, chi, h)));
  return CenterElement(w->table(), std::move(comp));
}

CenterElement reduced_norm(const ZpGMatrix& h) { return reduced_norm(lift(h)); }

QGMatrix generalized_adjoint(const QGMatrix& h) {
  if (!h.is_square()) throw DomainError("generalised adjoint of a non-square matrix");
  const auto& gp = h.group();
  check_coefficient_field(h);
  auto w = Wedderburn::of(gp);
  const std::size_t b = h.rows();
  const std::size_t r = w->table()->size();
  std::vector<CycMatrix> adj(r);
  for (std::size_t chi = 0; chi < r; ++chi) adj[chi] = adjugate(block_matrix(*w, chi, h));
  QGMatrix out(b, b, QGElement(gp, Cyclotomic(0)));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) {
      std::vector<CycMatrix> blocks(r);
      for (std::size_t chi = 0; chi < r; ++chi) {
        const std::size_t d = static_cast<std::size_t>(w->table()->irreducibles()[chi].degree());
        blocks[chi].assign(d, std::vector<Cyclotomic>(d));
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t c = 0; c < d; ++c) blocks[chi][a][c] = adj[chi][i * d + a][j * d + c];
      }
      out(i, j) = w->preimage(blocks);
    }
  return out;
}

}  // namespace brumer
