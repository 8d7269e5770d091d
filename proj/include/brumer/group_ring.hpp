#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brumer/characters.hpp"
#include "brumer/cyclotomic.hpp"
#include "brumer/group.hpp"
#include "brumer/json_io.hpp"
#include "brumer/numeric.hpp"

namespace brumer {

/// An element sum_g c_g g of C[G], stored densely in element-index order.
/// C is Cyclotomic (exact) or ZMod (truncated p-adic).
template <class C>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr group, C zero) : group_(std::move(group)), zero_(zero), c_(group_->order(), zero) {}
  GroupRingElement(GroupPtr group, C zero, std::vector<C> coefficients)
      : group_(std::move(group)), zero_(zero), c_(std::move(coefficients)) {
    if (c_.size() != group_->order()) throw DomainError("group ring element needs one coefficient per element");
  }

  static GroupRingElement basis(GroupPtr group, C zero, C one, std::size_t g) {
    GroupRingElement x(std::move(group), zero);
    x.c_[g] = one;
    return x;
  }
  static GroupRingElement scalar(GroupPtr group, C zero, C value) {
    GroupRingElement x(std::move(group), zero);
    x.c_[0] = value;
    return x;
  }

  const GroupPtr& group() const { return group_; }
  const C& zero() const { return zero_; }
  const std::vector<C>& coefficients() const { return c_; }
  const C& operator[](std::size_t g) const { return c_[g]; }
  C& operator[](std::size_t g) { return c_[g]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!(x == zero_)) return false;
    return true;
  }

  GroupRingElement operator+(const GroupRingElement& o) const {
    check(o);
    GroupRingElement r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  GroupRingElement operator-(const GroupRingElement& o) const {
    check(o);
    GroupRingElement r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  GroupRingElement operator-() const {
    GroupRingElement r(*this);
    for (auto& x : r.c_) x = zero_ - x;
    return r;
  }
  GroupRingElement operator*(const GroupRingElement& o) const {
    check(o);
    const auto& g = *group_;
    GroupRingElement r(group_, zero_);
    for (std::size_t a = 0; a < c_.size(); ++a) {
      if (c_[a] == zero_) continue;
      for (std::size_t b = 0; b < c_.size(); ++b) {
        if (o.c_[b] == zero_) continue;
        std::size_t ab = g.mul(a, b);
        r.c_[ab] = r.c_[ab] + c_[a] * o.c_[b];
      }
    }
    return r;
  }
  GroupRingElement scaled(const C& s) const {
    GroupRingElement r(*this);
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
  GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }
  bool operator==(const GroupRingElement& o) const { return group_ == o.group_ && c_ == o.c_; }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  /// x^# = sum_g c_g g^-1.
  GroupRingElement sharp() const {
    GroupRingElement r(group_, zero_);
    for (std::size_t g = 0; g < c_.size(); ++g) r.c_[group_->inv(g)] = c_[g];
    return r;
  }

  bool is_central() const {
    for (std::size_t g = 0; g < c_.size(); ++g)
      if (!(c_[g] == c_[group_->classes()[group_->class_of(g)].representative])) return false;
    return true;
  }

 private:
  void check(const GroupRingElement& o) const {
    if (group_ != o.group_) throw DomainError("group ring elements over different groups");
  }
  GroupPtr group_;
  C zero_;
  std::vector<C> c_;
};

using QGElement = GroupRingElement<Cyclotomic>;
using ZpGElement = GroupRingElement<ZMod>;

/// A matrix with group ring entries, row-major.
template <class C>
class GroupRingMatrix {
 public:
  using Element = GroupRingElement<C>;

  GroupRingMatrix() = default;
  GroupRingMatrix(std::size_t rows, std::size_t cols, const Element& fill)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static GroupRingMatrix identity(std::size_t n, const Element& zero, const Element& one) {
    GroupRingMatrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static GroupRingMatrix single(const Element& x) { return GroupRingMatrix(1, 1, x); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Element& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const GroupPtr& group() const { return e_.at(0).group(); }

  GroupRingMatrix operator*(const GroupRingMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix dimensions do not match");
    Element zero(group(), e_[0].zero());
    GroupRingMatrix r(rows_, o.cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        Element s = zero;
        for (std::size_t k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  GroupRingMatrix operator+(const GroupRingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix dimensions do not match");
    GroupRingMatrix r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }
  /// Each entry multiplied on the left by the central element x.
  GroupRingMatrix times(const Element& x) const {
    GroupRingMatrix r(*this);
    for (auto& y : r.e_) y = x * y;
    return r;
  }
  bool operator==(const GroupRingMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

  GroupRingMatrix rows_subset(const std::vector<std::size_t>& rows) const {
    GroupRingMatrix r(rows.size(), cols_, e_.at(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(rows[i], j);
    return r;
  }

  static GroupRingMatrix block_diagonal(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    Element zero(a.group(), a(0, 0).zero());
    GroupRingMatrix r(a.rows_ + b.rows_, a.cols_ + b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> e_;
};

using QGMatrix = GroupRingMatrix<Cyclotomic>;
using ZpGMatrix = GroupRingMatrix<ZMod>;

/// Canonical lift of Z/p^k coefficients to integers in [0, p^k).
QGElement lift(const ZpGElement& x);
QGMatrix lift(const ZpGMatrix& m);
/// Reduction of p-integral rational coefficients modulo p^k; throws if a coefficient is not
/// a p-integral rational.
ZpGElement reduce(const QGElement& x, const ZModRing* ring);
ZpGMatrix reduce(const QGMatrix& m, const ZModRing* ring);

QGElement group_element(const GroupPtr& g, std::size_t index);
QGElement qg_scalar(const GroupPtr& g, const Cyclotomic& c);
ZpGElement zp_element(const GroupPtr& g, const ZModRing* ring, std::size_t index);
ZpGElement zp_scalar(const GroupPtr& g, const ZModRing* ring, long c);

/// sum_g eps(g) c_g g for a linear character eps.
QGElement twist(const QGElement& x, const Character& eps);
/// Twist over Z/p^k; eps must take values +-1.
ZpGElement twist(const ZpGElement& x, const Character& eps);

/// e(chi) = chi(1)/|G| sum_g chi(g^-1) g.
QGElement central_idempotent(const Character& chi);
std::vector<QGElement> central_idempotents(const GroupPtr& g);
/// e_N = |N|^-1 sum_{n in N} n.
QGElement trace_idempotent(const GroupPtr& g, const Subgroup& n);
/// e_lambda = |U|^-1 sum_{u in U} lambda(u^-1) u, pushed into K[G].
QGElement subgroup_idempotent(const GroupPtr& g, const InductionWitness& w);

/// Nonzero terms as [{"g": cycle string, "c": coefficient}]; a rational coefficient is a
/// string "a/b", an irrational one the list of its power-basis coefficients over Q(zeta_n).
Json terms_to_json(const QGElement& x);
Json terms_to_json(const ZpGElement& x);
/// {"ring": {"group": ..., "coeff": "cyclotomic(n)" | "zmod(p,k)"}, "terms": [...]}.
Json element_to_json(const QGElement& x);
Json element_to_json(const ZpGElement& x);
Json cyclotomic_to_json(const Cyclotomic& c);
Cyclotomic cyclotomic_from_json(const Json& j, const std::string& where);

/// A parsed group ring element: exactly one of the two is set.
struct ParsedElement {
  std::optional<QGElement> exact;
  std::optional<ZpGElement> truncated;
};
/// Reads the element format above; the group comes from the "ring" field unless given.
ParsedElement element_from_json(const Json& j, GroupPtr group = nullptr);

/// Z/p^k[G]_- = Z/p^k[G]/(1+j), p odd, realised as Z/p^k[G](1-j)/2.
class MinusQuotient {
 public:
  MinusQuotient(CentralInvolution j, const ZModRing* ring);

  const GroupPtr& group() const { return j_.group(); }
  const ZModRing* ring() const { return ring_; }
  std::size_t involution() const { return j_.element(); }
  /// x (1-j)/2.
  ZpGElement project(const ZpGElement& x) const;
  bool is_zero(const ZpGElement& x) const { return project(x).is_zero(); }
  /// One representative of each coset of <j>; {t (1-j)/2} is a free basis.
  const std::vector<std::size_t>& transversal() const { return transversal_; }
  std::size_t rank() const { return transversal_.size(); }
  /// Coordinates of project(x) in the basis above.
  std::vector<ZMod> coordinates(const ZpGElement& x) const;
  /// Whether x is a unit of the quotient ring (multiplication is bijective modulo p).
  bool is_unit(const ZpGElement& x) const;

 private:
  CentralInvolution j_;
  const ZModRing* ring_;
  std::vector<std::size_t> transversal_;
};

}  // namespace brumer
