#include "brumer/cyclotomic.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace brumer {

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw DomainError("inexact cyclotomic polynomial division");
  }
  return q;
}

std::uint64_t exponent_mod(std::int64_t e, std::uint64_t n) {
  std::int64_t m = e % static_cast<std::int64_t>(n);
  if (m < 0) m += static_cast<std::int64_t>(n);
  return static_cast<std::uint64_t>(m);
}

// Solves A x = b over Q for a full-column-rank A (rows x cols); returns false if inconsistent.
bool solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return false;
  }
  x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return true;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(std::uint64_t n) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<long>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  std::vector<long> den{1};
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  }
  auto result = poly_div_exact(num, den);
  std::lock_guard<std::mutex> lock(mutex);
  cache[n] = result;
  return result;
}

CyclotomicField::CyclotomicField(std::uint64_t n) : n_(n), phi_(euler_phi(n)), phi_poly_(cyclotomic_polynomial(n)) {
  powers_.resize(n);
  std::vector<long> cur(phi_, 0);
  cur[0] = 1;
  for (std::uint64_t e = 0; e < n; ++e) {
    powers_[e] = cur;
    // multiply by z and reduce with z^phi = -sum phi_poly[i] z^i
    long top = cur[phi_ - 1];
    for (std::size_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t i = 0; i < phi_; ++i) cur[i] -= top * phi_poly_[i];
    }
  }
}

const CyclotomicField* CyclotomicField::get(std::uint64_t conductor) {
  if (conductor == 0) throw DomainError("cyclotomic conductor must be positive");
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<CyclotomicField>> fields;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = fields.find(conductor);
    if (it != fields.end()) return it->second.get();
  }
  std::unique_ptr<CyclotomicField> made(new CyclotomicField(conductor));
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = fields[conductor];
  if (!slot) slot = std::move(made);
  return slot.get();
}

Cyclotomic::Cyclotomic() : field_(CyclotomicField::get(1)), c_{Rational(0)} {}

Cyclotomic::Cyclotomic(long value) : field_(CyclotomicField::get(1)), c_{Rational(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : field_(CyclotomicField::get(1)), c_{value} {}

Cyclotomic::Cyclotomic(const CyclotomicField* field, std::vector<Rational> coefficients)
    : field_(field), c_(std::move(coefficients)) {
  if (c_.size() != field_->degree()) throw DomainError("coefficient vector has wrong length for Q(zeta_n)");
}

Cyclotomic Cyclotomic::zeta(std::uint64_t n, std::int64_t e) {
  const auto* f = CyclotomicField::get(n);
  const auto& pw = f->power_of_zeta(exponent_mod(e, n));
  std::vector<Rational> c(pw.begin(), pw.end());
  return Cyclotomic(f, std::move(c));
}

Cyclotomic Cyclotomic::zero_in(std::uint64_t n) {
  const auto* f = CyclotomicField::get(n);
  return Cyclotomic(f, std::vector<Rational>(f->degree(), Rational(0)));
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const { return is_rational() && c_[0] == 1; }

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw DomainError("cyclotomic number " + to_string() + " is not rational");
  return c_[0];
}

bool Cyclotomic::is_integral() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

bool Cyclotomic::is_p_integral(std::uint64_t p) const {
  for (const auto& x : c_)
    if (!brumer::is_p_integral(x, p)) return false;
  return true;
}

Cyclotomic Cyclotomic::embed(std::uint64_t m) const {
  const std::uint64_t n = conductor();
  if (m == n) return *this;
  if (m % n != 0) throw DomainError("cannot embed Q(zeta_" + std::to_string(n) + ") into Q(zeta_" + std::to_string(m) + ")");
  const auto* target = CyclotomicField::get(m);
  const std::uint64_t step = m / n;
  std::vector<Rational> out(target->degree(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& pw = target->power_of_zeta(i * step);
    for (std::size_t k = 0; k < pw.size(); ++k)
      if (pw[k] != 0) out[k] += c_[i] * pw[k];
  }
  return Cyclotomic(target, std::move(out));
}

Cyclotomic Cyclotomic::galois(std::int64_t a) const {
  const std::uint64_t n = conductor();
  const std::uint64_t aa = exponent_mod(a, n);
  if (gcd_u64(aa, n) != 1 && n > 1) throw DomainError("galois exponent not coprime to conductor");
  std::vector<Rational> out(c_.size(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& pw = field_->power_of_zeta((i * aa) % n);
    for (std::size_t k = 0; k < pw.size(); ++k)
      if (pw[k] != 0) out[k] += c_[i] * pw[k];
  }
  return Cyclotomic(field_, std::move(out));
}

std::uint64_t Cyclotomic::minimal_conductor() const {
  const std::uint64_t n = conductor();
  for (std::uint64_t m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    // fixed by every automorphism zeta_n -> zeta_n^a with a = 1 mod m
    bool fixed = true;
    for (std::uint64_t a = 1; a < n && fixed; a += m) {
      if (gcd_u64(a, n) != 1) continue;
      if (galois(static_cast<std::int64_t>(a)) != *this) fixed = false;
    }
    if (fixed) return m;
  }
  return n;
}

Cyclotomic Cyclotomic::restrict_to(std::uint64_t m) const {
  const std::uint64_t n = conductor();
  if (m == n) return *this;
  const auto* small = CyclotomicField::get(m);
  std::vector<std::vector<Rational>> a(field_->degree(), std::vector<Rational>(small->degree(), Rational(0)));
  for (std::size_t j = 0; j < small->degree(); ++j) {
    const auto& pw = field_->power_of_zeta(j * (n / m));
    for (std::size_t i = 0; i < pw.size(); ++i) a[i][j] = pw[i];
  }
  std::vector<Rational> x;
  if (!solve_rational(a, c_, x)) throw DomainError("element does not lie in the requested subfield");
  return Cyclotomic(small, std::move(x));
}

namespace {

std::uint64_t common_conductor(const Cyclotomic& a, const Cyclotomic& b) {
  return lcm_u64(a.conductor(), b.conductor());
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (field_ != o.field_) {
    auto m = common_conductor(*this, o);
    return embed(m) + o.embed(m);
  }
  std::vector<Rational> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
  return Cyclotomic(field_, std::move(r));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  if (field_ != o.field_) {
    auto m = common_conductor(*this, o);
    return embed(m) - o.embed(m);
  }
  std::vector<Rational> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
  return Cyclotomic(field_, std::move(r));
}

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> r(c_);
  for (auto& x : r) x = -x;
  return Cyclotomic(field_, std::move(r));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (field_ != o.field_) {
    if (is_rational() || o.is_rational()) {
      const Cyclotomic& scalar = is_rational() ? *this : o;
      const Cyclotomic& other = is_rational() ? o : *this;
      const Rational s = scalar.c_[0];
      std::vector<Rational> r(other.c_);
      for (auto& x : r) x *= s;
      return Cyclotomic(other.field_, std::move(r));
    }
    auto m = common_conductor(*this, o);
    return embed(m) * o.embed(m);
  }
  const std::size_t d = c_.size();
  if (d == 1) return Cyclotomic(field_, {c_[0] * o.c_[0]});
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rational> r(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(d));
  for (std::size_t e = d; e < prod.size(); ++e) {
    if (prod[e] == 0) continue;
    const auto& pw = field_->power_of_zeta(e);
    for (std::size_t k = 0; k < d; ++k)
      if (pw[k] != 0) r[k] += prod[e] * pw[k];
  }
  return Cyclotomic(field_, std::move(r));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("division by zero in cyclotomic field");
  if (is_rational()) {
    std::vector<Rational> r(c_.size(), Rational(0));
    r[0] = 1 / c_[0];
    return Cyclotomic(field_, std::move(r));
  }
  const std::size_t d = c_.size();
  // column i = coordinates of this * z^i
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) {
    const auto& pw = field_->power_of_zeta(i);
    Cyclotomic basis(field_, std::vector<Rational>(pw.begin(), pw.end()));
    Cyclotomic col = *this * basis;
    for (std::size_t k = 0; k < d; ++k) a[k][i] = col.c_[k];
  }
  std::vector<Rational> rhs(d, Rational(0));
  rhs[0] = 1;
  std::vector<Rational> x;
  if (!solve_rational(a, rhs, x)) throw DomainError("singular element in cyclotomic field");
  return Cyclotomic(field_, std::move(x));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const {
  if (o.is_rational()) {
    if (o.c_[0] == 0) throw DomainError("division by zero in cyclotomic field");
    const Rational inv = 1 / o.c_[0];
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= inv;
    return Cyclotomic(field_, std::move(r));
  }
  return *this * o.inverse();
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic result = Cyclotomic(1).embed(conductor());
  Cyclotomic base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (field_ == o.field_) return c_ == o.c_;
  if (is_rational() && o.is_rational()) return c_[0] == o.c_[0];
  auto m = common_conductor(*this, o);
  return embed(m).c_ == o.embed(m).c_;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  if (first) return "0";
  return out.str();
}

Cyclotomic determinant(CycMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return Cyclotomic(1);
  Cyclotomic det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Cyclotomic(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Cyclotomic inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Cyclotomic f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(CycMatrix& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Cyclotomic f = a[r][c].inverse();
    for (auto& x : a[r])
      if (!x.is_zero()) x *= f;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Cyclotomic m = a[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!a[r][k].is_zero()) a[i][k] -= m * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// A non-zero x with a x = 0 for a square matrix of rank n - 1.
std::vector<Cyclotomic> kernel_vector(CycMatrix a) {
  const std::size_t n = a.size();
  auto pivots = row_reduce(a);
  std::size_t free = 0;
  while (free < pivots.size() && pivots[free] == free) ++free;
  std::vector<Cyclotomic> x(n, Cyclotomic(0));
  x[free] = Cyclotomic(1);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];
  return x;
}

CycMatrix transpose(const CycMatrix& a) {
  CycMatrix t(a.empty() ? 0 : a[0].size(), std::vector<Cyclotomic>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace

// det(A) A^-1 when A is invertible; for rank n - 1 the adjugate is lambda x y^T with x, y spanning the
// right and left kernels, and lambda fixed by one cofactor; otherwise it vanishes.
std::vector<std::vector<Cyclotomic>> adjugate(const std::vector<std::vector<Cyclotomic>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  CycMatrix out(n, std::vector<Cyclotomic>(n, Cyclotomic(0)));
  if (n == 1) {
    out[0][0] = Cyclotomic(1);
    return out;
  }
  if (auto inv = mat_inverse(a)) {
    const Cyclotomic det = determinant(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(*inv)[i][j].is_zero()) out[i][j] = det * (*inv)[i][j];
    return out;
  }
  CycMatrix reduced = a;
  if (row_reduce(reduced).size() + 1 < n) return out;
  const auto x = kernel_vector(a);
  const auto y = kernel_vector(transpose(a));
  std::size_t i = 0, j = 0;
  while (x[i].is_zero()) ++i;
  while (y[j].is_zero()) ++j;
  // adj(A)_ij = (-1)^(i+j) det(A without row j and column i)
  CycMatrix minor;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == j) continue;
    std::vector<Cyclotomic> row;
    for (std::size_t c = 0; c < n; ++c)
      if (c != i) row.push_back(a[r][c]);
    minor.push_back(std::move(row));
  }
  Cyclotomic cofactor = determinant(std::move(minor));
  if ((i + j) % 2 == 1) cofactor = -cofactor;
  const Cyclotomic lambda = cofactor / (x[i] * y[j]);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!x[r].is_zero() && !y[c].is_zero()) out[r][c] = lambda * x[r] * y[c];
  return out;
}

CycMatrix mat_mul(const CycMatrix& a, const CycMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  CycMatrix r(n, std::vector<Cyclotomic>(m, Cyclotomic(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

CycMatrix mat_identity(std::size_t n) {
  CycMatrix r(n, std::vector<Cyclotomic>(n, Cyclotomic(0)));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = Cyclotomic(1);
  return r;
}

std::optional<CycMatrix> mat_inverse(CycMatrix a) {
  const std::size_t n = a.size();
  CycMatrix inv = mat_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Cyclotomic f = a[c][c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[c][k].is_zero()) a[c][k] *= f;
      if (!inv[c][k].is_zero()) inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Cyclotomic m = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[c][k].is_zero()) a[r][k] -= m * a[c][k];
        if (!inv[c][k].is_zero()) inv[r][k] -= m * inv[c][k];
      }
    }
  }
  return inv;
}

std::vector<std::size_t> independent_rows(const CycMatrix& rows) {
  std::vector<std::size_t> chosen;
  std::vector<std::vector<Cyclotomic>> echelon;  // reduced rows
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Cyclotomic> v = rows[i];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Cyclotomic& c = v[pivots[e]];
      if (c.is_zero()) continue;
      Cyclotomic f = c;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!echelon[e][k].is_zero()) v[k] -= f * echelon[e][k];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) continue;
    Cyclotomic inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    // keep the echelon rows reduced at the new pivot
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (echelon[e][p].is_zero()) continue;
      Cyclotomic f = echelon[e][p];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) echelon[e][k] -= f * v[k];
    }
    echelon.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

}  // namespace brumer
