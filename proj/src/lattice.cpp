#include "brumer/lattice.hpp"

#include <algorithm>

namespace brumer {

namespace {

Rational p_power(std::uint64_t p, int v) { return power(Rational(static_cast<unsigned long>(p)), v); }

bool is_zero_vector(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

void axpy(RationalVector& y, const Rational& a, const RationalVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] -= a * x[i];
}

}  // namespace

Rational residue_modulo_power(const Rational& x, std::uint64_t p, int v) {
  if (x == 0) return Rational(0);
  Rational y = x / p_power(p, v);
  int vy = valuation(y, p);
  if (vy >= 0) return Rational(0);
  const unsigned long m = static_cast<unsigned long>(-vy);
  Integer pm = power(Integer(static_cast<unsigned long>(p)), m);
  Integer b = y.get_den() / pm;
  Integer t = (y.get_num() * mod_inverse(b, pm)) % pm;
  if (t < 0) t += pm;
  Rational frac(t, pm);
  frac.canonicalize();
  return frac * p_power(p, v);
}

Lattice Lattice::span(std::uint64_t p, std::size_t dimension, std::vector<RationalVector> generators) {
  Lattice l(p, dimension);
  for (const auto& g : generators)
    if (g.size() != dimension) throw DomainError("lattice generator of the wrong length");
  l.echelonize(std::move(generators));
  return l;
}

Lattice Lattice::standard(std::uint64_t p, std::size_t dimension) {
  std::vector<RationalVector> rows(dimension, RationalVector(dimension, Rational(0)));
  for (std::size_t i = 0; i < dimension; ++i) rows[i][i] = 1;
  return span(p, dimension, std::move(rows));
}

void Lattice::echelonize(std::vector<RationalVector> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), is_zero_vector), rows.end());
  std::vector<int> vals;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim_ && r < rows.size(); ++col) {
    std::size_t best = rows.size();
    int best_v = kInfiniteValuation;
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      int v = valuation(rows[i][col], p_);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[r], rows[best]);
    Rational scale = p_power(p_, best_v) / rows[r][col];
    for (auto& x : rows[r]) x *= scale;
    const Rational pivot = rows[r][col];
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (rows[i][col] != 0) axpy(rows[i], rows[i][col] / pivot, rows[r]);
    pivots_.push_back(col);
    vals.push_back(best_v);
    ++r;
  }
  rows.resize(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = i + 1; t < r; ++t) {
      const Rational& x = rows[i][pivots_[t]];
      if (x == 0) continue;
      Rational rep = residue_modulo_power(x, p_, vals[t]);
      if (rep == x) continue;
      axpy(rows[i], (x - rep) / rows[t][pivots_[t]], rows[t]);
    }
  basis_ = std::move(rows);
}

std::vector<int> Lattice::pivot_valuations() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(valuation(basis_[i][pivots_[i]], p_));
  return out;
}

void Lattice::check_compatible(const Lattice& o) const {
  if (p_ != o.p_ || dim_ != o.dim_) throw DomainError("lattices over different primes or dimensions");
}

bool Lattice::contains(const RationalVector& v) const {
  if (v.size() != dim_) throw DomainError("vector of the wrong length");
  RationalVector w = v;
  std::size_t t = 0;
  for (std::size_t col = 0; col < dim_; ++col) {
    if (t < basis_.size() && pivots_[t] == col) {
      if (w[col] != 0) {
        const Rational& pivot = basis_[t][col];
        Rational q = w[col] / pivot;
        if (!is_p_integral(q, p_)) return false;
        axpy(w, q, basis_[t]);
      }
      ++t;
    } else if (w[col] != 0) {
      return false;
    }
  }
  return true;
}

bool Lattice::contains(const Lattice& o) const {
  check_compatible(o);
  return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const RationalVector& v) { return contains(v); });
}

Lattice Lattice::operator+(const Lattice& o) const {
  check_compatible(o);
  std::vector<RationalVector> rows = basis_;
  rows.insert(rows.end(), o.basis_.begin(), o.basis_.end());
  return span(p_, dim_, std::move(rows));
}

Lattice Lattice::scaled(const Rational& c) const {
  std::vector<RationalVector> rows = basis_;
  for (auto& r : rows)
    for (auto& x : r) x *= c;
  return span(p_, dim_, std::move(rows));
}

Lattice Lattice::intersect(const Lattice& o) const {
  check_compatible(o);
  // Zassenhaus: echelonize [a | a] and [b | 0]; rows with vanishing left half span the intersection.
  std::vector<RationalVector> rows;
  for (const auto& a : basis_) {
    RationalVector r = a;
    r.insert(r.end(), a.begin(), a.end());
    rows.push_back(std::move(r));
  }
  for (const auto& b : o.basis_) {
    RationalVector r = b;
    r.resize(2 * dim_, Rational(0));
    rows.push_back(std::move(r));
  }
  Lattice big = span(p_, 2 * dim_, std::move(rows));
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < big.basis_.size(); ++i)
    if (big.pivots_[i] >= dim_) out.emplace_back(big.basis_[i].begin() + static_cast<long>(dim_), big.basis_[i].end());
  return span(p_, dim_, std::move(out));
}

std::string Lattice::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ", ";
    s += "(";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) s += ", ";
      s += brumer::to_string(basis_[i][j]);
    }
    s += ")";
  }
  return s + "]";
}

}  // namespace brumer
