#include "brumer/numeric.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace brumer {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  const Integer modulus(static_cast<unsigned long>(p));
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      Integer r;
      mpz_powm_ui(r.get_mpz_t(), Integer(static_cast<unsigned long>(g)).get_mpz_t(), (p - 1) / q, modulus.get_mpz_t());
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("no primitive root modulo " + std::to_string(p));
}

int valuation(const Integer& x, std::uint64_t p) {
  if (x == 0) return kInfiniteValuation;
  Integer y = abs(x);
  Integer q = static_cast<unsigned long>(p);
  int v = 0;
  while (mpz_divisible_p(y.get_mpz_t(), q.get_mpz_t())) {
    y /= q;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, std::uint64_t p) {
  if (x == 0) return kInfiniteValuation;
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

int valuation_u64(std::uint64_t x, std::uint64_t p) {
  if (x == 0) return kInfiniteValuation;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Integer power(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational power(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return power(Rational(1) / base, -exponent);
  }
  Rational r(power(Integer(base.get_num()), static_cast<unsigned long>(exponent)),
             power(Integer(base.get_den()), static_cast<unsigned long>(exponent)));
  r.canonicalize();
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  Integer aa = a % m;
  if (aa < 0) aa += m;
  if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("element " + a.get_str() + " not invertible modulo " + m.get_str());
  }
  return r;
}

Integer reduce_mod(const Rational& x, const Integer& m) {
  Integer num = x.get_num();
  Integer den = x.get_den();
  Integer r = num * mod_inverse(den, m) % m;
  if (r < 0) r += m;
  return r;
}

bool is_p_integral(const Rational& x, std::uint64_t p) {
  return valuation(Integer(x.get_den()), p) == 0;
}

Rational fraction(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw InputError("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw InputError("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

ZModRing::ZModRing(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  modulus_ = power(Integer(static_cast<unsigned long>(p)), k);
}

const ZModRing* ZModRing::get(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw DomainError("Z/p^k requires p prime, got " + std::to_string(p));
  if (k == 0) throw DomainError("Z/p^k requires k >= 1");
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<ZModRing>> rings;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = rings[{p, k}];
  if (!slot) slot.reset(new ZModRing(p, k));
  return slot.get();
}

ZMod::ZMod(const ZModRing* ring, const Integer& value) : ring_(ring), value_(value % ring->modulus()) {
  if (value_ < 0) value_ += ring->modulus();
}

void ZMod::check_same_ring(const ZMod& o) const {
  if (ring_ != o.ring_) throw DomainError("mixing residues of different precision");
}

bool ZMod::is_unit() const {
  return value_ % static_cast<unsigned long>(ring_->prime()) != 0;
}

int ZMod::valuation() const {
  if (value_ == 0) return static_cast<int>(ring_->exponent());
  return brumer::valuation(value_, ring_->prime());
}

ZMod ZMod::operator+(const ZMod& o) const {
  check_same_ring(o);
  return ZMod(ring_, value_ + o.value_);
}

ZMod ZMod::operator-(const ZMod& o) const {
  check_same_ring(o);
  return ZMod(ring_, value_ - o.value_);
}

ZMod ZMod::operator*(const ZMod& o) const {
  check_same_ring(o);
  return ZMod(ring_, value_ * o.value_);
}

ZMod ZMod::operator-() const { return ZMod(ring_, -value_); }

ZMod ZMod::inverse() const { return ZMod(ring_, mod_inverse(value_, ring_->modulus())); }

ZMod ZMod::reduce(unsigned j) const {
  if (j > ring_->exponent()) throw DomainError("cannot reduce to a finer precision");
  return ZMod(ZModRing::get(ring_->prime(), j), value_);
}

}  // namespace brumer
