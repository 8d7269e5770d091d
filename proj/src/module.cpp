#include "brumer/module.hpp"

#include <algorithm>

namespace brumer {

namespace {

Integer mod_nonneg(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer json_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError(where + ": not an integer");
    return x;
  }
  throw InputError(where + ": expected an integer");
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

}  // namespace

GModule::GModule(GroupPtr group, std::vector<Integer> invariant_factors, std::vector<IntMatrix> generator_action,
                 std::string label)
    : group_(std::move(group)), d_(std::move(invariant_factors)), generator_action_(std::move(generator_action)),
      label_(std::move(label)) {
  const std::size_t r = d_.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (d_[i] <= 1) throw InputError("invariant factors must exceed 1");
    if (i > 0 && d_[i] % d_[i - 1] != 0) throw InputError("invariant factors must divide each other");
  }
  if (generator_action_.size() != group_->generators().size())
    throw InputError("need one action matrix per group generator (" + std::to_string(group_->generators().size()) + ")");
  for (auto& a : generator_action_) {
    if (a.size() != r) throw InputError("action matrix has the wrong number of rows");
    for (std::size_t l = 0; l < r; ++l) {
      if (a[l].size() != r) throw InputError("action matrix has the wrong number of columns");
      for (std::size_t i = 0; i < r; ++i) {
        a[l][i] = mod_nonneg(a[l][i], d_[l]);
        if ((a[l][i] * d_[i]) % d_[l] != 0) throw InputError("action matrix does not respect the invariant factors");
      }
    }
  }
  build_action();
}

GModule GModule::zero(GroupPtr group, std::string label) {
  std::vector<IntMatrix> acts(group->generators().size());
  return GModule(std::move(group), {}, std::move(acts), std::move(label));
}

void GModule::build_action() {
  const auto& g = *group_;
  const std::size_t r = d_.size();
  action_.assign(g.order(), IntMatrix());
  std::vector<bool> known(g.order(), false);
  action_[0] = identity_matrix(r);
  known[0] = true;
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t x = queue[head];
    for (std::size_t s = 0; s < generator_action_.size(); ++s) {
      std::size_t y = g.mul(g.generator_indices()[s], x);
      IntMatrix m(r, std::vector<Integer>(r, Integer(0)));
      for (std::size_t l = 0; l < r; ++l)
        for (std::size_t i = 0; i < r; ++i) {
          Integer acc = 0;
          for (std::size_t t = 0; t < r; ++t) acc += generator_action_[s][l][t] * action_[x][t][i];
          m[l][i] = mod_nonneg(acc, d_[l]);
        }
      if (known[y]) {
        if (m != action_[y]) throw InputError("the action matrices do not satisfy the group relations");
        continue;
      }
      action_[y] = std::move(m);
      known[y] = true;
      queue.push_back(y);
    }
  }
}

Integer GModule::order() const {
  Integer n = 1;
  for (const auto& d : d_) n *= d;
  return n;
}

std::vector<Integer> GModule::act(const QGElement& x, const std::vector<Integer>& v) const {
  if (x.group() != group_) throw DomainError("module and group ring element over different groups");
  const std::size_t r = d_.size();
  std::vector<Integer> out(r, Integer(0));
  if (r == 0) return out;
  const Integer e = exponent();
  for (std::size_t g = 0; g < group_->order(); ++g) {
    const auto& c = x[g];
    if (c.is_zero()) continue;
    if (!c.is_rational()) throw DomainError("only rational group ring elements act on a finite module");
    Rational q = c.to_rational();
    Integer den = q.get_den();
    Integer gcd;
    mpz_gcd(gcd.get_mpz_t(), den.get_mpz_t(), e.get_mpz_t());
    if (gcd != 1) throw DomainError("coefficient " + q.get_str() + " is not integral at the module exponent");
    Integer coef = mod_nonneg(q.get_num() * mod_inverse(den, e), e);
    for (std::size_t l = 0; l < r; ++l)
      for (std::size_t i = 0; i < r; ++i) out[l] += coef * action_[g][l][i] * v[i];
  }
  for (std::size_t l = 0; l < r; ++l) out[l] = mod_nonneg(out[l], d_[l]);
  return out;
}

std::optional<std::pair<std::size_t, std::vector<Integer>>> GModule::survivor(const QGElement& x) const {
  for (std::size_t i = 0; i < d_.size(); ++i) {
    std::vector<Integer> v(d_.size(), Integer(0));
    v[i] = 1;
    auto w = act(x, v);
    if (std::any_of(w.begin(), w.end(), [](const Integer& y) { return y != 0; })) return std::make_pair(i, w);
  }
  return std::nullopt;
}

GModule GModule::p_part(std::uint64_t p) const {
  // The p-part of Z/d is generated by m e where d = p^a m, p not dividing m.
  struct Piece {
    std::size_t index;
    Integer cofactor;
    Integer order;
  };
  std::vector<Piece> pieces;
  const Integer pz(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < d_.size(); ++i) {
    Integer m = d_[i], q = 1;
    while (m % pz == 0) {
      m /= pz;
      q *= pz;
    }
    if (q > 1) pieces.push_back({i, m, q});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.order < b.order; });
  std::vector<Integer> factors;
  for (const auto& pc : pieces) factors.push_back(pc.order);
  std::vector<IntMatrix> acts;
  for (const auto& a : generator_action_) {
    IntMatrix m(pieces.size(), std::vector<Integer>(pieces.size(), Integer(0)));
    for (std::size_t li = 0; li < pieces.size(); ++li)
      for (std::size_t ii = 0; ii < pieces.size(); ++ii) {
        const auto& l = pieces[li];
        const auto& i = pieces[ii];
        Integer x = mod_nonneg(i.cofactor * a[l.index][i.index], d_[l.index]);
        if (x % l.cofactor != 0) throw DomainError("action does not preserve the p-part");
        m[li][ii] = mod_nonneg(x / l.cofactor, l.order);
      }
    acts.push_back(std::move(m));
  }
  std::string label = label_.empty() ? "" : label_ + "(" + std::to_string(p) + ")";
  return GModule(group_, std::move(factors), std::move(acts), label);
}

GModule GModule::dual() const {
  const auto& g = *group_;
  const std::size_t r = d_.size();
  std::vector<IntMatrix> acts;
  for (std::size_t s = 0; s < generator_action_.size(); ++s) {
    const IntMatrix& b = action_[g.inv(g.generator_indices()[s])];
    IntMatrix m(r, std::vector<Integer>(r, Integer(0)));
    for (std::size_t l = 0; l < r; ++l)
      for (std::size_t i = 0; i < r; ++i) {
        Integer num = b[i][l] * d_[l];
        if (num % d_[i] != 0) throw DomainError("dual action is not integral");
        m[l][i] = mod_nonneg(num / d_[i], d_[l]);
      }
    acts.push_back(std::move(m));
  }
  std::string label = label_.empty() ? "" : label_ + "^dual";
  return GModule(group_, d_, std::move(acts), label);
}

ZpGMatrix GModule::presentation(const ZModRing* ring) const {
  const std::size_t r = d_.size();
  if (r == 0) throw DomainError("the zero module has the empty presentation");
  const Integer pz(static_cast<unsigned long>(ring->prime()));
  for (const auto& d : d_) {
    Integer x = d;
    while (x % pz == 0) x /= pz;
    if (x != 1) throw DomainError("presentation over Z_p[G] needs a p-primary module");
    if (d >= ring->modulus()) throw DomainError("precision p^k does not exceed the module exponent");
  }
  const auto& g = *group_;
  const std::size_t ngen = generator_action_.size();
  ZpGElement zero(group_, ZMod(ring, 0));
  ZpGMatrix h(r + r * ngen, r, zero);
  for (std::size_t i = 0; i < r; ++i) h(i, i) = ZpGElement::scalar(group_, ZMod(ring, 0), ZMod(ring, d_[i]));
  for (std::size_t s = 0; s < ngen; ++s)
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t row = r + s * r + i;
      h(row, i) += zp_element(group_, ring, g.generator_indices()[s]);
      for (std::size_t l = 0; l < r; ++l) {
        const Integer& a = generator_action_[s][l][i];
        if (a == 0) continue;
        h(row, l) = h(row, l) - ZpGElement::scalar(group_, ZMod(ring, 0), ZMod(ring, a));
      }
    }
  return h;
}

Json module_to_json(const GModule& m) {
  Json out;
  if (!m.label().empty()) out["label"] = m.label();
  Json d = Json::array();
  for (const auto& x : m.invariant_factors()) d.push_back(integer_json(x));
  out["invariant_factors"] = d;
  Json acts = Json::array();
  for (const auto& a : m.generator_action()) {
    Json rows = Json::array();
    for (const auto& row : a) {
      Json jr = Json::array();
      for (const auto& x : row) jr.push_back(integer_json(x));
      rows.push_back(jr);
    }
    acts.push_back(rows);
  }
  out["action"] = acts;
  return out;
}

GModule module_from_json(const Json& j, const GroupPtr& g) {
  if (!j.is_object()) throw InputError("module JSON must be an object");
  if (!j.contains("invariant_factors") || !j["invariant_factors"].is_array())
    throw InputError("module JSON needs an 'invariant_factors' list");
  std::vector<Integer> d;
  for (std::size_t i = 0; i < j["invariant_factors"].size(); ++i)
    d.push_back(json_integer(j["invariant_factors"][i], "/invariant_factors/" + std::to_string(i)));
  std::vector<IntMatrix> acts;
  if (j.contains("action")) {
    if (!j["action"].is_array()) throw InputError("/action must be a list of matrices");
    for (std::size_t s = 0; s < j["action"].size(); ++s) {
      const auto& mj = j["action"][s];
      if (!mj.is_array()) throw InputError("/action/" + std::to_string(s) + " must be a matrix");
      IntMatrix m;
      for (std::size_t l = 0; l < mj.size(); ++l) {
        if (!mj[l].is_array()) throw InputError("/action/" + std::to_string(s) + "/" + std::to_string(l) + " must be a row");
        std::vector<Integer> row;
        for (std::size_t i = 0; i < mj[l].size(); ++i)
          row.push_back(json_integer(mj[l][i], "/action/" + std::to_string(s) + "/" + std::to_string(l) + "/" + std::to_string(i)));
        m.push_back(std::move(row));
      }
      acts.push_back(std::move(m));
    }
  } else if (d.empty()) {
    acts.assign(g->generators().size(), IntMatrix());
  } else {
    throw InputError("module JSON needs an 'action' list");
  }
  return GModule(g, std::move(d), std::move(acts), j.value("label", std::string()));
}

}  // namespace brumer
