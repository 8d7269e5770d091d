#include <doctest.h>

#include <chrono>

#include "brumer/characters.hpp"
#include "fixtures.hpp"

using namespace brumer;

namespace {

bool is_nonnegative_integer(const Cyclotomic& x) {
  if (!x.is_rational()) return false;
  Rational r = x.to_rational();
  return r.get_den() == 1 && r >= 0;
}

// The permutation character of the defining action: number of fixed points.
Character fixed_points(const GroupPtr& g) {
  std::vector<Cyclotomic> v;
  for (const auto& c : g->classes()) {
    const Perm& p = g->element(c.representative);
    long fixed = 0;
    for (std::size_t x = 0; x < p.degree(); ++x)
      if (p[x] == x) ++fixed;
    v.emplace_back(fixed);
  }
  return Character(g, std::move(v));
}

std::vector<long> degrees(const CharacterTable& t) {
  std::vector<long> d;
  for (const auto& chi : t.irreducibles()) d.push_back(chi.degree());
  return d;
}

}  // namespace

TEST_CASE("character tables satisfy the class-algebra identities and decompose genuine characters") {
  for (const auto& [name, g] : fixtures::all()) {
    CAPTURE(name);
    auto t = character_table(g);
    CHECK(verify_table(*t).empty());
    const std::size_t r = g->num_classes();
    // central characters: w_i w_j = sum_k a_ijk w_k with w_i = |C_i| chi(g_i) / chi(1)
    for (const auto& chi : t->irreducibles()) {
      std::vector<Cyclotomic> w(r);
      for (std::size_t i = 0; i < r; ++i)
        w[i] = chi[i] * Cyclotomic(static_cast<long>(g->classes()[i].size())) / chi[0];
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Cyclotomic s(0);
          for (std::size_t k = 0; k < r; ++k) s += Cyclotomic(g->class_structure_constant(i, j, k)) * w[k];
          CHECK(s == w[i] * w[j]);
        }
    }
    for (const auto& m : t->decompose(fixed_points(g))) CHECK(is_nonnegative_integer(m));
    for (const auto& a : t->irreducibles())
      for (const auto& b : t->irreducibles())
        for (const auto& m : t->decompose(a * b)) CHECK(is_nonnegative_integer(m));
  }
}

TEST_CASE("known degree patterns") {
  CHECK(degrees(*character_table(fixtures::S3())) == std::vector<long>{1, 1, 2});
  CHECK(degrees(*character_table(fixtures::S4())) == std::vector<long>{1, 1, 2, 3, 3});
  CHECK(degrees(*character_table(fixtures::A4())) == std::vector<long>{1, 1, 1, 3});
  CHECK(degrees(*character_table(fixtures::SL23())) == std::vector<long>{1, 1, 1, 2, 2, 2, 3});
  CHECK(degrees(*character_table(fixtures::C7C3())) == std::vector<long>{1, 1, 1, 3, 3});
  auto s3 = fixtures::S3();
  auto t = character_table(s3);
  // classes are e, transpositions, 3-cycles
  CHECK(t->irreducibles()[2].values() == std::vector<Cyclotomic>{Cyclotomic(2), Cyclotomic(0), Cyclotomic(-1)});
  auto c2 = character_table(fixtures::C2());
  CHECK(c2->size() == 2);
  CHECK(c2->irreducibles()[0].values() == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(-1)});
  CHECK(c2->irreducibles()[1].values() == std::vector<Cyclotomic>{Cyclotomic(1), Cyclotomic(1)});
}

TEST_CASE("tables for the criterion groups are fast") {
  auto start = std::chrono::steady_clock::now();
  for (auto g : {fixtures::S3(), fixtures::A4(), fixtures::S4(), fixtures::D4(), fixtures::Q8(), fixtures::C7C3()})
    CHECK(verify_table(*character_table(g)).empty());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 5.0);
}

TEST_CASE("contragredient") {
  auto c3 = fixtures::C3();
  auto t = character_table(c3);
  for (const auto& chi : t->irreducibles()) {
    CHECK(contragredient(contragredient(chi)) == chi);
    if (chi.values() != trivial_character(c3).values()) CHECK(contragredient(chi) == chi * chi);
  }
  for (const auto& chi : character_table(fixtures::S4())->irreducibles()) CHECK(contragredient(chi) == chi);
}

TEST_CASE("parity with respect to a central involution") {
  auto g = fixtures::C2xS3();
  std::size_t j = g->index_of_checked(Perm::from_cycles(5, "(4,5)"));
  CentralInvolution inv(g, j);
  int even = 0, odd = 0;
  for (const auto& chi : character_table(g)->irreducibles()) (parity(chi, inv) == Parity::Even ? even : odd)++;
  CHECK(even == 3);
  CHECK(odd == 3);
  CHECK(parity(trivial_character(g), inv) == Parity::Even);
  CHECK_THROWS_AS(parity(regular_character(g), inv), DomainError);
}

TEST_CASE("induction, restriction and Frobenius reciprocity") {
  for (const auto& [name, g] : fixtures::all()) {
    if (g->order() > 24) continue;
    CAPTURE(name);
    auto t = character_table(g);
    for (const auto& h : subgroup_class_representatives(*g)) {
      EmbeddedSubgroup u = embed_subgroup(g, h);
      auto tu = character_table(u.group);
      for (const auto& lambda : tu->irreducibles()) {
        Character ind = induce(lambda, u, g);
        CHECK(ind.degree() == lambda.degree() * static_cast<long>(h.index));
        for (const auto& chi : t->irreducibles()) CHECK(inner_product(ind, chi) == inner_product(lambda, restrict(chi, u)));
      }
    }
  }
  auto c2 = fixtures::C2();
  auto triv = embed_subgroup(c2, trivial_subgroup(*c2));
  CHECK(induce(trivial_character(triv.group), triv, c2) == regular_character(c2));
}

TEST_CASE("inflation through S4 -> S3") {
  auto s4 = fixtures::S4();
  auto ns = normal_subgroups(*s4);
  auto v4 = *std::find_if(ns.begin(), ns.end(), [](const Subgroup& s) { return s.order() == 4; });
  Quotient q = quotient(s4, v4);
  auto t = character_table(s4);
  std::vector<long> inflated;
  for (const auto& phi : character_table(q.group)->irreducibles()) {
    Character chi = inflate(phi, q, s4);
    CHECK_NOTHROW(t->index_of(chi));
    CHECK(chi.kernel().order() % 4 == 0);
    inflated.push_back(chi.degree());
  }
  CHECK(inflated == std::vector<long>{1, 1, 2});
}

TEST_CASE("monomial groups") {
  auto s4 = is_monomial(fixtures::S4());
  CHECK(s4.monomial);
  for (std::size_t i = 0; i < s4.witnesses.size(); ++i) {
    REQUIRE(s4.witnesses[i].has_value());
    const auto& w = *s4.witnesses[i];
    CHECK(induce(w.lambda, w.subgroup, fixtures::S4()).degree() == character_table(fixtures::S4())->irreducibles()[i].degree());
  }
  CHECK_FALSE(is_monomial(fixtures::SL23()).monomial);
  for (auto g : {fixtures::S3(), fixtures::A4(), fixtures::D4(), fixtures::Q8(), fixtures::C7C3(), fixtures::Aff5(),
                 fixtures::C6(), fixtures::C2xS3()})
    CHECK(is_monomial(g).monomial);
  // Frobenius group monomial iff its complement is
  for (auto g : {fixtures::S3(), fixtures::A4(), fixtures::C7C3(), fixtures::Aff5()}) {
    auto fs = frobenius_structure(*g);
    REQUIRE(fs.has_value());
    auto h = embed_subgroup(g, fs->complement);
    CHECK(is_monomial(g).monomial == is_monomial(h.group).monomial);
  }
}

TEST_CASE("Frobenius groups: characters not containing the kernel are induced from it") {
  for (auto g : {fixtures::S3(), fixtures::A4(), fixtures::C7C3(), fixtures::Aff5()}) {
    auto fs = frobenius_structure(*g);
    REQUIRE(fs.has_value());
    EmbeddedSubgroup n = embed_subgroup(g, fs->kernel);
    auto tn = character_table(n.group);
    for (const auto& chi : character_table(g)->irreducibles()) {
      if (chi.kernel().order() % fs->kernel.order() == 0 &&
          std::includes(chi.kernel().elements.begin(), chi.kernel().elements.end(), fs->kernel.elements.begin(),
                        fs->kernel.elements.end()))
        continue;
      bool found = false;
      for (const auto& psi : tn->irreducibles()) {
        if (psi.values() == trivial_character(n.group).values()) continue;
        if (induce(psi, n, g) == chi) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("defect zero") {
  auto a4 = character_table(fixtures::A4());
  CHECK(defect_zero(a4->irreducibles().back(), 3));
  auto s3 = character_table(fixtures::S3());
  CHECK_FALSE(defect_zero(s3->irreducibles()[2], 3));
  CHECK(defect_zero(s3->irreducibles()[0], 5));
}

TEST_CASE("character table JSON round trip is bit exact") {
  for (const auto& [name, g] : fixtures::all()) {
    CAPTURE(name);
    auto t = character_table(g);
    std::string once = character_table_to_json(*t).dump();
    auto back = character_table_from_json(Json::parse(once), g);
    CHECK(character_table_to_json(*back).dump() == once);
  }
  auto g = fixtures::S3();
  Json bad = character_table_to_json(*character_table(g));
  bad["characters"][0][0][0] = 5;
  CHECK_THROWS_AS(character_table_from_json(bad, g), InputError);
}
