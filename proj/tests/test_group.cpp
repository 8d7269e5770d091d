#include <doctest.h>

#include <algorithm>
#include <set>

#include "brumer/group.hpp"
#include "fixtures.hpp"

using namespace brumer;

namespace {

// Classes straight from the permutations, without the multiplication table.
std::multiset<std::size_t> brute_class_sizes(const FiniteGroup& g) {
  std::set<Perm> done;
  std::multiset<std::size_t> sizes;
  for (const auto& x : g.elements()) {
    if (done.count(x)) continue;
    std::set<Perm> cls;
    for (const auto& y : g.elements()) cls.insert(y * x * y.inverse());
    done.insert(cls.begin(), cls.end());
    sizes.insert(cls.size());
  }
  return sizes;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  // every subgroup of a small group is generated by at most three elements in our corpus
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> out;
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) {
        std::vector<std::size_t> gens{a, b, c};
        Subgroup s = generate_subgroup(g, gens);
        if (seen.insert(s.elements).second) out.push_back(s);
      }
  return out;
}

bool brute_frobenius(const FiniteGroup& g, std::size_t kernel_order, std::size_t complement_order) {
  for (const auto& h : all_subgroups(g)) {
    if (h.order() != complement_order || h.order() == 1 || h.order() == g.order()) continue;
    bool ok = true;
    for (std::size_t x = 0; x < g.order() && ok; ++x) {
      if (h.contains(x)) continue;
      for (auto y : h.elements)
        if (y != 0 && h.contains(g.conjugate(y, x))) ok = false;
    }
    if (!ok) continue;
    std::size_t fixed_point_free = g.order();
    for (const auto& c : g.elements()) (void)c;
    // the kernel is (G minus the conjugates of H) plus the identity
    std::set<std::size_t> conj;
    for (std::size_t x = 0; x < g.order(); ++x)
      for (auto y : h.elements) conj.insert(g.conjugate(y, x));
    fixed_point_free = g.order() - conj.size() + 1;
    if (fixed_point_free == kernel_order) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("cycle notation round trip and composition convention") {
  Perm a = Perm::from_cycles(4, "(1,2,3)");
  Perm b = Perm::from_cycles(4, "(1,2)");
  CHECK(a.to_cycles() == "(1,2,3)");
  // (a*b)(x) = a(b(x)): 1 -> 2 -> 3
  CHECK((a * b)[0] == 2);
  CHECK(Perm::from_cycles(3, "()").is_identity());
  CHECK_THROWS_AS(Perm::from_cycles(3, "(1,4)"), InputError);
  CHECK_THROWS_AS(Perm::from_cycles(3, "(1,2"), InputError);
  CHECK_THROWS_AS(Perm::from_cycles(3, "(1,1)"), InputError);
}

TEST_CASE("orders and class sizes agree with brute-force conjugation") {
  const std::vector<std::pair<std::string, std::size_t>> orders = {
      {"C1", 1}, {"C2", 2}, {"C3", 3}, {"V4", 4}, {"S3", 6}, {"C6", 6}, {"D4", 8}, {"Q8", 8}, {"A4", 12},
      {"C2xS3", 12}, {"Aff(5)", 20}, {"C7:C3", 21}, {"S4", 24}, {"SL(2,3)", 24}};
  for (const auto& [name, g] : fixtures::all()) {
    CAPTURE(name);
    auto it = std::find_if(orders.begin(), orders.end(), [&](auto& p) { return p.first == name; });
    REQUIRE(it != orders.end());
    CHECK(g->order() == it->second);
    std::multiset<std::size_t> sizes;
    for (const auto& c : g->classes()) sizes.insert(c.size());
    CHECK(sizes == brute_class_sizes(*g));
    CHECK(g->element(0).is_identity());
    CHECK(guess_name(*g) == name);
    // class equation
    std::size_t total = 0;
    for (const auto& c : g->classes()) total += c.size();
    CHECK(total == g->order());
  }
}

TEST_CASE("class ordering is by element order then least member") {
  auto s3 = fixtures::S3();
  std::vector<std::size_t> sizes;
  for (const auto& c : s3->classes()) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 2});
  auto s4 = fixtures::S4();
  sizes.clear();
  for (const auto& c : s4->classes()) sizes.push_back(c.size());
  CHECK(sizes == std::vector<std::size_t>{1, 6, 3, 8, 6});
}

TEST_CASE("structure constants reproduce class-sum products") {
  for (const auto& [name, g] : fixtures::all()) {
    CAPTURE(name);
    const std::size_t r = g->num_classes();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        std::vector<long> counts(g->order(), 0);
        for (auto x : g->classes()[i].elements)
          for (auto y : g->classes()[j].elements) counts[g->mul(x, y)]++;
        for (std::size_t k = 0; k < r; ++k)
          CHECK(counts[g->classes()[k].representative] == g->class_structure_constant(i, j, k));
      }
  }
}

TEST_CASE("commutator subgroups, centres and Sylow subgroups") {
  CHECK(commutator_subgroup(*fixtures::S3()).order() == 3);
  CHECK(commutator_subgroup(*fixtures::S4()).order() == 12);
  CHECK(commutator_subgroup(*fixtures::A4()).order() == 4);
  CHECK(commutator_subgroup(*fixtures::Q8()).order() == 2);
  CHECK(commutator_subgroup(*fixtures::C6()).order() == 1);
  CHECK(commutator_subgroup(*fixtures::SL23()).order() == 8);
  CHECK(center(*fixtures::SL23()).order() == 2);
  CHECK(center(*fixtures::D4()).order() == 2);
  CHECK(sylow_subgroup(*fixtures::S3(), 3).order() == 3);
  CHECK(sylow_subgroup(*fixtures::S3(), 5).order() == 1);
  CHECK(sylow_subgroup(*fixtures::S4(), 2).order() == 8);
  CHECK(sylow_subgroup(*fixtures::SL23(), 2).order() == 8);
  CHECK(is_nilpotent(*fixtures::Q8(), whole_group(*fixtures::Q8())));
  CHECK_FALSE(is_nilpotent(*fixtures::S3(), whole_group(*fixtures::S3())));
}

TEST_CASE("normal subgroups and subgroup classes match exhaustive enumeration") {
  for (const auto& [name, g] : fixtures::all()) {
    if (g->order() > 24) continue;
    CAPTURE(name);
    auto subs = all_subgroups(*g);
    std::size_t normal = 0;
    for (const auto& s : subs)
      if (is_normal(*g, s)) ++normal;
    CHECK(normal_subgroups(*g).size() == normal);
    // number of conjugacy classes of subgroups
    std::set<std::vector<std::size_t>> classes;
    for (const auto& s : subs) {
      std::vector<std::size_t> best;
      for (std::size_t x = 0; x < g->order(); ++x) {
        std::vector<std::size_t> c;
        for (auto y : s.elements) c.push_back(g->conjugate(y, x));
        std::sort(c.begin(), c.end());
        if (best.empty() || c < best) best = c;
      }
      classes.insert(best);
    }
    CHECK(subgroup_class_representatives(*g).size() == classes.size());
  }
}

TEST_CASE("Frobenius structure agrees with brute force") {
  auto a4 = fixtures::A4();
  auto fs = frobenius_structure(*a4);
  REQUIRE(fs.has_value());
  CHECK(fs->kernel.order() == 4);
  CHECK(fs->complement.order() == 3);
  CHECK(brute_frobenius(*a4, 4, 3));
  CHECK_FALSE(frobenius_structure(*fixtures::S4()).has_value());
  auto c7 = frobenius_structure(*fixtures::C7C3());
  REQUIRE(c7.has_value());
  CHECK(c7->kernel.order() == 7);
  auto s3 = frobenius_structure(*fixtures::S3());
  REQUIRE(s3.has_value());
  CHECK(s3->kernel.order() == 3);
  auto aff = frobenius_structure(*fixtures::Aff5());
  REQUIRE(aff.has_value());
  CHECK(aff->complement.order() == 4);
  for (const auto& [name, g] : fixtures::all()) {
    CAPTURE(name);
    auto f = frobenius_structure(*g);
    bool any = false;
    for (std::size_t k = 2; k < g->order(); ++k)
      if (g->order() % k == 0 && brute_frobenius(*g, k, g->order() / k)) any = true;
    CHECK(f.has_value() == any);
  }
}

TEST_CASE("quotients") {
  auto s4 = fixtures::S4();
  auto fs = normal_subgroups(*s4);
  auto v4 = std::find_if(fs.begin(), fs.end(), [](const Subgroup& s) { return s.order() == 4; });
  REQUIRE(v4 != fs.end());
  Quotient q = quotient(s4, *v4);
  CHECK(guess_name(*q.group) == "S3");
  for (std::size_t a = 0; a < s4->order(); ++a)
    for (std::size_t b = 0; b < s4->order(); ++b)
      CHECK(q.projection[s4->mul(a, b)] == q.group->mul(q.projection[a], q.projection[b]));
  auto a4 = fixtures::A4();
  Quotient q2 = quotient(a4, frobenius_structure(*a4)->kernel);
  CHECK(guess_name(*q2.group) == "C3");
  Quotient q3 = quotient(a4, whole_group(*a4));
  CHECK(q3.group->order() == 1);
}

TEST_CASE("embedded subgroups carry a homomorphic inclusion") {
  auto s4 = fixtures::S4();
  Subgroup p = sylow_subgroup(*s4, 2);
  EmbeddedSubgroup e = embed_subgroup(s4, p);
  CHECK(guess_name(*e.group) == "D4");
  for (std::size_t a = 0; a < e.group->order(); ++a)
    for (std::size_t b = 0; b < e.group->order(); ++b)
      CHECK(e.to_parent[e.group->mul(a, b)] == s4->mul(e.to_parent[a], e.to_parent[b]));
}

TEST_CASE("central involution validation") {
  auto c6 = fixtures::C6();
  std::size_t j = c6->index_of_checked(Perm::from_cycles(6, "(1,4)(2,5)(3,6)"));
  CHECK_NOTHROW(CentralInvolution(c6, j));
  auto s3 = fixtures::S3();
  CHECK_THROWS_AS(CentralInvolution(s3, s3->index_of_checked(Perm::from_cycles(3, "(1,2)"))), DomainError);
}
