// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "brumer/conjecture.hpp"
#include "brumer/json_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_elements.hpp"

using namespace brumer;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Collects failed expectations of one criterion.
struct Tally {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    else if (!ok) failures.push_back("");
  }
};

std::string corpus(const std::string& rel) { return std::string(BRUMER_CORPUS_DIR) + "/" + rel; }

std::vector<std::filesystem::path> corpus_files(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus(dir)))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct CorpusGroup {
  std::string name;
  GroupPtr group;
};

std::vector<CorpusGroup> corpus_groups() {
  std::vector<CorpusGroup> out;
  for (const auto& f : corpus_files("groups")) out.push_back({f.stem().string(), group_from_json(read_json_file(f)).group});
  return out;
}

ExtensionDatum extension(const std::string& file) { return extension_from_json(read_json_file(corpus("extensions/" + file))); }

Subgroup subgroup(const GroupPtr& g, const std::vector<std::string>& gens) {
  std::vector<std::size_t> idx;
  for (const auto& c : gens) idx.push_back(g->index_of_checked(Perm::from_cycles(g->degree(), c)));
  return generate_subgroup(*g, idx);
}

CenterElement from_class_sums(const TablePtr& t, const std::vector<Rational>& c) {
  std::vector<Cyclotomic> v;
  for (const auto& q : c) v.push_back(Cyclotomic(q));
  return CenterElement::from_class_sums(t, v);
}

// 1 ------------------------------------------------------------------------------------------------

std::string criterion_tables(Tally& t) {
  auto t0 = Clock::now();
  const std::vector<std::pair<std::string, GroupPtr>> groups{{"S3", fixtures::S3()}, {"A4", fixtures::A4()},
                                                             {"S4", fixtures::S4()}, {"D4", fixtures::D4()},
                                                             {"Q8", fixtures::Q8()}, {"C7:C3", fixtures::C7C3()}};
  for (const auto& [name, g] : groups) {
    auto table = character_table(g);
    const auto& cls = g->classes();
    const long order = static_cast<long>(g->order());
    Cyclotomic degrees(0);
    for (const auto& chi : table->irreducibles()) degrees += chi[0] * chi[0];
    t.expect(degrees == Cyclotomic(order), name + ": sum of squared degrees");
    t.expect(table->size() == cls.size(), name + ": number of characters");
    for (std::size_t a = 0; a < table->size(); ++a)
      for (std::size_t b = 0; b < table->size(); ++b) {
        Cyclotomic s(0);
        for (std::size_t k = 0; k < cls.size(); ++k)
          s += Cyclotomic(static_cast<long>(cls[k].size())) * (*table)[a][k] * (*table)[b][k].conj();
        t.expect(s == Cyclotomic(a == b ? order : 0), name + ": row orthogonality");
      }
    for (std::size_t k = 0; k < cls.size(); ++k)
      for (std::size_t l = 0; l < cls.size(); ++l) {
        Cyclotomic s(0);
        for (const auto& chi : table->irreducibles()) s += chi[k] * chi[l].conj();
        const long centralizer = order / static_cast<long>(cls[k].size());
        t.expect(s == Cyclotomic(k == l ? centralizer : 0), name + ": column orthogonality");
      }
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 5.0, "runtime");
  std::ostringstream os;
  os << "character tables of S3, A4, S4, D4, Q8, C7:C3 orthogonal, degrees sum to |G| (" << secs << " s)";
  return os.str();
}

// 2 ------------------------------------------------------------------------------------------------

std::string criterion_reduced_norm(Tally& t) {
  std::mt19937_64 rng(20240601);
  std::size_t total = 0, singular = 0;
  auto groups = corpus_groups();
  for (const auto& [name, g] : groups) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + trial % 3;
      const bool sing = trial % 4 == 3;
      QGMatrix a = sing ? fixtures::random_singular(g, rng, n, 10) : fixtures::random_matrix(g, rng, n, 10, 0.4);
      QGMatrix b = fixtures::random_matrix(g, rng, n, 10, 0.4);
      CenterElement na = reduced_norm(a);
      t.expect(reduced_norm(a * b) == na * reduced_norm(b), name + ": nr(AB) = nr(A) nr(B)");
      QGMatrix adj = generalized_adjoint(a);
      QGMatrix scalar = QGMatrix::identity(n, QGElement(g, Cyclotomic(0)), na.to_group_ring());
      t.expect(adj * a == scalar, name + ": H* H = nr(H)");
      t.expect(a * adj == scalar, name + ": H H* = nr(H)");
      if (sing && n > 1) t.expect(na.is_zero(), name + ": repeated row gives nr = 0");
      ++total;
      singular += sing;
    }
  }
  std::ostringstream os;
  os << "nr multiplicative and H*H = HH* = nr(H) on " << total << " matrices over " << groups.size()
     << " corpus groups (" << singular << " singular)";
  return os.str();
}

// 3 ------------------------------------------------------------------------------------------------

std::size_t commutator_order_by_closure(const FiniteGroup& g) {
  std::set<std::size_t> h{g.identity()};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) h.insert(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> cur(h.begin(), h.end());
    for (auto x : cur)
      for (auto y : cur)
        if (h.insert(g.mul(x, y)).second) grew = true;
  }
  return h.size();
}

std::string criterion_dichotomy(Tally& t) {
  auto s3 = fixtures::S3();
  t.expect(denominator_dichotomy(*s3, 3) == DenominatorType::Proper, "(S3, 3) proper");
  t.expect(denominator_dichotomy(*s3, 5) == DenominatorType::FullCenter, "(S3, 5) full centre");
  std::size_t pairs = 0, abelian = 0;
  for (const auto& [name, g] : corpus_groups()) {
    const std::size_t dprime = commutator_order_by_closure(*g);
    if (dprime == 1) ++abelian;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
      const auto expected = dprime % p == 0 ? DenominatorType::Proper : DenominatorType::FullCenter;
      t.expect(denominator_dichotomy(*g, p) == expected, name + " at " + std::to_string(p));
      if (dprime == 1) t.expect(expected == DenominatorType::FullCenter, name + ": abelian is full centre");
      ++pairs;
    }
  }
  return "denominator dichotomy: (S3,3) proper, (S3,5) full centre, " + std::to_string(pairs) +
         " corpus pairs against |G'| by closure, " + std::to_string(abelian) + " abelian groups full centre";
}

// 4 ------------------------------------------------------------------------------------------------

bool equals_minors_oracle(const ZpGMatrix& h, const CenterOrderPtr& order) {
  const auto& g = *h.group();
  const auto& classes = g.classes();
  auto f = fitting_of_presentation(order, h);
  Lattice ours = oracles::with_truncation(f, 20);
  auto oracle = oracles::classical_fitting(h);
  for (const auto& row : oracle) {
    RationalVector v(classes.size());
    for (std::size_t k = 0; k < classes.size(); ++k) v[k] = Rational(row[classes[k].representative]);
    if (!ours.contains(v)) return false;
  }
  const Integer pk = h(0, 0).zero().ring()->modulus();
  for (const auto& v : ours.basis()) {
    Integer den = 1;
    for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    if (valuation(den, order->prime()) != 0) return false;
    oracles::IVec w(g.order(), Integer(0));
    for (std::size_t k = 0; k < classes.size(); ++k) {
      Rational s = v[k] * den;
      w[classes[k].representative] = s.get_num() % pk;
    }
    if (!oracles::in_integer_lattice(oracle, w)) return false;
  }
  return true;
}

std::string criterion_fitting(Tally& t) {
  std::mt19937_64 rng(4);
  const ZModRing* r3 = ZModRing::get(3, 20);
  const ZModRing* r2 = ZModRing::get(2, 20);
  for (auto [name, g] : std::vector<std::pair<std::string, GroupPtr>>{{"C2", fixtures::C2()}, {"C6", fixtures::C6()}}) {
    auto order = CenterOrder::group_ring(g, 3);
    for (int trial = 0; trial < 50; ++trial)
      t.expect(equals_minors_oracle(fixtures::random_zp_matrix(g, r3, 3, 2, rng), order), name + ": minors oracle");
  }
  // (i) quotients: adding a relation gives a surjection M -> M'
  auto s3 = fixtures::S3();
  auto o3 = CenterOrder::group_ring(s3, 3);
  const ZpGElement zero(s3, ZMod(r3, 0));
  ZpGMatrix id(2, 2, zero);
  id(0, 0) = zp_scalar(s3, r3, 1);
  id(1, 1) = zp_scalar(s3, r3, 1);
  for (int trial = 0; trial < 50; ++trial) {
    ZpGMatrix h = fixtures::random_small_zp_matrix(s3, r3, 2, 2, rng, 3);
    ZpGMatrix extra = fixtures::random_small_zp_matrix(s3, r3, 1, 2, rng, 3);
    ZpGMatrix stacked(3, 2, zero);
    for (std::size_t j = 0; j < 2; ++j) {
      stacked(0, j) = h(0, j);
      stacked(1, j) = h(1, j);
      stacked(2, j) = extra(0, j);
    }
    auto cert = fitting_surjection_monotone(o3, h, stacked, id, 6);
    t.expect(cert.containment.verdict == Relation::Holds, "(i) surjection monotonicity");
  }
  // (ii) direct sums
  for (int trial = 0; trial < 50; ++trial) {
    auto g = trial % 2 ? fixtures::S3() : fixtures::C2xS3();
    auto order = CenterOrder::group_ring(g, 3);
    ZpGMatrix h1 = fixtures::random_small_zp_matrix(g, r3, 1, 1, rng, 3);
    ZpGMatrix h2 = fixtures::random_small_zp_matrix(g, r3, 2, 2, rng, 2);
    auto prod = fitting_product(fitting_of_presentation(order, h1), fitting_of_presentation(order, h2));
    auto direct = fitting_of_presentation(order, ZpGMatrix::block_diagonal(h1, h2));
    t.expect(prod.lattice == direct.lattice, "(ii) direct sums");
  }
  // (iii) idempotent cuts: equality for integral e, containment otherwise
  auto o2 = CenterOrder::group_ring(s3, 2);
  auto table = o2->table();
  std::vector<bool> linear(table->size()), two(table->size());
  for (std::size_t chi = 0; chi < table->size(); ++chi) {
    linear[chi] = (*table)[chi].degree() == 1;
    two[chi] = (*table)[chi].degree() == 2;
  }
  auto cut2 = CenterOrder::cut(s3, 2, linear);
  auto cut3 = CenterOrder::cut(s3, 3, two);
  t.expect(cut2->idempotent_is_integral() && !cut3->idempotent_is_integral(), "(iii) integrality of the idempotents");
  for (int trial = 0; trial < 50; ++trial) {
    if (trial % 2 == 0) {
      ZpGMatrix h = fixtures::random_small_zp_matrix(s3, r2, 2, 2, rng, 3);
      t.expect(idempotent_cut(fitting_of_presentation(o2, h), cut2).lattice == fitting_of_presentation(cut2, h).lattice,
               "(iii) equality for integral e");
    } else {
      ZpGMatrix h = fixtures::random_small_zp_matrix(s3, r3, 2, 2, rng, 3);
      t.expect(fitting_of_presentation(cut3, h).lattice.contains(idempotent_cut(fitting_of_presentation(o3, h), cut3).lattice),
               "(iii) containment");
    }
  }
  return "Fitt equals the minors oracle on 100 presentations over Z/3^20[C2], Z/3^20[C6]; (i)-(iii) on 50 pairs each";
}

// 5 ------------------------------------------------------------------------------------------------

std::string criterion_lvalues(Tally& t) {
  auto t0 = Clock::now();
  for (long d : {-3, -4, -7, -8, -11, -15, -19, -23}) {
    Cyclotomic l = bernoulli_L0(DirichletCharacter::kronecker(d));
    const Rational expected = fraction(2 * oracles::class_number_by_forms(d), oracles::roots_of_unity(d));
    t.expect(l == Cyclotomic(expected), "d = " + std::to_string(d));
  }
  const double secs = seconds_since(t0);
  t.expect(secs < 1.0, "runtime");
  std::ostringstream os;
  os << "L(0, chi_d) = 2h/w for d = -3 ... -23 against reduced forms (" << secs << " s)";
  return os.str();
}

// 6 ------------------------------------------------------------------------------------------------

std::string criterion_stickelberger(Tally& t) {
  auto z3 = extension("Q_zeta3.json");
  auto r = stickelberger(z3, std::vector<std::string>{"5"});
  t.expect(center_element_to_text(r.theta, z3.j) == "1 - j", "Q(zeta_3): 1 - j");
  t.expect(integrality_report(r.theta).passed(), "Q(zeta_3): integral");
  auto q23 = extension("Q_sqrt_m23.json");
  auto tb = stickelberger(q23, std::vector<std::string>{}).theta;
  t.expect(tb == from_class_sums(tb.table(), {fraction(3, 2), fraction(-3, 2)}), "Q(sqrt(-23)): (3/2)(1 - j)");
  t.expect(integrality_report(tb).verdict == IntegralityReport::Verdict::NotIntegral, "Q(sqrt(-23)): not integral");
  auto t3 = stickelberger(q23, std::vector<std::string>{"3"}).theta;
  t.expect(center_element_to_text(t3, q23.j) == "-3 + 3*j", "Q(sqrt(-23)), T = {3}: -3(1 - j)");
  t.expect(integrality_report(t3).passed(), "Q(sqrt(-23)), T = {3}: integral");
  return "theta(Q(zeta_3), T={5}) = 1 - j integral; theta_S(Q(sqrt(-23))) = (3/2)(1 - j) not integral; T={3} gives -3(1 - j)";
}

// 7 ------------------------------------------------------------------------------------------------

std::string criterion_checks(Tally& t) {
  RunConfig cfg;
  auto q23 = extension("Q_sqrt_m23.json");
  t.expect(brumer_check(q23, 3, cfg).outcome == Outcome::Pass, "brumer_check");
  t.expect(dual_sbs_check(q23, 3, cfg).outcome == Outcome::Pass, "dual_sbs_check");
  auto theta = stickelberger(q23, q23.ray_class_t).theta;
  auto scaled = dual_sbs_membership(theta.scaled(Cyclotomic(fraction(1, 3))), *q23.ray_class_group, q23.involution(), 3, cfg);
  t.expect(scaled.outcome == Outcome::Fail, "theta / 3 rejected");
  const Json& m = scaled.witnesses["membership"];
  t.expect(m.value("verdict", "") == "fails" && !m.value("reason", "").empty(), "rejection carries a witness");
  return "Q(sqrt(-23)), p = 3: brumer and dual-sbs pass; theta/3 rejected (" + m.value("reason", std::string("?")) + ")";
}

// 8 ------------------------------------------------------------------------------------------------

std::string criterion_classifiers(Tally& t) {
  auto a4 = fixtures::A4(), s4 = fixtures::S4(), s3 = fixtures::S3();
  auto fa4 = frobenius_structure(*a4);
  t.expect(fa4 && fa4->kernel.order() == 4 && fa4->complement.order() == 3 && is_abelian(*a4, fa4->kernel),
           "A4 = V4 x| C3");
  t.expect(!frobenius_structure(*s4), "S4 is not Frobenius");
  auto v4a = subgroup(a4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  auto v4s = subgroup(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  t.expect(hybrid_check(a4, v4a, 3).hybrid, "(A4, V4, 3) hybrid");
  t.expect(hybrid_check(s4, v4s, 3).hybrid, "(S4, V4, 3) hybrid");
  t.expect(!hybrid_check(s3, subgroup(s3, {"(1,2,3)"}), 3).hybrid, "(S3, A3, 3) not hybrid");
  t.expect(is_monomial(s4).monomial, "S4 monomial");
  t.expect(!is_monomial(fixtures::SL23()).monomial, "SL(2,3) not monomial");
  t.expect(classify_theorem(s3, 7).tag == TheoremTag::CoprimeDegree, "(S3, 7): coprime degree");
  t.expect(classify_theorem(s3, 3).tag == TheoremTag::FrobeniusAbelianComplement, "(S3, 3): Frobenius");
  t.expect(classify_theorem(s4, 3, v4s).tag == TheoremTag::HybridMonomial, "(S4, 3, V4): hybrid monomial");
  return "Frobenius A4 = (V4, C3), S4 none; hybrid (A4,V4,3), (S4,V4,3) yes, (S3,A3,3) no; S4 monomial, SL(2,3) not; "
         "coprime-degree / Frobenius-complement / hybrid-monomial results";
}

// 9 ------------------------------------------------------------------------------------------------

struct Run {
  std::string out;
  int status = -1;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string criterion_determinism(Tally& t) {
  const std::string cli = BRUMER_CLI_PATH;
  std::string groups, exts;
  for (const auto& f : corpus_files("groups")) groups += " " + f.string();
  for (const auto& f : corpus_files("extensions")) exts += " " + f.string();
  const std::vector<std::string> commands{
      "chartable" + groups,
      "classify -p 3" + groups,
      "classify -p 5" + groups,
      "classify -p 3" + exts,
      "stickelberger" + exts,
      "check brumer -p 3" + exts,
      "check brumer -p 5" + exts,
      "check bs -p 3" + exts,
      "check dual-sbs -p 3" + exts,
      "check dual-sbs -p 7" + exts,
  };
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    Run a = run(cli + " " + c), b = run(cli + " " + c), par = run(cli + " --jobs 8 " + c);
    t.expect(a.status >= 0 && a.status <= 2, c + ": exit status " + std::to_string(a.status));
    t.expect(!a.out.empty() && a.out.front() == '[', c + ": JSON output");
    t.expect(a.out == b.out && a.status == b.status, c + ": repeat is byte-identical");
    t.expect(a.out == par.out && a.status == par.status, c + ": --jobs 8 equals serial");
    bytes += a.out.size();
  }
  return "CLI JSON byte-identical across repeats and --jobs 8 on " + std::to_string(commands.size()) +
         " commands (" + std::to_string(bytes) + " bytes each pass)";
}

// 10 -----------------------------------------------------------------------------------------------

std::string criterion_precision(Tally& t) {
  std::mt19937_64 rng(1010);
  std::size_t compared = 0;
  // random presentations over every corpus group of order <= 24, at p = 3 and p = 2
  for (const auto& [name, g] : corpus_groups()) {
    if (g->order() > 24) continue;
    for (std::uint64_t p : {2, 3}) {
      if (g->order() % p != 0) continue;
      auto order = CenterOrder::group_ring(g, p);
      const ZModRing* r40 = ZModRing::get(p, 40);
      const ZModRing* r20 = ZModRing::get(p, 20);
      for (int trial = 0; trial < 3; ++trial) {
        ZpGMatrix h40 = fixtures::random_zp_matrix(g, r40, 2 + trial % 2, 2, rng);
        ZpGMatrix h20 = fixtures::reduce_precision(h40, r20);
        t.expect(fitting_of_presentation(order, h40).at_precision(20) == fitting_of_presentation(order, h20).at_precision(20),
                 name + ": Fitting lattice modulo p^20");
        ++compared;
      }
    }
  }
  // every extension module, every check
  RunConfig c20, c40;
  c40.precision = 40;
  for (const auto& f : corpus_files("extensions")) {
    auto d = extension_from_json(read_json_file(f));
    for (std::uint64_t p : {3, 5, 7}) {
      if (d.ray_class_group) {
        const GModule ap = d.ray_class_group->p_part(p).dual();
        if (!ap.is_zero()) {
          auto order = CenterOrder::minus_part(d.involution(), p);
          auto f20 = fitting_of_presentation(order, ap.presentation(ZModRing::get(p, 20)));
          auto f40 = fitting_of_presentation(order, ap.presentation(ZModRing::get(p, 40)));
          t.expect(f20.at_precision(20) == f40.at_precision(20), f.stem().string() + ": ray class Fitting lattice");
          ++compared;
        }
      }
      for (const std::string mode : {"brumer", "bs", "dual-sbs"}) {
        if (mode == "dual-sbs" && !d.ray_class_group) continue;
        auto v = [&](const RunConfig& c) {
          return mode == "brumer" ? brumer_check(d, p, c) : mode == "bs" ? bs_antiunit_check(d, p, c) : dual_sbs_check(d, p, c);
        };
        CheckVerdict a = v(c20), b = v(c40);
        Json ja = verdict_to_json(a), jb = verdict_to_json(b);
        t.expect(a.outcome == b.outcome, f.stem().string() + " " + mode + ": outcome");
        t.expect(ja["witnesses"].value("membership", Json()) == jb["witnesses"].value("membership", Json()),
                 f.stem().string() + " " + mode + ": membership witness");
        ++compared;
      }
    }
  }
  return "k = 20 equals k = 40 after reduction on " + std::to_string(compared) + " presentations and verdicts";
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<std::string(Tally&)>>> criteria{
      {1, criterion_tables},        {2, criterion_reduced_norm},  {3, criterion_dichotomy}, {4, criterion_fitting},
      {5, criterion_lvalues},       {6, criterion_stickelberger}, {7, criterion_checks},    {8, criterion_classifiers},
      {9, criterion_determinism},   {10, criterion_precision}};
  int failed = 0;
  for (const auto& [n, f] : criteria) {
    Tally t;
    std::string summary;
    const auto t0 = Clock::now();
    try {
      summary = f(t);
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    const bool ok = t.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << summary;
    if (!ok) {
      std::cout << " [" << t.failures.size() << " failed";
      for (const auto& m : t.failures)
        if (!m.empty()) std::cout << "; " << m;
      std::cout << "]";
    }
    std::cout << " {" << std::fixed << std::setprecision(2) << secs << " s}" << std::defaultfloat << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
