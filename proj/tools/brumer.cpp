// brumer: command-line front end for character tables, theorem classification, Stickelberger
// elements and the conjecture checks.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "brumer/conjecture.hpp"
#include "brumer/json_io.hpp"
#include "brumer/parallel.hpp"

using namespace brumer;

namespace {

constexpr int kInputErrorExit = 3;

struct Options {
  RunConfig cfg;
  std::string format = "json";
  std::string assume_file;
  std::vector<Assumption> assumptions;
};

/// One input file's contribution to the report.
struct Report {
  Json json;
  std::string text;
  Outcome outcome = Outcome::Pass;
};

struct FileError : std::runtime_error {
  FileError(const std::string& file, const std::string& what) : std::runtime_error(file + ": " + what) {}
};

Json load(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const InputError& e) {
    throw FileError(path, e.what());
  }
}

/// Loads every input before anything is computed, so schema errors surface first.
template <class T, class F>
std::vector<T> load_all(const std::vector<std::string>& files, F parse) {
  std::vector<T> out;
  for (const auto& f : files) {
    Json j = load(f);
    try {
      out.push_back(parse(j));
    } catch (const InputError& e) {
      throw FileError(f, e.what());
    }
  }
  return out;
}

template <class T, class F>
std::vector<Report> run_all(const std::vector<std::string>& files, const std::vector<T>& inputs, unsigned jobs, F f) {
  return parallel_map(inputs.size(), jobs, [&](std::size_t i) {
    try {
      return f(inputs[i]);
    } catch (const InputError& e) {
      throw FileError(files[i], e.what());
    } catch (const DomainError& e) {
      throw FileError(files[i], e.what());
    }
  });
}

int emit(const std::vector<Report>& reports, const Options& opt) {
  if (opt.format == "text") {
    for (const auto& r : reports) std::cout << r.text;
  } else {
    Json out;
    if (reports.size() == 1) {
      out = reports[0].json;
    } else {
      out = Json::array();
      for (const auto& r : reports) out.push_back(r.json);
    }
    std::cout << out.dump(2) << "\n";
  }
  int code = 0;
  for (const auto& r : reports) {
    if (r.outcome == Outcome::Fail) return 1;
    if (r.outcome == Outcome::Undecided) code = 2;
  }
  return code;
}

// chartable -------------------------------------------------------------------------------------

struct TableInput {
  GroupPtr group;
  Json imported;  // an exported table to re-verify, or null
};

Report chartable_report(const TableInput& in, const Options& opt) {
  TablePtr t = in.imported.is_null() ? character_table(in.group) : character_table_from_json(in.imported, in.group);
  const auto& g = *t->group();
  Report r;
  r.json = character_table_to_json(*t);
  r.json["name"] = guess_name(g);
  r.json["order"] = g.order();
  r.json["verified"] = verify_table(*t).empty();
  r.json["config"] = config_to_json(opt.cfg);
  std::ostringstream os;
  os << "group " << (guess_name(g).empty() ? fingerprint(g) : guess_name(g)) << " of order " << g.order() << "\n";
  os << std::setw(8) << "class";
  for (const auto& c : g.classes()) os << std::setw(14) << g.element(c.representative).to_cycles();
  os << "\n" << std::setw(8) << "size";
  for (const auto& c : g.classes()) os << std::setw(14) << c.size();
  os << "\n";
  for (std::size_t i = 0; i < t->size(); ++i) {
    os << std::setw(8) << ("chi" + std::to_string(i));
    for (const auto& v : (*t)[i].values()) os << std::setw(14) << v.to_string();
    os << "\n";
  }
  r.text = os.str();
  return r;
}

// classify --------------------------------------------------------------------------------------

struct ClassifyInput {
  GroupPtr g_plus;
  std::optional<Subgroup> n;
};

ClassifyInput classify_input(const Json& j, const std::vector<std::string>& normal) {
  ClassifyInput in;
  if (j.contains("group") && j["group"].is_object()) {
    // an extension file: work with G+ = G/<j>; N is named by elements of G
    ExtensionDatum d = extension_from_json(j);
    Quotient q = plus_quotient(d);
    in.g_plus = q.group;
    if (!normal.empty()) {
      std::vector<std::size_t> gens;
      for (std::size_t i = 0; i < normal.size(); ++i) {
        Perm p = Perm::from_cycles(d.group->degree(), normal[i]);
        auto idx = d.group->index_of(p);
        if (!idx) throw InputError("--normal/" + std::to_string(i) + ": '" + normal[i] + "' is not in the group");
        gens.push_back(q.projection[*idx]);
      }
      in.n = generate_subgroup(*q.group, gens);
    }
  } else {
    in.g_plus = group_from_json(j).group;
    if (!normal.empty()) in.n = subgroup_from_json(in.g_plus, Json(normal), "--normal");
  }
  return in;
}

Report classify_report(const ClassifyInput& in, std::uint64_t p, const Options& opt) {
  TheoremVerdict v = classify_theorem(in.g_plus, p, in.n, opt.assumptions);
  Report r;
  r.json = theorem_to_json(*in.g_plus, v);
  r.json["config"] = config_to_json(opt.cfg);
  r.text = theorem_to_text(*in.g_plus, v);
  r.outcome = v.applies() ? Outcome::Pass : Outcome::Undecided;
  return r;
}

// stickelberger ---------------------------------------------------------------------------------

Report stickelberger_report(const ExtensionDatum& d, const std::optional<std::vector<std::string>>& t,
                            const Options& opt) {
  StickelbergerResult s = stickelberger(d, t);
  IntegralityReport ir = integrality_report(s.theta);
  Report r;
  r.json["extension"] = d.name;
  r.json["config"] = config_to_json(opt.cfg);
  r.json["theta"] = center_element_to_text(s.theta, d.j);
  r.json["stickelberger"] = stickelberger_to_json(s);
  r.json["integrality"] = integrality_to_json(ir);
  Json notes = Json::array();
  if (d.group->element(d.j).is_identity())
    notes.push_back("L is totally real: every L_S(0, chi) vanishes and theta_S^T = 0");
  r.json["notes"] = notes;
  r.outcome = ir.verdict == IntegralityReport::Verdict::Integral      ? Outcome::Pass
              : ir.verdict == IntegralityReport::Verdict::NotIntegral ? Outcome::Fail
                                                                      : Outcome::Undecided;
  std::ostringstream os;
  os << d.name << "\n  S = {";
  for (std::size_t i = 0; i < s.s_places.size(); ++i) os << (i ? ", " : "") << s.s_places[i];
  os << "}, T = {";
  for (std::size_t i = 0; i < s.t_places.size(); ++i) os << (i ? ", " : "") << s.t_places[i];
  os << "}\n  theta_S^T = " << center_element_to_text(s.theta, d.j) << "\n  integrality: " << to_string(ir.verdict);
  if (!ir.reason.empty()) os << " (" << ir.reason << ")";
  os << "\n";
  for (const auto& n : notes) os << "  note: " << n.get<std::string>() << "\n";
  r.text = os.str();
  return r;
}

// check -----------------------------------------------------------------------------------------

/// Assumptions named "anti-unit:<ideal label>" assert the anti-unit clause for that ideal.
void apply_assumptions(ExtensionDatum& d, const std::vector<Assumption>& assumptions) {
  for (const auto& a : assumptions) {
    if (a.name.rfind("anti-unit:", 0) != 0) continue;
    const std::string label = a.name.substr(10);
    auto it = std::find_if(d.ideals.begin(), d.ideals.end(), [&](const IdealDatum& i) { return i.label == label; });
    if (it == d.ideals.end()) throw InputError("--assume: no ideal labelled '" + label + "'");
    it->anti_unit_asserted = a.holds;
  }
}

Report check_report(const ExtensionDatum& d, const std::string& mode, std::uint64_t p, const Options& opt) {
  CheckVerdict v = mode == "brumer" ? brumer_check(d, p, opt.cfg)
                   : mode == "bs"   ? bs_antiunit_check(d, p, opt.cfg)
                                    : dual_sbs_check(d, p, opt.cfg);
  for (const auto& a : opt.assumptions)
    if (std::none_of(v.assumptions.begin(), v.assumptions.end(), [&](const Assumption& b) { return b.name == a.name; }))
      v.assumptions.push_back(a);
  Report r;
  r.json = verdict_to_json(v);
  r.text = verdict_to_text(v);
  r.outcome = v.outcome;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Brumer-type conjectures for small Galois CM-extensions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--precision", opt.cfg.precision, "p-adic precision exponent k")->check(CLI::Range(1u, 4096u));
  app.add_option("--unit-bound", opt.cfg.unit_bound, "search bound for units in membership tests")
      ->check(CLI::Range(1, 1 << 20));
  app.add_option("--jobs", opt.cfg.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--assume", opt.assume_file, "JSON file of assumption records")->check(CLI::ExistingFile);

  std::vector<std::string> files;
  std::uint64_t p = 0;
  std::vector<std::string> normal, t_places;
  bool t_given = false;
  std::string mode;

  auto* chartable = app.add_subcommand("chartable", "character table of a group, or re-verify an exported table");
  chartable->add_option("files", files, "group or exported table files")->required();

  auto* classify = app.add_subcommand("classify", "which unconditional result covers G+ at p");
  classify->add_option("files", files, "group files (G+) or extension files (G+ = G/<j>)")->required();
  classify->add_option("-p,--prime", p, "the prime p")->required();
  classify->add_option("--normal", normal, "generators of N in cycle notation");

  auto* stick = app.add_subcommand("stickelberger", "theta_S^T and its integrality");
  stick->add_option("files", files, "extension files")->required();
  auto* t_opt = stick->add_option("-T,--T", t_places, "places of T (default: those flagged T)");
  stick->add_flag("--no-T", t_given, "use T = {}");

  auto* check = app.add_subcommand("check", "Brumer, Brumer-Stark or dual strong Brumer-Stark check");
  check->add_option("mode", mode, "brumer | bs | dual-sbs")->required()->check(CLI::IsMember({"brumer", "bs", "dual-sbs"}));
  check->add_option("files", files, "extension files")->required();
  check->add_option("-p,--prime", p, "the prime p")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputErrorExit;
  }

  try {
    if (!opt.assume_file.empty()) {
      try {
        opt.assumptions = assumptions_from_json(load(opt.assume_file));
      } catch (const InputError& e) {
        throw FileError(opt.assume_file, e.what());
      }
    }
    std::vector<Report> reports;
    if (*chartable) {
      auto inputs = load_all<TableInput>(files, [](const Json& j) {
        TableInput in;
        if (j.contains("characters")) {
          in.group = group_from_json(j.value("group", Json())).group;
          in.imported = j;
        } else {
          in.group = group_from_json(j).group;
        }
        return in;
      });
      reports = run_all(files, inputs, opt.cfg.jobs, [&](const TableInput& in) { return chartable_report(in, opt); });
    } else if (*classify) {
      auto inputs = load_all<ClassifyInput>(files, [&](const Json& j) { return classify_input(j, normal); });
      reports = run_all(files, inputs, opt.cfg.jobs, [&](const ClassifyInput& in) { return classify_report(in, p, opt); });
    } else if (*stick) {
      std::optional<std::vector<std::string>> t;
      if (t_given) t = std::vector<std::string>{};
      else if (t_opt->count()) t = t_places;
      auto inputs = load_all<ExtensionDatum>(files, [](const Json& j) { return extension_from_json(j); });
      reports = run_all(files, inputs, opt.cfg.jobs, [&](const ExtensionDatum& d) { return stickelberger_report(d, t, opt); });
    } else if (*check) {
      auto inputs = load_all<ExtensionDatum>(files, [&](const Json& j) {
        ExtensionDatum d = extension_from_json(j);
        apply_assumptions(d, opt.assumptions);
        return d;
      });
      reports = run_all(files, inputs, opt.cfg.jobs, [&](const ExtensionDatum& d) { return check_report(d, mode, p, opt); });
    }
    return emit(reports, opt);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputErrorExit;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputErrorExit;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputErrorExit;
  }
}
