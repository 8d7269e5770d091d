#include "brumer/json_io.hpp"

#include <fstream>
#include <sstream>

namespace brumer {

namespace {

std::string generator_string(const Json& g) {
  if (g.is_string()) return g.get<std::string>();
  if (!g.is_array()) throw InputError("a generator must be a cycle string or a list of cycle strings");
  std::string s;
  for (const auto& c : g) {
    if (!c.is_string()) throw InputError("cycle lists must contain strings");
    s += c.get<std::string>();
  }
  return s;
}

}  // namespace

GroupSpec group_from_json(const Json& j, std::size_t order_bound) {
  if (!j.is_object()) throw InputError("group JSON must be an object");
  if (!j.contains("degree") || !j["degree"].is_number_integer()) throw InputError("group JSON needs an integer 'degree'");
  const long degree = j["degree"].get<long>();
  if (degree <= 0) throw InputError("group degree must be positive");
  if (!j.contains("generators") || !j["generators"].is_array()) throw InputError("group JSON needs a 'generators' list");
  std::vector<Perm> gens;
  for (const auto& g : j["generators"]) gens.push_back(Perm::from_cycles(static_cast<std::size_t>(degree), generator_string(g)));
  GroupSpec spec;
  spec.group = make_group(static_cast<std::size_t>(degree), std::move(gens), order_bound);
  if (j.contains("j") && !j["j"].is_null()) {
    Perm p = Perm::from_cycles(static_cast<std::size_t>(degree), generator_string(j["j"]));
    spec.j = spec.group->index_of_checked(p);
    CentralInvolution check(spec.group, *spec.j);
    (void)check;
  }
  return spec;
}

std::vector<std::string> split_cycles(const Perm& p) {
  std::vector<std::string> out;
  std::string s = p.to_cycles();
  if (s == "()") return out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(')', start);
    out.push_back(s.substr(start, end - start + 1));
    start = end + 1;
  }
  return out;
}

Json group_to_json(const FiniteGroup& g, std::optional<std::size_t> j) {
  Json out;
  out["degree"] = g.degree();
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(split_cycles(p));
  out["generators"] = gens;
  if (j) out["j"] = g.element(*j).to_cycles();
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace brumer
