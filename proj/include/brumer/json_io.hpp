#pragma once

#include <string>

#include <json.hpp>

#include "brumer/group.hpp"

namespace brumer {

using Json = nlohmann::ordered_json;

/// A group read from JSON, with the optional designated involution j.
struct GroupSpec {
  GroupPtr group;
  std::optional<std::size_t> j;
};

/// {"degree": n, "generators": [["(1,2,3)"], ["(1,2)", "(3,4)"]], "j": "(1,2)"}.
/// A generator may also be a single cycle string.
GroupSpec group_from_json(const Json& j, std::size_t order_bound = FiniteGroup::kDefaultOrderBound);
Json group_to_json(const FiniteGroup& g, std::optional<std::size_t> j = std::nullopt);

/// Splits "(1,2)(3,4)" into {"(1,2)", "(3,4)"}.
std::vector<std::string> split_cycles(const Perm& p);

Json read_json_file(const std::string& path);

}  // namespace brumer
