#include "htype/group_io.hpp"

#include <charconv>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "htype/error.hpp"

namespace htype {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& j, int dim) {
  Matrix M(dim, dim);
  if (!j.is_array()) throw DimensionError("J-map must be an array");
  if (!j.empty() && j.front().is_array()) {
    if (static_cast<int>(j.size()) != dim) throw DimensionError(fmt::format("J-map needs {} rows", dim));
    for (int r = 0; r < dim; ++r) {
      const auto& row = j[r];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw DimensionError(fmt::format("J-map row {} needs {} entries", r, dim));
      for (int c = 0; c < dim; ++c) M(r, c) = row[c].get<double>();
    }
  } else {
    if (static_cast<int>(j.size()) != dim * dim)
      throw DimensionError(fmt::format("flat J-map needs {} entries", dim * dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) M(r, c) = j[r * dim + c].get<double>();
  }
  return M;
}

int positive_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw std::invalid_argument(fmt::format("group descriptor needs integer field '{}'", key));
  return j[key].get<int>();
}

}  // namespace

HTypeGroup group_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("group descriptor is not valid JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw std::invalid_argument("group descriptor needs a string field 'family'");
  const auto family = j["family"].get<std::string>();
  if (family == "heisenberg") return HTypeGroup::heisenberg(positive_field(j, "r"));
  if (family == "quaternionic") return HTypeGroup::quaternionic(positive_field(j, "n"));
  if (family == "custom") {
    const int m = positive_field(j, "m");
    const int k = positive_field(j, "k");
    if (!j.contains("j_maps") || !j["j_maps"].is_array())
      throw std::invalid_argument("custom group needs 'j_maps'");
    std::vector<Matrix> maps;
    for (const auto& entry : j["j_maps"]) maps.push_back(matrix_from_json(entry, 2 * m));
    return HTypeGroup(m, k, std::move(maps));
  }
  throw std::invalid_argument(fmt::format("unknown group family '{}'", family));
}

std::string group_to_json(const HTypeGroup& group) {
  json j;
  switch (group.family()) {
    case GroupFamily::heisenberg:
      j = {{"family", "heisenberg"}, {"r", group.family_parameter()}};
      break;
    case GroupFamily::quaternionic:
      j = {{"family", "quaternionic"}, {"n", group.family_parameter()}};
      break;
    case GroupFamily::custom: {
      json maps = json::array();
      for (const auto& J : group.j_maps()) {
        json rows = json::array();
        for (int r = 0; r < J.rows(); ++r) {
          json row = json::array();
          for (int c = 0; c < J.cols(); ++c) row.push_back(J(r, c));
          rows.push_back(std::move(row));
        }
        maps.push_back(std::move(rows));
      }
      j = {{"family", "custom"}, {"m", group.m()}, {"k", group.k()}, {"j_maps", std::move(maps)}};
      break;
    }
  }
  return j.dump();
}

HTypeGroup parse_group_spec(std::string_view spec) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string_view::npos && spec[first] == '{') return group_from_json(spec);

  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument(fmt::format("cannot parse group spec '{}'", spec));
  const auto name = spec.substr(0, colon);
  const auto num = spec.substr(colon + 1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw std::invalid_argument(fmt::format("bad group parameter in '{}'", spec));
  if (name == "heisenberg") return HTypeGroup::heisenberg(value);
  if (name == "quaternionic") return HTypeGroup::quaternionic(value);
  throw std::invalid_argument(fmt::format("unknown group family '{}'", name));
}

std::string group_label(const HTypeGroup& group) {
  switch (group.family()) {
    case GroupFamily::heisenberg:
      return fmt::format("heisenberg:{}", group.family_parameter());
    case GroupFamily::quaternionic:
      return fmt::format("quaternionic:{}", group.family_parameter());
    default:
      return fmt::format("custom(m={},k={})", group.m(), group.k());
  }
}

}  // namespace htype
