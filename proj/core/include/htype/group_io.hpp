#pragma once

#include <string>
#include <string_view>

#include "htype/group.hpp"

namespace htype {

/// Parses a group descriptor:
///   {"family":"heisenberg","r":1}
///   {"family":"quaternionic","n":1}
///   {"family":"custom","m":..,"k":..,"j_maps":[...]}
/// j_maps holds k matrices, each either nested rows or a flat row-major list.
/// Custom groups are not validated here; see require_htype().
HTypeGroup group_from_json(std::string_view text);

std::string group_to_json(const HTypeGroup& group);

/// Accepts the JSON form above or the shorthands "heisenberg:R" and
/// "quaternionic:N".
HTypeGroup parse_group_spec(std::string_view spec);

/// "heisenberg:1", "quaternionic:2", or "custom(m=..,k=..)".
std::string group_label(const HTypeGroup& group);

}  // namespace htype
