#pragma once

#include <json.hpp>

#include "elastoscat/geometry.hpp"

namespace elastoscat::detail {

nlohmann::ordered_json curve_json(const StarlikeCurve& curve);
StarlikeCurve curve_from(const nlohmann::ordered_json& j);
Vec2 vec2_from(const nlohmann::ordered_json& j, const char* what);

}  // namespace elastoscat::detail
