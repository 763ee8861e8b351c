#pragma once

#include "json.hpp"
#include "shallow/canonize.h"
#include "shallow/ranges.h"

namespace shallow::detail {

using nlohmann::json;

json point_json(Point2 p);
Point2 point_from(const json& j);
json line_json(const Line2& l);
Line2 line_from(const json& j);
json range_json(const Range& r);
Range range_from(const json& j);
json provenance_json(const Provenance& p);
Provenance provenance_from(const json& j);

}  // namespace shallow::detail
