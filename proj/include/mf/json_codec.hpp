#pragma once

#include <string>
#include <string_view>

#include "mf/model.hpp"

namespace mf {

// Accepts one MovingFeature object or a top-level array of them. Each
// feature yields exactly one track. Features without "id" are named by
// position: "A", "B", ..., "Z", "AA", ...
ParseResult parse_json(std::string_view doc);

// One object for a single feature, an array otherwise. stBoundedBy is
// recomputed from the data. Throws kGapNotRepresentable for multi-track
// geometry.
std::string write_json(const FeatureCollection& collection);

}  // namespace mf
