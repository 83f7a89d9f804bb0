#pragma once

#include <string>
#include <string_view>

#include "mf/model.hpp"

namespace mf {

inline constexpr std::string_view kMfNamespace = "http://schemas.opengis.net/mf-core/1.0";
inline constexpr std::string_view kGmlNamespace = "http://www.opengis.net/gml/3.2";

struct XmlParseOptions {
  // Unknown elements become errors instead of warnings.
  bool strict = false;
};

// mf:LinearTrajectory segments are grouped by mfIdRef and chained into
// tracks. Attributes are segment constants and parse as Stepwise; the
// gml:name and gml:description of a member become static properties.
ParseResult parse_xml(std::string_view doc, XmlParseOptions options = {});

// Requires Linear geometry, Stepwise properties and one attribute schema
// shared by all features. Static properties other than "name" and
// "description" are not written.
std::string write_xml(const FeatureCollection& collection);

}  // namespace mf
