#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mf/model.hpp"

// Segment-based CSV encoding:
//
//   @stboundedby,<crs>,2D,<lower>,<upper>,<begin>,<end>,<time unit>
//   @columns,mfidref,trajectory,<name>,<xsd type>,...
//   <id>,<start>,<end>,<x y x y ...>,<attr>,...
//
// Header lines may be wrapped; a line starting with blanks continues the
// previous one.

namespace mf {

struct CsvColumn {
  std::string name;
  ValueType type = ValueType::kText;
};

struct CsvHeader {
  STBounds bounds;
  std::optional<std::string> crs;
  std::size_t dims = 2;
  std::int64_t unit_ms = 1000;
  std::vector<CsvColumn> columns;
};

CsvHeader parse_csv_header(std::string_view stboundedby_line, std::string_view columns_line);

// Geometry is always Linear; each attribute column becomes a Stepwise
// property sampled at every segment start plus the end of each track.
ParseResult parse_csv(std::string_view doc);

// Requires Linear geometry, Stepwise properties, one attribute schema
// shared by all features, and text values free of commas and line breaks.
std::string write_csv(const FeatureCollection& collection);

}  // namespace mf
