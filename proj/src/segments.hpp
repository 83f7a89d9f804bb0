#pragma once

// Shared machinery of the two segment-based encodings (CSV and XML).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mf/model.hpp"

namespace mf::detail {

struct AttrDef {
  std::string name;
  ValueType type = ValueType::kText;
  std::optional<std::string> annotation;
};

// One encoded record: a polyline traversed at constant speed over [start, end].
struct Segment {
  TimeInstant start;
  TimeInstant end;
  std::vector<Position> points;
  std::vector<Value> attributes;
  std::string origin;  // "line 7", "trajectory LT0003", ... for messages
};

// Chains the segments of one feature into tracks. Segments touching in
// time must share the junction position exactly; later segments start new
// tracks. Intermediate points of a polyline get times proportional to the
// travelled distance.
MovingFeature assemble_feature(std::string id, std::vector<Segment> segments,
                               std::span<const AttrDef> attrs);

// One output segment between consecutive instants of resample_times.
struct SegmentRow {
  TimeInstant start;
  TimeInstant end;
  Position from;
  Position to;
  std::vector<Value> attributes;  // in schema order
};

// Requires Linear geometry and Stepwise properties covering every segment start.
std::vector<SegmentRow> segment_rows(const MovingFeature& feature, std::span<const AttrDef> schema);

// Attribute schema common to all features; throws kValueNotRepresentable
// when features disagree on names or types.
std::vector<AttrDef> shared_schema(const FeatureCollection& collection);

struct OutputFrame {
  STBounds bounds;
  std::int64_t unit_ms = 1000;
  std::optional<std::string> crs;
  std::size_t dims = 2;
};

// Bounds and time unit for a segment document: the declared bounds when
// they start no later than the data, otherwise the computed ones. Falls
// back to seconds when the declared unit cannot express every offset.
OutputFrame output_frame(const FeatureCollection& collection);

// Offset text of `t` in the frame's unit.
std::string offset_text(const OutputFrame& frame, TimeInstant t);

}  // namespace mf::detail
