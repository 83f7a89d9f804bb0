#include "segments.hpp"

#include <algorithm>
#include <cmath>

#include "mf/error.hpp"
#include "mf/interpolation.hpp"
#include "mf/validate.hpp"

namespace mf::detail {
namespace {

// Sample times of the points of one segment.
std::vector<TimeInstant> point_times(const Segment& seg) {
  const std::size_t n = seg.points.size();
  std::vector<TimeInstant> times(n);
  times.front() = seg.start;
  times.back() = seg.end;
  if (n == 2) return times;

  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cumulative[i] = cumulative[i - 1] + distance(seg.points[i - 1], seg.points[i]);
  }
  const double total = cumulative.back();
  const double duration = static_cast<double>(millis_between(seg.start, seg.end));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double offset = total > 0.0 ? duration * cumulative[i] / total : 0.0;
    times[i] = seg.start.plus_ms(static_cast<std::int64_t>(std::llround(offset)));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (times[i] <= times[i - 1]) {
      throw Error(ErrorCode::kNonChronologicalSegment,
                  seg.origin + ": points of the segment cannot be given distinct millisecond times");
    }
  }
  return times;
}

}  // namespace

MovingFeature assemble_feature(std::string id, std::vector<Segment> segments,
                               std::span<const AttrDef> attrs) {
  MovingFeature feature;
  feature.id = std::move(id);
  feature.geometry.interpolation = InterpolationMode::kLinear;
  if (segments.empty()) return feature;

  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) { return a.start < b.start; });

  std::vector<std::vector<const Segment*>> track_segments;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& seg = segments[k];
    if (seg.end <= seg.start) {
      throw Error(ErrorCode::kNonChronologicalSegment, seg.origin + ": segment end is not after its start");
    }
    const auto times = point_times(seg);
    if (k == 0) {
      feature.geometry.tracks.emplace_back();
      track_segments.emplace_back();
    } else {
      const Segment& prev = segments[k - 1];
      if (prev.end > seg.start) {
        throw Error(ErrorCode::kOverlappingSegments,
                    seg.origin + ": segment overlaps the previous segment of feature '" + feature.id + "'");
      }
      if (prev.end == seg.start) {
        if (!(prev.points.back() == seg.points.front())) {
          throw Error(ErrorCode::kDiscontinuousJunction,
                      seg.origin + ": discontinuous junction with the previous segment of feature '" +
                          feature.id + "'");
        }
      } else {
        feature.geometry.tracks.emplace_back();
        track_segments.emplace_back();
      }
    }
    auto& samples = feature.geometry.tracks.back().samples;
    const std::size_t first = samples.empty() ? 0 : 1;
    for (std::size_t i = first; i < seg.points.size(); ++i) {
      samples.push_back({times[i], seg.points[i]});
    }
    track_segments.back().push_back(&seg);
  }

  for (std::size_t j = 0; j < attrs.size(); ++j) {
    TemporalProperty prop;
    prop.name = attrs[j].name;
    prop.value_type = attrs[j].type;
    prop.interpolation = InterpolationMode::kStepwise;
    prop.annotation = attrs[j].annotation;
    for (const auto& track : track_segments) {
      for (const Segment* seg : track) prop.samples.push_back({seg->start, seg->attributes.at(j)});
      prop.samples.push_back({track.back()->end, track.back()->attributes.at(j)});
    }
    feature.temporal_properties.push_back(std::move(prop));
  }
  return feature;
}

std::vector<SegmentRow> segment_rows(const MovingFeature& feature, std::span<const AttrDef> schema) {
  const auto& g = feature.geometry;
  if (g.interpolation != InterpolationMode::kLinear) {
    throw Error(ErrorCode::kUnsupportedInterpolation,
                "feature '" + feature.id + "': segment encodings need Linear geometry, not " +
                    std::string(to_string(g.interpolation)));
  }
  std::vector<const TemporalProperty*> props;
  for (const auto& def : schema) {
    const TemporalProperty* p = feature.find_property(def.name);
    if (p == nullptr) {
      throw Error(ErrorCode::kValueNotRepresentable,
                  "feature '" + feature.id + "' lacks attribute '" + def.name + "'");
    }
    if (p->interpolation != InterpolationMode::kStepwise) {
      throw Error(ErrorCode::kUnsupportedInterpolation,
                  "feature '" + feature.id + "': attribute '" + p->name + "' is " +
                      std::string(to_string(p->interpolation)) + ", segment encodings hold Stepwise values");
    }
    props.push_back(p);
  }

  const auto times = resample_times(g, feature.temporal_properties);
  std::vector<SegmentRow> rows;
  auto it = times.begin();
  for (const auto& track : g.tracks) {
    if (track.samples.size() < 2) {
      throw Error(ErrorCode::kValueNotRepresentable,
                  "feature '" + feature.id + "': a track with fewer than two samples has no segment");
    }
    while (it != times.end() && *it < track.start()) ++it;
    auto end = it;
    while (end != times.end() && *end <= track.finish()) ++end;
    for (auto t = it; t + 1 < end; ++t) {
      SegmentRow row{*t, *(t + 1), *position_at(g, *t), *position_at(g, *(t + 1)), {}};
      for (const TemporalProperty* p : props) {
        const auto v = value_at(*p, *t);
        if (!v) {
          throw Error(ErrorCode::kValueNotRepresentable,
                      "feature '" + feature.id + "': attribute '" + p->name + "' has no value at " +
                          format_iso8601(*t));
        }
        row.attributes.push_back(*v);
      }
      rows.push_back(std::move(row));
    }
    it = end;
  }
  return rows;
}

std::vector<AttrDef> shared_schema(const FeatureCollection& collection) {
  std::vector<AttrDef> schema;
  if (collection.features.empty()) return schema;
  for (const auto& p : collection.features.front().temporal_properties) {
    schema.push_back({p.name, p.value_type, p.annotation});
  }
  for (const auto& f : collection.features) {
    bool same = f.temporal_properties.size() == schema.size();
    for (const auto& def : schema) {
      const TemporalProperty* p = f.find_property(def.name);
      same = same && p != nullptr && p->value_type == def.type;
    }
    if (!same) {
      throw Error(ErrorCode::kValueNotRepresentable,
                  "feature '" + f.id + "' does not share the attribute schema of feature '" +
                      collection.features.front().id + "'");
    }
  }
  return schema;
}

OutputFrame output_frame(const FeatureCollection& collection) {
  OutputFrame frame;
  std::optional<std::size_t> dims;
  for (const auto& f : collection.features) {
    if (!frame.crs && f.crs) frame.crs = f.crs;
    if (const auto d = f.geometry.dims()) {
      if (dims && *dims != *d) {
        throw Error(ErrorCode::kMixedDimensionality, "features mix 2D and 3D positions");
      }
      dims = d;
    }
  }

  std::optional<STBounds> data;
  try {
    data = computed_bounds(collection);
  } catch (const Error&) {
  }

  const auto& declared = collection.bounds;
  if (data) {
    const bool declared_usable = declared && declared->lower.dims() == *dims &&
                                 declared->upper.dims() == *dims &&
                                 declared->period.begin <= data->period.begin;
    frame.bounds = declared_usable ? *declared : *data;
  } else if (declared) {
    frame.bounds = *declared;
  } else {
    frame.bounds = STBounds{Position{0.0, 0.0}, Position{0.0, 0.0}, {}, "sec"};
  }
  frame.dims = dims.value_or(frame.bounds.lower.dims() == 3 ? 3 : 2);

  frame.unit_ms = unit_millis(frame.bounds.time_unit).value_or(0);
  bool expressible = frame.unit_ms > 0;
  const auto check = [&](TimeInstant t) {
    expressible = expressible &&
                  format_offset(millis_between(frame.bounds.period.begin, t), frame.unit_ms).has_value();
  };
  for (const auto& f : collection.features) {
    for (const auto& track : f.geometry.tracks) {
      for (const auto& s : track.samples) check(s.time);
    }
    for (const auto& p : f.temporal_properties) {
      for (const auto& s : p.samples) check(s.time);
    }
  }
  if (!expressible) {
    frame.bounds.time_unit = "sec";
    frame.unit_ms = 1000;
  }
  return frame;
}

std::string offset_text(const OutputFrame& frame, TimeInstant t) {
  return format_offset(millis_between(frame.bounds.period.begin, t), frame.unit_ms).value();
}

}  // namespace mf::detail
