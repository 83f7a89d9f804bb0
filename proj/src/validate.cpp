#include "mf/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mf/error.hpp"
#include "mf/numeric_text.hpp"

namespace mf {
namespace {

Diagnostic error(std::string code, std::string message) {
  return {Severity::kError, std::move(code), std::move(message)};
}

Diagnostic warning(std::string code, std::string message) {
  return {Severity::kWarning, std::move(code), std::move(message)};
}

std::string describe(const Position& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dims(); ++i) {
    if (i > 0) s += ", ";
    s += format_shortest(p[i]);
  }
  return s + ")";
}

bool is_numeric(ValueType t) { return t == ValueType::kInteger || t == ValueType::kReal; }

void check_geometry(const TemporalGeometry& g, std::vector<Diagnostic>& out) {
  if (g.sample_count() == 0) {
    out.push_back(error("EMPTY_GEOMETRY", "geometry has no samples"));
    return;
  }
  const std::size_t dims = *g.dims();
  bool mixed_reported = false;
  for (std::size_t k = 0; k < g.tracks.size(); ++k) {
    const auto& samples = g.tracks[k].samples;
    const std::string where = "track " + std::to_string(k);
    if (samples.empty()) {
      out.push_back(error("EMPTY_TRACK", where + " has no samples"));
      continue;
    }
    if (g.interpolation == InterpolationMode::kLinear && samples.size() < 2) {
      out.push_back(error("LINEAR_TRACK_TOO_SHORT", where + ": linear track needs ≥2 samples"));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& p = samples[i].position;
      if (p.dims() != 2 && p.dims() != 3) {
        out.push_back(error("BAD_DIMENSIONALITY", where + ": position with " +
                                                      std::to_string(p.dims()) + " coordinates"));
      } else if (p.dims() != dims && !mixed_reported) {
        out.push_back(error("MIXED_DIMENSIONALITY", where + ": positions mix 2D and 3D"));
        mixed_reported = true;
      }
      if (!p.all_finite()) {
        out.push_back(error("NON_FINITE_COORDINATE",
                            where + ": non-finite coordinate at " + format_iso8601(samples[i].time)));
      }
      if (i > 0 && samples[i].time <= samples[i - 1].time) {
        out.push_back(error("NON_INCREASING_TIMESTAMPS",
                            where + ": non-increasing timestamps at " + format_iso8601(samples[i].time)));
      }
    }
    if (k > 0 && !g.tracks[k - 1].samples.empty() && g.tracks[k - 1].finish() >= g.tracks[k].start()) {
      out.push_back(error("OVERLAPPING_TRACKS", where + " does not start after the previous track ends"));
    }
  }
}

void check_property(const TemporalProperty& p, std::vector<Diagnostic>& out) {
  const std::string where = "property '" + p.name + "'";
  if (p.name.empty()) out.push_back(error("EMPTY_PROPERTY_NAME", "temporal property without a name"));
  if (p.samples.empty()) {
    out.push_back(error("EMPTY_PROPERTY", where + " has no samples"));
    return;
  }
  if (p.interpolation == InterpolationMode::kLinear && !is_numeric(p.value_type)) {
    out.push_back(error("LINEAR_NON_NUMERIC", where + ": linear interpolation of " +
                                                  std::string(to_string(p.value_type)) + " values"));
  }
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    const auto& s = p.samples[i];
    if (type_of(s.value) != p.value_type) {
      out.push_back(error("PROPERTY_TYPE_MISMATCH",
                          where + ": " + std::string(to_string(type_of(s.value))) + " value in a " +
                              std::string(to_string(p.value_type)) + " property"));
    } else if (const double* d = std::get_if<double>(&s.value); d && !std::isfinite(*d)) {
      out.push_back(error("NON_FINITE_VALUE", where + ": non-finite value at " + format_iso8601(s.time)));
    }
    if (i > 0 && s.time <= p.samples[i - 1].time) {
      out.push_back(error("NON_INCREASING_TIMESTAMPS",
                          where + ": non-increasing timestamps at " + format_iso8601(s.time)));
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_feature(const MovingFeature& feature) {
  std::vector<Diagnostic> out;
  if (feature.id.empty()) out.push_back(error("EMPTY_ID", "feature id is empty"));
  check_geometry(feature.geometry, out);

  std::set<std::string_view> names;
  for (const auto& p : feature.temporal_properties) {
    if (!names.insert(p.name).second) {
      out.push_back(error("DUPLICATE_PROPERTY", "duplicate temporal property '" + p.name + "'"));
    }
    check_property(p, out);
  }

  if (!feature.geometry.empty()) {
    const Period extent = feature.geometry.extent();
    if (extent.begin == extent.end) {
      out.push_back(warning("ZERO_DURATION", "feature spans a single instant"));
    }
  }
  return out;
}

std::vector<Diagnostic> check_declared_bounds(const FeatureCollection& collection) {
  std::vector<Diagnostic> out;
  if (!collection.bounds) return out;
  const STBounds& b = *collection.bounds;

  const std::size_t axes = std::min(b.lower.dims(), b.upper.dims());
  bool valid = b.lower.dims() == b.upper.dims() && b.period.begin <= b.period.end;
  for (std::size_t i = 0; i < axes; ++i) valid = valid && b.lower[i] <= b.upper[i];
  if (!valid) {
    out.push_back(error("INVALID_BOUNDS", "declared bounds are not an ordered box and period"));
    return out;
  }

  std::optional<Period> data;
  for (const auto& f : collection.features) {
    bool reported = false;
    for (const auto& track : f.geometry.tracks) {
      for (const auto& s : track.samples) {
        data = data ? Period{std::min(data->begin, s.time), std::max(data->end, s.time)}
                    : Period{s.time, s.time};
        if (reported) continue;
        bool inside = b.period.contains(s.time);
        for (std::size_t i = 0; i < std::min(axes, s.position.dims()); ++i) {
          inside = inside && b.lower[i] <= s.position[i] && s.position[i] <= b.upper[i];
        }
        if (!inside) {
          out.push_back(warning("BOUNDS_NOT_COVERING",
                                "bounds do not cover data: feature '" + f.id + "' sample " +
                                    describe(s.position) + " at " + format_iso8601(s.time) +
                                    " lies outside the declared bounds"));
          reported = true;
        }
      }
    }
  }
  if (data) {
    if (b.period.end > data->end) {
      out.push_back(warning("BOUNDS_PERIOD_SLACK", "declared period end beyond data (" +
                                                       format_iso8601(b.period.end) + " > " +
                                                       format_iso8601(data->end) + ")"));
    }
    if (b.period.begin < data->begin) {
      out.push_back(warning("BOUNDS_PERIOD_SLACK", "declared period begin before data (" +
                                                       format_iso8601(b.period.begin) + " < " +
                                                       format_iso8601(data->begin) + ")"));
    }
  }
  return out;
}

std::vector<Diagnostic> validate_collection(const FeatureCollection& collection) {
  std::vector<Diagnostic> out;
  std::set<std::string_view> ids;
  for (const auto& f : collection.features) {
    if (!ids.insert(f.id).second) {
      out.push_back(error("DUPLICATE_FEATURE_ID", "duplicate feature id '" + f.id + "'"));
    }
    for (auto& d : validate_feature(f)) {
      d.message = "feature '" + f.id + "': " + d.message;
      out.push_back(std::move(d));
    }
  }
  auto bounds = check_declared_bounds(collection);
  out.insert(out.end(), std::make_move_iterator(bounds.begin()), std::make_move_iterator(bounds.end()));
  return out;
}

std::optional<STBounds> feature_bounds(const MovingFeature& feature) {
  std::optional<STBounds> out;
  for (const auto& track : feature.geometry.tracks) {
    for (const auto& s : track.samples) {
      if (!out) {
        out = STBounds{s.position, s.position, {s.time, s.time}, "sec"};
        continue;
      }
      for (std::size_t i = 0; i < std::min(out->lower.dims(), s.position.dims()); ++i) {
        out->lower[i] = std::min(out->lower[i], s.position[i]);
        out->upper[i] = std::max(out->upper[i], s.position[i]);
      }
      out->period.begin = std::min(out->period.begin, s.time);
      out->period.end = std::max(out->period.end, s.time);
    }
  }
  return out;
}

STBounds computed_bounds(const FeatureCollection& collection) {
  std::optional<STBounds> out;
  for (const auto& f : collection.features) {
    const auto fb = feature_bounds(f);
    if (!fb) continue;
    if (!out) {
      out = fb;
      continue;
    }
    for (std::size_t i = 0; i < std::min(out->lower.dims(), fb->lower.dims()); ++i) {
      out->lower[i] = std::min(out->lower[i], fb->lower[i]);
      out->upper[i] = std::max(out->upper[i], fb->upper[i]);
    }
    out->period.begin = std::min(out->period.begin, fb->period.begin);
    out->period.end = std::max(out->period.end, fb->period.end);
  }
  if (!out) throw Error(ErrorCode::kEmptyCollection, "collection has no samples to bound");
  if (collection.bounds) out->time_unit = collection.bounds->time_unit;
  return *out;
}

}  // namespace mf
