#include "mf/transcode.hpp"

#include <algorithm>
#include <set>

#include "mf/error.hpp"
#include "mf/interpolation.hpp"
#include "segments.hpp"

namespace mf {
namespace {

std::string feature_label(const MovingFeature& f) { return "feature '" + f.id + "'"; }

std::string_view code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGapNotRepresentable: return kGapNotRepresentable;
    case ErrorCode::kUnsupportedInterpolation: return kInterpolationUnsupported;
    case ErrorCode::kMixedDimensionality: return kSchemaMismatch;
    default: return kAttrNotRepresentable;
  }
}

// Attribute timeline as the segment encodings will hold it: one value per
// resampled instant inside a track, evaluated under the original mode, the
// track end repeating the value of the last segment.
void resample_property(const MovingFeature& f, const TemporalProperty& p, TemporalProperty& out,
                       TranscodeReport& report) {
  const auto times = resample_times(f.geometry, f.temporal_properties);
  out = p;
  out.samples.clear();
  out.interpolation = InterpolationMode::kStepwise;

  bool undefined = false;
  auto it = times.begin();
  for (const auto& track : f.geometry.tracks) {
    if (track.samples.empty()) continue;
    while (it != times.end() && *it < track.start()) ++it;
    auto end = it;
    while (end != times.end() && *end <= track.finish()) ++end;
    for (auto t = it; t != end; ++t) {
      const bool last = t + 1 == end;
      if (last && t != it) {
        out.samples.push_back({*t, out.samples.back().value});
        continue;
      }
      const auto v = value_at(p, *t);
      if (!v) {
        undefined = true;
        report.losses.push_back({Severity::kError, std::string(kAttrNotRepresentable),
                                 feature_label(f) + ": attribute '" + p.name + "' is " +
                                     std::string(to_string(v.kind())) + " at " + format_iso8601(*t)});
        break;
      }
      out.samples.push_back({*t, *v});
    }
    it = end;
  }
  if (undefined) return;

  std::set<TimeInstant> kept;
  for (const auto& s : out.samples) kept.insert(s.time);
  std::size_t dropped = 0;
  std::size_t changed = 0;
  for (const auto& s : p.samples) {
    if (!kept.contains(s.time)) {
      ++dropped;
      continue;
    }
    const auto& now = *std::find_if(out.samples.begin(), out.samples.end(),
                                    [&](const TimedValue& o) { return o.time == s.time; });
    if (!(now.value == s.value)) ++changed;
  }
  const std::size_t inserted = out.samples.size() - (p.samples.size() - dropped);
  if (dropped > 0 || changed > 0) {
    report.losses.push_back({Severity::kWarning, std::string(kAttrResampled),
                             feature_label(f) + ": attribute '" + p.name + "' lost " +
                                 std::to_string(dropped) + " sample(s) outside the geometry and changed " +
                                 std::to_string(changed) + " at track ends"});
  } else if (inserted > 0) {
    report.losses.push_back({Severity::kInfo, std::string(kAttrResampled),
                             feature_label(f) + ": attribute '" + p.name + "' resampled at " +
                                 std::to_string(inserted) + " added instant(s)"});
  }
}

void to_segment_model(FeatureCollection& c, Encoding target, TranscodeReport& report) {
  const bool xml = target == Encoding::kXml;
  std::optional<std::string> crs;
  for (auto& f : c.features) {
    if (f.geometry.interpolation != InterpolationMode::kLinear) {
      report.losses.push_back({Severity::kError, std::string(kInterpolationUnsupported),
                               feature_label(f) + " has " + std::string(to_string(f.geometry.interpolation)) +
                                   " geometry; " + std::string(to_string(target)) +
                                   " supports only Linear"});
      continue;
    }

    std::vector<std::string> dropped;
    for (auto it = f.static_properties.begin(); it != f.static_properties.end();) {
      if (xml && (it->first == "name" || it->first == "description")) {
        ++it;
        continue;
      }
      dropped.push_back(it->first);
      it = f.static_properties.erase(it);
    }
    if (!dropped.empty()) {
      std::string names;
      for (const auto& n : dropped) names += (names.empty() ? "" : ", ") + n;
      report.losses.push_back({Severity::kWarning, std::string(kStaticPropsDropped),
                               feature_label(f) + ": static properties dropped: " + names});
    }

    if (f.crs) {
      if (crs && *crs != *f.crs) {
        report.losses.push_back({Severity::kWarning, std::string(kCrsMerged),
                                 feature_label(f) + ": CRS " + *f.crs + " replaced by " + *crs});
      }
      if (!crs) crs = f.crs;
    }

    std::vector<TemporalProperty> props(f.temporal_properties.size());
    for (std::size_t i = 0; i < props.size(); ++i) {
      const auto& p = f.temporal_properties[i];
      if (p.interpolation != InterpolationMode::kStepwise) {
        report.losses.push_back({Severity::kWarning, std::string(kPerAttrInterpolationCollapsed),
                                 feature_label(f) + ": attribute '" + p.name + "' was " +
                                     std::string(to_string(p.interpolation)) + ", written as Stepwise"});
      }
      resample_property(f, p, props[i], report);
    }
    f.temporal_properties = std::move(props);
  }
  try {
    detail::shared_schema(c);
  } catch (const Error& e) {
    report.losses.push_back({Severity::kError, std::string(kSchemaMismatch), e.what()});
  }
}

}  // namespace

bool TranscodeReport::has(std::string_view code) const {
  return std::any_of(losses.begin(), losses.end(), [&](const Diagnostic& d) { return d.code == code; });
}

MovingFeature simplify_collinear(const MovingFeature& feature) {
  if (feature.geometry.interpolation != InterpolationMode::kLinear) return feature;
  MovingFeature out = feature;
  for (auto& track : out.geometry.tracks) {
    const auto& s = track.samples;
    if (s.size() < 3) continue;
    std::vector<TimedPosition> kept{s.front()};
    std::vector<std::size_t> pending;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      TemporalGeometry line;
      line.tracks.push_back(Track{{kept.back(), s[i + 1]}});
      pending.push_back(i);
      const bool exact = std::all_of(pending.begin(), pending.end(), [&](std::size_t j) {
        const auto p = position_at(line, s[j].time);
        return p && *p == s[j].position;
      });
      if (!exact) {
        kept.push_back(s[i]);
        pending.clear();
      }
    }
    kept.push_back(s.back());
    track.samples = std::move(kept);
  }
  return out;
}

TranscodeResult transcode(const FeatureCollection& collection, Encoding target, TranscodeOptions options) {
  TranscodeResult result;
  result.converted = collection;
  auto& report = result.report;
  if (options.simplify) {
    for (auto& f : result.converted.features) f = simplify_collinear(f);
  }

  if (target == Encoding::kJson) {
    for (const auto& f : result.converted.features) {
      if (f.geometry.tracks.size() > 1) {
        report.losses.push_back({Severity::kError, std::string(kGapNotRepresentable),
                                 feature_label(f) + " has " + std::to_string(f.geometry.tracks.size()) +
                                     " tracks; JSON has no temporal gaps"});
      }
    }
  } else {
    to_segment_model(result.converted, target, report);
  }

  if (options.strict) {
    for (auto& d : report.losses) {
      if (d.severity == Severity::kWarning) d.severity = Severity::kError;
    }
  }
  if (report.refused()) return result;

  try {
    result.document = write_document(result.converted, target);
  } catch (const Error& e) {
    report.losses.push_back({Severity::kError, std::string(code_for(e.code())), e.what()});
  }
  return result;
}

}  // namespace mf
