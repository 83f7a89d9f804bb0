#include "mf/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace mf {
namespace {

// Fraction of the way from a to b at t, from the exact integer offsets.
double fraction(TimeInstant a, TimeInstant b, TimeInstant t) {
  return static_cast<double>(millis_between(a, t)) / static_cast<double>(millis_between(a, b));
}

Position lerp(const Position& a, const Position& b, double lambda) {
  Position out = a;
  for (std::size_t i = 0; i < a.dims(); ++i) out[i] = std::lerp(a[i], b[i], lambda);
  return out;
}

std::optional<double> as_real(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::kValue: return "VALUE";
    case SampleKind::kGap: return "GAP";
    case SampleKind::kOutOfRange: return "OUT_OF_RANGE";
    case SampleKind::kUndefined: return "UNDEFINED";
  }
  return "UNDEFINED";
}

SampleResult<Bracket> locate(const TemporalGeometry& geometry, TimeInstant t) {
  const auto& tracks = geometry.tracks;
  if (geometry.empty()) return SampleResult<Bracket>::out_of_range();
  const Period extent = geometry.extent();
  if (!extent.contains(t)) return SampleResult<Bracket>::out_of_range();

  // Latest track starting at or before t.
  auto it = std::upper_bound(tracks.begin(), tracks.end(), t, [](TimeInstant v, const Track& tr) {
    return !tr.samples.empty() && v < tr.start();
  });
  while (it != tracks.begin() && std::prev(it)->samples.empty()) --it;
  if (it == tracks.begin()) return SampleResult<Bracket>::out_of_range();
  const std::size_t k = static_cast<std::size_t>(std::distance(tracks.begin(), it)) - 1;
  const auto& samples = tracks[k].samples;
  if (t > samples.back().time) return SampleResult<Bracket>::gap();

  auto s = std::upper_bound(samples.begin(), samples.end(), t,
                            [](TimeInstant v, const TimedPosition& p) { return v < p.time; });
  const std::size_t i = static_cast<std::size_t>(std::distance(samples.begin(), s)) - 1;
  return SampleResult<Bracket>::of(Bracket{k, i, samples[i].time == t});
}

SampleResult<Position> position_at(const TemporalGeometry& geometry, TimeInstant t) {
  const auto where = locate(geometry, t);
  if (!where) return SampleResult<Position>::non_value(where.kind());
  const auto& samples = geometry.tracks[where->track].samples;
  const auto& here = samples[where->index];
  if (where->exact) return SampleResult<Position>::of(here.position);

  switch (geometry.interpolation) {
    case InterpolationMode::kDiscrete:
      return SampleResult<Position>::undefined();
    case InterpolationMode::kStepwise:
      return SampleResult<Position>::of(here.position);
    case InterpolationMode::kLinear: {
      const auto& next = samples[where->index + 1];
      return SampleResult<Position>::of(
          lerp(here.position, next.position, fraction(here.time, next.time, t)));
    }
  }
  return SampleResult<Position>::undefined();
}

SampleResult<Value> value_at(const TemporalProperty& property, TimeInstant t) {
  const auto& samples = property.samples;
  if (samples.empty() || t < samples.front().time || t > samples.back().time) {
    return SampleResult<Value>::out_of_range();
  }
  auto s = std::upper_bound(samples.begin(), samples.end(), t,
                            [](TimeInstant v, const TimedValue& p) { return v < p.time; });
  const auto& here = *std::prev(s);
  if (here.time == t) return SampleResult<Value>::of(here.value);

  switch (property.interpolation) {
    case InterpolationMode::kDiscrete:
      return SampleResult<Value>::undefined();
    case InterpolationMode::kStepwise:
      return SampleResult<Value>::of(here.value);
    case InterpolationMode::kLinear: {
      const auto& next = *s;
      const auto a = as_real(here.value);
      const auto b = as_real(next.value);
      if (!a || !b) return SampleResult<Value>::undefined();
      const double v = std::lerp(*a, *b, fraction(here.time, next.time, t));
      if (property.value_type == ValueType::kInteger) {
        return SampleResult<Value>::of(static_cast<std::int64_t>(std::llround(v)));
      }
      return SampleResult<Value>::of(v);
    }
  }
  return SampleResult<Value>::undefined();
}

std::vector<TimeInstant> resample_times(const TemporalGeometry& geometry,
                                        std::span<const TemporalProperty> properties) {
  std::vector<TimeInstant> times;
  for (const auto& track : geometry.tracks) {
    for (const auto& s : track.samples) times.push_back(s.time);
  }
  for (const auto& p : properties) {
    for (const auto& s : p.samples) {
      if (locate(geometry, s.time).has_value()) times.push_back(s.time);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace mf
