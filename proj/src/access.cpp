#include "mf/access.hpp"

#include <algorithm>
#include <cmath>

#include "mf/error.hpp"

namespace mf {
namespace {

void require_linear(const MovingFeature& f, const char* op) {
  if (f.geometry.interpolation != InterpolationMode::kLinear) {
    throw Error(ErrorCode::kUnsupportedInterpolation,
                std::string(op) + " needs Linear geometry; feature '" + f.id + "' is " +
                    std::string(to_string(f.geometry.interpolation)));
  }
}

double dot(const Position& a, const Position& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dims(); ++i) s += a[i] * b[i];
  return s;
}

Position minus(const Position& a, const Position& b) {
  Position out = a;
  for (std::size_t i = 0; i < a.dims(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Time span [lo, hi] (in epoch ms, fractional) during which a segment stays
// within tol of target, or nothing.
struct Window {
  double lo;
  double hi;
};

std::optional<Window> near_window(const TimedPosition& a, const TimedPosition& b, const Position& target,
                                  double tol) {
  const Position d = minus(b.position, a.position);
  const Position w = minus(target, a.position);
  const double len2 = dot(d, d);
  const double t0 = static_cast<double>(a.time.epoch_ms);
  const double span = static_cast<double>(millis_between(a.time, b.time));
  if (len2 == 0.0) {
    if (std::sqrt(dot(w, w)) <= tol) return Window{t0, t0 + span};
    return std::nullopt;
  }
  const double u0 = dot(w, d) / len2;
  const double min2 = std::max(0.0, dot(w, w) - dot(w, d) * u0);
  const double slack = tol * tol - min2;
  if (slack < 0.0) return std::nullopt;
  const double half = std::sqrt(slack / len2);
  const double lo = std::max(0.0, u0 - half);
  const double hi = std::min(1.0, u0 + half);
  if (lo > hi) return std::nullopt;
  return Window{t0 + lo * span, t0 + hi * span};
}

// Parameter range u in [lo, hi] where a + u (b - a) lies within [min, max].
bool clip_axis(double a, double b, double min, double max, double& lo, double& hi) {
  const double d = b - a;
  if (d == 0.0) return min <= a && a <= max;
  double u1 = (min - a) / d;
  double u2 = (max - a) / d;
  if (u1 > u2) std::swap(u1, u2);
  lo = std::max(lo, u1);
  hi = std::min(hi, u2);
  return lo <= hi;
}

bool inside(const Position& p, const STBounds& box, std::size_t axes) {
  for (std::size_t i = 0; i < axes; ++i) {
    if (p[i] < box.lower[i] || p[i] > box.upper[i]) return false;
  }
  return true;
}

TemporalProperty clip_property(const TemporalProperty& p, TimeInstant t1, TimeInstant t2) {
  TemporalProperty out = p;
  out.samples.clear();
  if (p.samples.empty()) return out;
  const TimeInstant lo = std::max(t1, p.samples.front().time);
  const TimeInstant hi = std::min(t2, p.samples.back().time);
  if (lo > hi) return out;

  switch (p.interpolation) {
    case InterpolationMode::kDiscrete:
      for (const auto& s : p.samples) {
        if (lo <= s.time && s.time <= hi) out.samples.push_back(s);
      }
      break;
    case InterpolationMode::kStepwise:
      out.samples.push_back({lo, *value_at(p, lo)});
      for (const auto& s : p.samples) {
        if (lo < s.time && s.time <= hi) out.samples.push_back(s);
      }
      break;
    case InterpolationMode::kLinear: {
      const auto first = value_at(p, lo);
      if (!first) return out;
      out.samples.push_back({lo, *first});
      for (const auto& s : p.samples) {
        if (lo < s.time && s.time < hi) out.samples.push_back(s);
      }
      if (hi > lo) {
        const auto last = value_at(p, hi);
        if (last) out.samples.push_back({hi, *last});
      }
      break;
    }
  }
  return out;
}

}  // namespace

SampleResult<Position> location_at(const MovingFeature& feature, TimeInstant t) {
  return position_at(feature.geometry, t);
}

SampleResult<VelocityVector> velocity_at(const MovingFeature& feature, TimeInstant t) {
  require_linear(feature, "velocity_at");
  const auto where = locate(feature.geometry, t);
  if (!where) return SampleResult<VelocityVector>::non_value(where.kind());
  const auto& samples = feature.geometry.tracks[where->track].samples;
  if (samples.size() < 2) return SampleResult<VelocityVector>::undefined();
  const std::size_t i = where->index + 1 < samples.size() ? where->index : where->index - 1;
  const auto& a = samples[i];
  const auto& b = samples[i + 1];
  const double seconds = seconds_between(a.time, b.time);
  VelocityVector v;
  v.components = minus(b.position, a.position);
  for (std::size_t k = 0; k < v.components.dims(); ++k) v.components[k] /= seconds;
  v.speed = std::sqrt(dot(v.components, v.components));
  return SampleResult<VelocityVector>::of(v);
}

SampleResult<Position> acceleration_at(const MovingFeature& feature, TimeInstant t) {
  require_linear(feature, "acceleration_at");
  const auto where = locate(feature.geometry, t);
  if (!where) return SampleResult<Position>::non_value(where.kind());
  const auto& samples = feature.geometry.tracks[where->track].samples;
  if (samples.size() < 2) return SampleResult<Position>::undefined();
  return SampleResult<Position>::of(Position::zero(samples.front().position.dims()));
}

MovingFeature sub_trajectory(const MovingFeature& feature, TimeInstant t1, TimeInstant t2) {
  if (!(t1 < t2)) {
    throw Error(ErrorCode::kInvalidArgument, "sub_trajectory needs t1 < t2, got " + format_iso8601(t1) +
                                                 " and " + format_iso8601(t2));
  }
  MovingFeature out = feature;
  out.geometry.tracks.clear();
  const auto mode = feature.geometry.interpolation;

  for (const auto& track : feature.geometry.tracks) {
    if (track.samples.empty()) continue;
    const TimeInstant lo = std::max(t1, track.start());
    const TimeInstant hi = std::min(t2, track.finish());
    if (lo > hi) continue;
    if (lo == hi && mode == InterpolationMode::kLinear) continue;

    TemporalGeometry single;
    single.interpolation = mode;
    single.tracks.push_back(track);
    Track clipped;
    if (mode == InterpolationMode::kDiscrete) {
      for (const auto& s : track.samples) {
        if (lo <= s.time && s.time <= hi) clipped.samples.push_back(s);
      }
    } else {
      clipped.samples.push_back({lo, *position_at(single, lo)});
      for (const auto& s : track.samples) {
        if (lo < s.time && s.time < hi) clipped.samples.push_back(s);
      }
      if (hi > lo) clipped.samples.push_back({hi, *position_at(single, hi)});
    }
    if (!clipped.samples.empty()) out.geometry.tracks.push_back(std::move(clipped));
  }
  if (out.geometry.tracks.empty()) {
    throw Error(ErrorCode::kEmptyIntersection, "feature '" + feature.id + "' has no samples in [" +
                                                   format_iso8601(t1) + ", " + format_iso8601(t2) + "]");
  }

  out.temporal_properties.clear();
  for (const auto& p : feature.temporal_properties) {
    auto clipped = clip_property(p, t1, t2);
    if (!clipped.samples.empty()) out.temporal_properties.push_back(std::move(clipped));
  }
  return out;
}

std::vector<TimeInstant> time_at_position(const MovingFeature& feature, const Position& target,
                                          double tolerance) {
  require_linear(feature, "time_at_position");
  const auto& g = feature.geometry;
  std::vector<TimeInstant> out;
  const auto within = [&](TimeInstant t) {
    const auto p = position_at(g, t);
    return p && p->dims() == target.dims() && distance(*p, target) <= tolerance + 1e-12;
  };

  for (const auto& track : g.tracks) {
    std::vector<Window> windows;
    for (std::size_t i = 0; i + 1 < track.samples.size(); ++i) {
      if (track.samples[i].position.dims() != target.dims()) continue;
      const auto w = near_window(track.samples[i], track.samples[i + 1], target, tolerance);
      if (!w) continue;
      if (!windows.empty() && w->lo <= windows.back().hi) {
        windows.back().hi = std::max(windows.back().hi, w->hi);
      } else {
        windows.push_back(*w);
      }
    }
    for (const auto& w : windows) {
      const double mid = (w.lo + w.hi) / 2.0;
      for (const double c : {std::round(mid), std::ceil(w.lo), std::floor(w.hi)}) {
        const TimeInstant t{static_cast<std::int64_t>(c)};
        if (within(t)) {
          out.push_back(t);
          break;
        }
      }
    }
    for (const auto& s : track.samples) {
      if (s.position.dims() == target.dims() && distance(s.position, target) == 0.0) out.push_back(s.time);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TimeToDistanceCurve::TimeToDistanceCurve(std::vector<DistanceBreakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {}

SampleResult<double> TimeToDistanceCurve::distance_at(TimeInstant t) const {
  if (breakpoints_.empty() || t < breakpoints_.front().time || t > breakpoints_.back().time) {
    return SampleResult<double>::out_of_range();
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](TimeInstant v, const DistanceBreakpoint& b) { return v < b.time; });
  const auto& here = *std::prev(it);
  if (here.time == t) return SampleResult<double>::of(here.distance);
  const auto& next = *it;
  if (next.track_start) return SampleResult<double>::gap();
  const double lambda = static_cast<double>(millis_between(here.time, t)) /
                        static_cast<double>(millis_between(here.time, next.time));
  return SampleResult<double>::of(std::lerp(here.distance, next.distance, lambda));
}

TimeToDistanceCurve time_to_distance(const MovingFeature& feature) {
  require_linear(feature, "time_to_distance");
  std::vector<DistanceBreakpoint> points;
  double total = 0.0;
  for (const auto& track : feature.geometry.tracks) {
    for (std::size_t i = 0; i < track.samples.size(); ++i) {
      if (i > 0) total += distance(track.samples[i - 1].position, track.samples[i].position);
      points.push_back({track.samples[i].time, total, i == 0});
    }
  }
  return TimeToDistanceCurve(std::move(points));
}

SampleResult<double> distance_between(const MovingFeature& a, const MovingFeature& b, TimeInstant t) {
  const auto pa = location_at(a, t);
  if (!pa) return SampleResult<double>::non_value(pa.kind());
  const auto pb = location_at(b, t);
  if (!pb) return SampleResult<double>::non_value(pb.kind());
  if (pa->dims() != pb->dims()) {
    throw Error(ErrorCode::kDimensionalityMismatch,
                "features '" + a.id + "' and '" + b.id + "' differ in dimensionality");
  }
  return SampleResult<double>::of(distance(*pa, *pb));
}

bool intersects_box(const MovingFeature& feature, const STBounds& box) {
  const Period& period = box.period;
  const auto mode = feature.geometry.interpolation;
  for (const auto& track : feature.geometry.tracks) {
    const auto& s = track.samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::size_t axes = std::min(box.lower.dims(), s[i].position.dims());
      const bool last = i + 1 == s.size();
      if (mode == InterpolationMode::kDiscrete || last) {
        if (period.contains(s[i].time) && inside(s[i].position, box, axes)) return true;
        continue;
      }
      if (mode == InterpolationMode::kStepwise) {
        // Holds on [t_i, t_{i+1}).
        if (s[i].time <= period.end && period.begin < s[i + 1].time && inside(s[i].position, box, axes)) {
          return true;
        }
        continue;
      }
      const TimeInstant lo_t = std::max(s[i].time, period.begin);
      const TimeInstant hi_t = std::min(s[i + 1].time, period.end);
      if (lo_t > hi_t) continue;
      const double span = static_cast<double>(millis_between(s[i].time, s[i + 1].time));
      double lo = static_cast<double>(millis_between(s[i].time, lo_t)) / span;
      double hi = static_cast<double>(millis_between(s[i].time, hi_t)) / span;
      bool ok = true;
      for (std::size_t k = 0; k < axes && ok; ++k) {
        ok = clip_axis(s[i].position[k], s[i + 1].position[k], box.lower[k], box.upper[k], lo, hi);
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace mf
