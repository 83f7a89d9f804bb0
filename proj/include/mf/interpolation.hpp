#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mf/model.hpp"

namespace mf {

enum class SampleKind { kValue, kGap, kOutOfRange, kUndefined };

/// "VALUE", "GAP", "OUT_OF_RANGE", "UNDEFINED".
std::string_view to_string(SampleKind kind);

/// Outcome of evaluating a temporal value at an instant.
///   kGap        t lies strictly between two tracks
///   kOutOfRange t lies before the first or after the last sample
///   kUndefined  Discrete mode queried off a sample instant
template <typename T>
class SampleResult {
 public:
  static SampleResult of(T value) { return SampleResult(SampleKind::kValue, std::move(value)); }
  static SampleResult gap() { return SampleResult(SampleKind::kGap); }
  static SampleResult out_of_range() { return SampleResult(SampleKind::kOutOfRange); }
  static SampleResult undefined() { return SampleResult(SampleKind::kUndefined); }
  static SampleResult non_value(SampleKind kind) { return SampleResult(kind); }

  SampleKind kind() const { return kind_; }
  bool has_value() const { return kind_ == SampleKind::kValue; }
  explicit operator bool() const { return has_value(); }

  const T& value() const { return value_.value(); }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }

 private:
  explicit SampleResult(SampleKind kind) : kind_(kind) {}
  SampleResult(SampleKind kind, T value) : kind_(kind), value_(std::move(value)) {}

  SampleKind kind_;
  std::optional<T> value_;
};

/// Where an instant falls inside a geometry: the track and the index of
/// the latest sample at or before t. `exact` when t is a sample instant.
struct Bracket {
  std::size_t track = 0;
  std::size_t index = 0;
  bool exact = false;
};

SampleResult<Bracket> locate(const TemporalGeometry& geometry, TimeInstant t);

/// Position under the geometry's interpolation mode. A sample instant
/// always yields the stored sample bit-for-bit.
SampleResult<Position> position_at(const TemporalGeometry& geometry, TimeInstant t);

/// Stepwise values hold on [t_i, t_{i+1}). Linear integer properties are
/// evaluated as real and rounded half away from zero. Linear on text or
/// boolean values is invalid and yields kUndefined.
SampleResult<Value> value_at(const TemporalProperty& property, TimeInstant t);

/// Sorted, deduplicated union of geometry and property sample instants,
/// keeping only instants that fall inside some track.
std::vector<TimeInstant> resample_times(const TemporalGeometry& geometry,
                                        std::span<const TemporalProperty> properties);

}  // namespace mf
