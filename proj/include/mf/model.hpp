#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mf/diagnostic.hpp"
#include "mf/time.hpp"

namespace mf {

enum class InterpolationMode { kDiscrete, kStepwise, kLinear };

/// "Discrete", "Stepwise", "Linear".
std::string_view to_string(InterpolationMode mode);

/// Case-insensitive inverse of to_string. No other spellings are accepted.
std::optional<InterpolationMode> parse_interpolation(std::string_view text);

/// A point in CRS units with 2 or 3 components. Also used for the
/// velocity and acceleration vectors of the access functions.
class Position {
 public:
  static constexpr std::size_t kMaxDims = 3;

  Position() = default;
  Position(std::initializer_list<double> coords);
  explicit Position(std::span<const double> coords);

  /// All-zero vector of the given dimensionality.
  static Position zero(std::size_t dims);

  std::size_t dims() const { return dims_; }
  double operator[](std::size_t axis) const { return coords_[axis]; }
  double& operator[](std::size_t axis) { return coords_[axis]; }
  std::span<const double> coords() const { return {coords_.data(), dims_}; }

  bool all_finite() const;

  friend bool operator==(const Position& a, const Position& b);

 private:
  std::array<double, kMaxDims> coords_{};
  std::size_t dims_ = 0;
};

double distance(const Position& a, const Position& b);

struct TimedPosition {
  TimeInstant time;
  Position position;

  friend bool operator==(const TimedPosition&, const TimedPosition&) = default;
};

/// Gap-free run of samples.
struct Track {
  std::vector<TimedPosition> samples;

  TimeInstant start() const { return samples.front().time; }
  TimeInstant finish() const { return samples.back().time; }

  friend bool operator==(const Track&, const Track&) = default;
};

/// Moving point: time-ordered tracks separated by gaps.
struct TemporalGeometry {
  std::vector<Track> tracks;
  InterpolationMode interpolation = InterpolationMode::kLinear;

  std::size_t sample_count() const;
  bool empty() const { return sample_count() == 0; }
  /// Dimensionality of the first sample, if any.
  std::optional<std::size_t> dims() const;
  /// [first sample, last sample]; requires !empty().
  Period extent() const;

  friend bool operator==(const TemporalGeometry&, const TemporalGeometry&) = default;
};

enum class ValueType { kInteger, kReal, kText, kBoolean };

using Value = std::variant<std::int64_t, double, std::string, bool>;

std::string_view to_string(ValueType type);  // "integer", "real", "text", "boolean"
ValueType type_of(const Value& value);

std::optional<ValueType> value_type_from_xsd(std::string_view xsd);  // "xsd:integer" etc.
std::string_view xsd_name(ValueType type);

/// Text form used by the segment encodings and the CLI.
std::string format_value(const Value& value);
/// Throws Error(kBadValue) when `text` does not parse as `type`.
Value parse_value(std::string_view text, ValueType type);

struct TimedValue {
  TimeInstant time;
  Value value;

  friend bool operator==(const TimedValue&, const TimedValue&) = default;
};

struct TemporalProperty {
  std::string name;
  ValueType value_type = ValueType::kReal;
  std::vector<TimedValue> samples;
  InterpolationMode interpolation = InterpolationMode::kStepwise;
  // Free-text description of the attribute (mf:AttrAnnotation in XML).
  std::optional<std::string> annotation;

  friend bool operator==(const TemporalProperty&, const TemporalProperty&) = default;
};

struct MovingFeature {
  std::string id;
  TemporalGeometry geometry;
  std::vector<TemporalProperty> temporal_properties;
  std::map<std::string, std::string> static_properties;
  std::optional<std::string> crs;

  const TemporalProperty* find_property(std::string_view name) const;

  friend bool operator==(const MovingFeature&, const MovingFeature&) = default;
};

struct STBounds {
  Position lower;
  Position upper;
  Period period;
  std::string time_unit = "sec";

  friend bool operator==(const STBounds&, const STBounds&) = default;
};

struct FeatureCollection {
  std::optional<STBounds> bounds;
  std::vector<MovingFeature> features;

  const MovingFeature* find(std::string_view id) const;

  friend bool operator==(const FeatureCollection&, const FeatureCollection&) = default;
};

/// Result of every codec parse: the collection plus non-fatal findings.
struct ParseResult {
  FeatureCollection collection;
  std::vector<Diagnostic> diagnostics;
};

// Equality of identity, geometry samples and temporal property timelines
// (name, type, interpolation, samples). Static properties, CRS, declared
// bounds and annotations are ignored.
bool sample_equal(const MovingFeature& a, const MovingFeature& b);
bool sample_equal(const FeatureCollection& a, const FeatureCollection& b);

}  // namespace mf
