#include "mf/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mf/error.hpp"
#include "mf/numeric_text.hpp"

namespace mf {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::kInfo: return "INFO";
    case Severity::kWarning: return "WARNING";
    case Severity::kError: return "ERROR";
  }
  return "ERROR";
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string line(to_string(d.severity));
  line += ' ';
  line += d.code;
  line += ' ';
  line += d.message;
  return line;
}

std::string_view to_string(InterpolationMode mode) {
  switch (mode) {
    case InterpolationMode::kDiscrete: return "Discrete";
    case InterpolationMode::kStepwise: return "Stepwise";
    case InterpolationMode::kLinear: return "Linear";
  }
  return "Linear";
}

std::optional<InterpolationMode> parse_interpolation(std::string_view text) {
  std::string lower;
  for (const char c : trim(text)) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "discrete") return InterpolationMode::kDiscrete;
  if (lower == "stepwise") return InterpolationMode::kStepwise;
  if (lower == "linear") return InterpolationMode::kLinear;
  return std::nullopt;
}

Position::Position(std::initializer_list<double> coords)
    : Position(std::span<const double>(coords.begin(), coords.size())) {}

Position::Position(std::span<const double> coords) {
  if (coords.size() > kMaxDims) {
    throw Error(ErrorCode::kInvalidArgument,
                "position with " + std::to_string(coords.size()) + " coordinates");
  }
  std::copy(coords.begin(), coords.end(), coords_.begin());
  dims_ = coords.size();
}

Position Position::zero(std::size_t dims) {
  const std::array<double, kMaxDims> zeros{};
  return Position(std::span<const double>(zeros.data(), std::min(dims, kMaxDims)));
}

bool Position::all_finite() const {
  const auto c = coords();
  return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
}

bool operator==(const Position& a, const Position& b) {
  if (a.dims_ != b.dims_) return false;
  for (std::size_t i = 0; i < a.dims_; ++i) {
    if (a.coords_[i] != b.coords_[i]) return false;
  }
  return true;
}

double distance(const Position& a, const Position& b) {
  double sum = 0.0;
  const std::size_t n = std::min(a.dims(), b.dims());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = b[i] - a[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::size_t TemporalGeometry::sample_count() const {
  std::size_t n = 0;
  for (const auto& track : tracks) n += track.samples.size();
  return n;
}

std::optional<std::size_t> TemporalGeometry::dims() const {
  for (const auto& track : tracks) {
    if (!track.samples.empty()) return track.samples.front().position.dims();
  }
  return std::nullopt;
}

Period TemporalGeometry::extent() const {
  Period p{};
  bool first = true;
  for (const auto& track : tracks) {
    if (track.samples.empty()) continue;
    if (first) {
      p = {track.start(), track.finish()};
      first = false;
    } else {
      p.begin = std::min(p.begin, track.start());
      p.end = std::max(p.end, track.finish());
    }
  }
  return p;
}

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kInteger: return "integer";
    case ValueType::kReal: return "real";
    case ValueType::kText: return "text";
    case ValueType::kBoolean: return "boolean";
  }
  return "text";
}

ValueType type_of(const Value& value) {
  switch (value.index()) {
    case 0: return ValueType::kInteger;
    case 1: return ValueType::kReal;
    case 2: return ValueType::kText;
    default: return ValueType::kBoolean;
  }
}

std::optional<ValueType> value_type_from_xsd(std::string_view xsd) {
  xsd = trim(xsd);
  if (xsd.starts_with("xsd:")) xsd.remove_prefix(4);
  else if (xsd.starts_with("xs:")) xsd.remove_prefix(3);
  else return std::nullopt;
  if (xsd == "integer" || xsd == "int" || xsd == "long" || xsd == "short") return ValueType::kInteger;
  if (xsd == "double" || xsd == "float" || xsd == "decimal") return ValueType::kReal;
  if (xsd == "string") return ValueType::kText;
  if (xsd == "boolean") return ValueType::kBoolean;
  return std::nullopt;
}

std::string_view xsd_name(ValueType type) {
  switch (type) {
    case ValueType::kInteger: return "xsd:integer";
    case ValueType::kReal: return "xsd:double";
    case ValueType::kText: return "xsd:string";
    case ValueType::kBoolean: return "xsd:boolean";
  }
  return "xsd:string";
}

std::string format_value(const Value& value) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_decimal(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, value);
}

Value parse_value(std::string_view text, ValueType type) {
  const auto fail = [&]() -> Error {
    return Error(ErrorCode::kBadValue, "'" + std::string(text) + "' is not a valid " +
                                           std::string(to_string(type)) + " value");
  };
  switch (type) {
    case ValueType::kInteger:
      if (auto v = parse_int(text)) return *v;
      throw fail();
    case ValueType::kReal:
      if (auto v = parse_double(text)) return *v;
      throw fail();
    case ValueType::kText:
      return std::string(text);
    case ValueType::kBoolean: {
      const auto t = trim(text);
      if (t == "true" || t == "1") return true;
      if (t == "false" || t == "0") return false;
      throw fail();
    }
  }
  throw fail();
}

const TemporalProperty* MovingFeature::find_property(std::string_view name) const {
  for (const auto& p : temporal_properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const MovingFeature* FeatureCollection::find(std::string_view id) const {
  for (const auto& f : features) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

bool sample_equal(const MovingFeature& a, const MovingFeature& b) {
  if (a.id != b.id || a.geometry != b.geometry) return false;
  if (a.temporal_properties.size() != b.temporal_properties.size()) return false;
  for (const auto& pa : a.temporal_properties) {
    const TemporalProperty* pb = b.find_property(pa.name);
    if (pb == nullptr || pa.value_type != pb->value_type ||
        pa.interpolation != pb->interpolation || pa.samples != pb->samples) {
      return false;
    }
  }
  return true;
}

bool sample_equal(const FeatureCollection& a, const FeatureCollection& b) {
  if (a.features.size() != b.features.size()) return false;
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    if (!sample_equal(a.features[i], b.features[i])) return false;
  }
  return true;
}

}  // namespace mf
