#include "mf/json_codec.hpp"

#include <algorithm>

#include "json.hpp"
#include "mf/error.hpp"
#include "mf/validate.hpp"

namespace mf {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Removes commas that directly precede a closing bracket or brace, outside
// string literals. Returns how many were removed.
std::size_t strip_trailing_commas(std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t removed = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) {
        out += text[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == ',') {
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r')) ++j;
      if (j < text.size() && (text[j] == ']' || text[j] == '}')) {
        ++removed;
        continue;
      }
    }
    out += c;
  }
  text = std::move(out);
  return removed;
}

std::string letter_id(std::size_t index) {
  std::string id;
  ++index;
  while (index > 0) {
    --index;
    id.insert(id.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return id;
}

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kMalformedJson, where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) malformed(where, std::string("missing \"") + key + "\"");
  return *it;
}

InterpolationMode interpolation_of(const json& obj, InterpolationMode fallback, const std::string& where) {
  auto it = obj.find("interpolations");
  if (it == obj.end()) it = obj.find("interpolation");
  if (it == obj.end()) return fallback;
  if (!it->is_string()) malformed(where, "interpolation must be a string");
  const auto mode = parse_interpolation(it->get<std::string>());
  if (!mode) {
    throw Error(ErrorCode::kUnknownInterpolation, where + ": unknown interpolation '" + it->get<std::string>() + "'");
  }
  return *mode;
}

std::vector<TimeInstant> datetimes(const json& arr, const std::string& where) {
  if (!arr.is_array()) malformed(where, "\"datetimes\" must be an array");
  std::vector<TimeInstant> out;
  for (const auto& v : arr) {
    if (!v.is_string()) malformed(where, "datetimes must be ISO-8601 strings");
    const auto t = try_parse_iso8601(v.get<std::string>());
    if (!t) throw Error(ErrorCode::kBadTimestamp, where + ": bad timestamp '" + v.get<std::string>() + "'");
    if (!out.empty() && *t <= out.back()) {
      throw Error(ErrorCode::kNonIncreasingDatetimes, where + ": datetimes are not strictly increasing at " +
                                                          v.get<std::string>());
    }
    out.push_back(*t);
  }
  return out;
}

TemporalGeometry read_geometry(const json& g, const std::string& where) {
  if (!g.is_object()) malformed(where, "\"temporalGeometry\" must be an object");
  const json& type = member(g, "type", where);
  if (!type.is_string() || type.get<std::string>() != "MovingPoint") {
    throw Error(ErrorCode::kUnsupportedGeometryType,
                where + ": geometry type " + type.dump() + " is not supported, only MovingPoint");
  }
  const json& coords = member(g, "coordinates", where);
  if (!coords.is_array()) malformed(where, "\"coordinates\" must be an array");
  const auto times = datetimes(member(g, "datetimes", where), where);
  if (coords.size() != times.size()) {
    throw Error(ErrorCode::kParallelArrayLengthMismatch,
                where + ": " + std::to_string(coords.size()) + " coordinates but " +
                    std::to_string(times.size()) + " datetimes");
  }

  TemporalGeometry geometry;
  geometry.interpolation = interpolation_of(g, InterpolationMode::kLinear, where);
  Track track;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const json& c = coords[i];
    if (!c.is_array() || c.size() < 2 || c.size() > 3 ||
        !std::all_of(c.begin(), c.end(), [](const json& v) { return v.is_number(); })) {
      malformed(where, "coordinate " + std::to_string(i) + " must be an array of 2 or 3 numbers");
    }
    std::vector<double> xyz;
    for (const auto& v : c) xyz.push_back(v.get<double>());
    track.samples.push_back({times[i], Position(xyz)});
  }
  if (!track.samples.empty()) geometry.tracks.push_back(std::move(track));
  return geometry;
}

TemporalProperty read_property(const json& p, const std::string& where) {
  if (!p.is_object()) malformed(where, "temporal property must be an object");
  TemporalProperty prop;
  const json& name = member(p, "name", where);
  if (!name.is_string()) malformed(where, "\"name\" must be a string");
  prop.name = name.get<std::string>();
  const std::string here = where + " property '" + prop.name + "'";

  const json& values = member(p, "values", here);
  if (!values.is_array()) malformed(here, "\"values\" must be an array");
  const auto times = datetimes(member(p, "datetimes", here), here);
  if (values.size() != times.size()) {
    throw Error(ErrorCode::kParallelArrayLengthMismatch,
                here + ": " + std::to_string(values.size()) + " values but " + std::to_string(times.size()) +
                    " datetimes");
  }

  const auto all = [&](auto pred) { return std::all_of(values.begin(), values.end(), pred); };
  if (all([](const json& v) { return v.is_number_integer(); })) {
    prop.value_type = ValueType::kInteger;
  } else if (all([](const json& v) { return v.is_number(); })) {
    prop.value_type = ValueType::kReal;
  } else if (all([](const json& v) { return v.is_string(); })) {
    prop.value_type = ValueType::kText;
  } else if (all([](const json& v) { return v.is_boolean(); })) {
    prop.value_type = ValueType::kBoolean;
  } else {
    throw Error(ErrorCode::kBadValue, here + ": values must all be numbers, all strings or all booleans");
  }
  const bool numeric = prop.value_type == ValueType::kInteger || prop.value_type == ValueType::kReal;
  prop.interpolation =
      interpolation_of(p, numeric ? InterpolationMode::kLinear : InterpolationMode::kStepwise, here);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const json& v = values[i];
    Value value;
    switch (prop.value_type) {
      case ValueType::kInteger: value = v.get<std::int64_t>(); break;
      case ValueType::kReal: value = v.get<double>(); break;
      case ValueType::kText: value = v.get<std::string>(); break;
      case ValueType::kBoolean: value = v.get<bool>(); break;
    }
    prop.samples.push_back({times[i], std::move(value)});
  }
  return prop;
}

std::optional<STBounds> read_bounds(const json& b, const std::string& where) {
  if (!b.is_object()) malformed(where, "\"stBoundedBy\" must be an object");
  const json& bbox = member(b, "bbox", where);
  if (!bbox.is_array() || (bbox.size() != 4 && bbox.size() != 6) ||
      !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); })) {
    malformed(where, "\"bbox\" must hold 4 or 6 numbers");
  }
  const std::size_t dims = bbox.size() / 2;
  std::vector<double> lower, upper;
  for (std::size_t i = 0; i < dims; ++i) {
    lower.push_back(bbox[i].get<double>());
    upper.push_back(bbox[i + dims].get<double>());
  }
  const json& period = member(b, "period", where);
  const json& begin = member(period, "begin", where);
  const json& end = member(period, "end", where);
  if (!begin.is_string() || !end.is_string()) malformed(where, "period ends must be ISO-8601 strings");
  STBounds bounds;
  bounds.lower = Position(lower);
  bounds.upper = Position(upper);
  bounds.period = {parse_iso8601(begin.get<std::string>()), parse_iso8601(end.get<std::string>())};
  return bounds;
}

MovingFeature read_feature(const json& obj, std::size_t index, ParseResult& result,
                           std::optional<STBounds>& declared) {
  const std::string where = "feature #" + std::to_string(index);
  if (!obj.is_object()) malformed(where, "expected a MovingFeature object");
  const json& type = member(obj, "type", where);
  if (!type.is_string() || type.get<std::string>() != "MovingFeature") {
    malformed(where, "\"type\" must be \"MovingFeature\"");
  }

  MovingFeature f;
  if (const auto id = obj.find("id"); id != obj.end()) {
    if (id->is_string()) f.id = id->get<std::string>();
    else if (id->is_number_integer()) f.id = id->dump();
    else malformed(where, "\"id\" must be a string or an integer");
  } else {
    f.id = letter_id(index);
    result.diagnostics.push_back(
        {Severity::kInfo, "ASSIGNED_ID", where + " has no \"id\"; assigned '" + f.id + "'"});
  }
  const std::string here = "feature '" + f.id + "'";

  if (const auto g = obj.find("temporalGeometry"); g != obj.end()) f.geometry = read_geometry(*g, here);
  if (const auto props = obj.find("temporalProperties"); props != obj.end()) {
    if (!props->is_array()) malformed(here, "\"temporalProperties\" must be an array");
    for (const auto& p : *props) f.temporal_properties.push_back(read_property(p, here));
  }
  if (const auto b = obj.find("stBoundedBy"); b != obj.end()) {
    auto fb = read_bounds(*b, here);
    if (!declared) {
      declared = fb;
    } else {
      for (std::size_t i = 0; i < std::min(declared->lower.dims(), fb->lower.dims()); ++i) {
        declared->lower[i] = std::min(declared->lower[i], fb->lower[i]);
        declared->upper[i] = std::max(declared->upper[i], fb->upper[i]);
      }
      declared->period.begin = std::min(declared->period.begin, fb->period.begin);
      declared->period.end = std::max(declared->period.end, fb->period.end);
    }
  }
  if (const auto props = obj.find("properties"); props != obj.end()) {
    if (!props->is_object()) malformed(here, "\"properties\" must be an object");
    for (const auto& [key, value] : props->items()) {
      f.static_properties[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  if (const auto crs = obj.find("crs"); crs != obj.end()) {
    if (crs->is_string()) {
      f.crs = crs->get<std::string>();
    } else if (crs->is_object() && crs->contains("properties") && (*crs)["properties"].contains("name") &&
               (*crs)["properties"]["name"].is_string()) {
      f.crs = (*crs)["properties"]["name"].get<std::string>();
    } else {
      malformed(here, "unsupported \"crs\" form");
    }
  }
  return f;
}

ordered_json value_json(const Value& v) {
  struct Visitor {
    ordered_json operator()(std::int64_t i) const { return i; }
    ordered_json operator()(double d) const { return d; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, v);
}

ordered_json feature_json(const MovingFeature& f) {
  if (f.geometry.tracks.size() > 1) {
    throw Error(ErrorCode::kGapNotRepresentable,
                "feature '" + f.id + "' has " + std::to_string(f.geometry.tracks.size()) +
                    " tracks; JSON cannot express temporal gaps");
  }
  ordered_json out;
  out["type"] = "MovingFeature";
  out["id"] = f.id;
  if (f.crs) out["crs"] = {{"type", "Name"}, {"properties", {{"name", *f.crs}}}};

  ordered_json coords = ordered_json::array();
  ordered_json times = ordered_json::array();
  for (const auto& track : f.geometry.tracks) {
    for (const auto& s : track.samples) {
      ordered_json c = ordered_json::array();
      for (const double v : s.position.coords()) c.push_back(v);
      coords.push_back(std::move(c));
      times.push_back(format_iso8601(s.time));
    }
  }
  out["temporalGeometry"] = {{"type", "MovingPoint"},
                             {"coordinates", std::move(coords)},
                             {"datetimes", std::move(times)},
                             {"interpolations", std::string(to_string(f.geometry.interpolation))}};

  if (!f.temporal_properties.empty()) {
    ordered_json props = ordered_json::array();
    for (const auto& p : f.temporal_properties) {
      ordered_json values = ordered_json::array();
      ordered_json dts = ordered_json::array();
      for (const auto& s : p.samples) {
        values.push_back(value_json(s.value));
        dts.push_back(format_iso8601(s.time));
      }
      props.push_back({{"name", p.name},
                       {"values", std::move(values)},
                       {"datetimes", std::move(dts)},
                       {"interpolations", std::string(to_string(p.interpolation))}});
    }
    out["temporalProperties"] = std::move(props);
  }

  if (const auto b = feature_bounds(f)) {
    ordered_json bbox = ordered_json::array();
    for (const double v : b->lower.coords()) bbox.push_back(v);
    for (const double v : b->upper.coords()) bbox.push_back(v);
    out["stBoundedBy"] = {
        {"bbox", std::move(bbox)},
        {"period", {{"begin", format_iso8601(b->period.begin)}, {"end", format_iso8601(b->period.end)}}}};
  }
  if (!f.static_properties.empty()) {
    ordered_json props = ordered_json::object();
    for (const auto& [k, v] : f.static_properties) props[k] = v;
    out["properties"] = std::move(props);
  }
  return out;
}

}  // namespace

ParseResult parse_json(std::string_view doc) {
  std::string text(doc);
  ParseResult result;
  if (const std::size_t n = strip_trailing_commas(text); n > 0) {
    result.diagnostics.push_back(
        {Severity::kWarning, "JSON_TRAILING_COMMA", std::to_string(n) + " trailing comma(s) ignored"});
  }
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }

  std::optional<STBounds> declared;
  try {
    if (root.is_array()) {
      for (std::size_t i = 0; i < root.size(); ++i) {
        result.collection.features.push_back(read_feature(root[i], i, result, declared));
      }
    } else {
      result.collection.features.push_back(read_feature(root, 0, result, declared));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  result.collection.bounds = declared;
  auto bounds = check_declared_bounds(result.collection);
  result.diagnostics.insert(result.diagnostics.end(), bounds.begin(), bounds.end());
  return result;
}

std::string write_json(const FeatureCollection& collection) {
  if (collection.features.size() == 1) return feature_json(collection.features.front()).dump(2) + "\n";
  ordered_json arr = ordered_json::array();
  for (const auto& f : collection.features) arr.push_back(feature_json(f));
  return arr.dump(2) + "\n";
}

}  // namespace mf
