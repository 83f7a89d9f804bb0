#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mf::testing {
namespace {

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::vector<TimeInstant> random_times(Rng& rng, TimeInstant start, std::size_t n) {
  std::vector<TimeInstant> out;
  TimeInstant t = start;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(t);
    t = t.plus_ms(coin(rng, 0.2) ? uniform_int(rng, 1, 10) : uniform_int(rng, 1, 600'000));
  }
  return out;
}

TimeInstant random_start(Rng& rng) { return TimeInstant{uniform_int(rng, 0, 4'000'000'000'000)}; }

std::string random_text(Rng& rng) {
  static constexpr std::string_view kAlphabet = "abcxyzABCXYZ0189 _-.<>&\"'";
  std::string s;
  const auto n = uniform_int(rng, 1, 8);
  for (std::int64_t i = 0; i < n; ++i) s += kAlphabet[uniform_int(rng, 0, kAlphabet.size() - 1)];
  if (s.front() == ' ') s.front() = 'q';
  if (s.back() == ' ') s.back() = 'q';
  return s;
}

InterpolationMode random_mode(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return InterpolationMode::kDiscrete;
    case 1: return InterpolationMode::kStepwise;
    default: return InterpolationMode::kLinear;
  }
}

}  // namespace

std::string data_path(std::string_view name) { return std::string(MF_TEST_DATA) + "/" + std::string(name); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<AttrSpec> random_schema(Rng& rng) {
  static constexpr ValueType kTypes[] = {ValueType::kInteger, ValueType::kReal, ValueType::kText,
                                         ValueType::kBoolean};
  std::vector<AttrSpec> schema;
  const auto n = uniform_int(rng, 0, 3);
  for (std::int64_t i = 0; i < n; ++i) {
    schema.push_back({"attr" + std::to_string(i), kTypes[uniform_int(rng, 0, 3)]});
  }
  return schema;
}

Value random_value(Rng& rng, ValueType type) {
  switch (type) {
    case ValueType::kInteger: return uniform_int(rng, -1'000'000'000, 1'000'000'000);
    case ValueType::kReal:
      if (coin(rng, 0.2)) return static_cast<double>(uniform_int(rng, -50, 50));
      return uniform_real(rng, -1e6, 1e6) / std::pow(10.0, static_cast<double>(uniform_int(rng, 0, 6)));
    case ValueType::kText: return random_text(rng);
    case ValueType::kBoolean: return coin(rng);
  }
  return std::int64_t{0};
}

Position random_position(Rng& rng, std::size_t dims) {
  std::vector<double> c;
  for (std::size_t i = 0; i < dims; ++i) {
    c.push_back(coin(rng, 0.1) ? static_cast<double>(uniform_int(rng, -5, 5)) : uniform_real(rng, -180.0, 180.0));
  }
  return Position(c);
}

MovingFeature random_segment_feature(Rng& rng, const std::string& id, std::size_t dims,
                                     const std::vector<AttrSpec>& schema) {
  MovingFeature f;
  f.id = id;
  const auto times = random_times(rng, random_start(rng), uniform_int(rng, 2, 12));
  Track track;
  for (const auto t : times) track.samples.push_back({t, random_position(rng, dims)});
  f.geometry.tracks.push_back(std::move(track));
  for (const auto& spec : schema) {
    TemporalProperty p;
    p.name = spec.name;
    p.value_type = spec.type;
    p.interpolation = InterpolationMode::kStepwise;
    for (std::size_t i = 0; i < times.size(); ++i) {
      Value v = i + 1 < times.size() ? random_value(rng, spec.type) : p.samples.back().value;
      p.samples.push_back({times[i], std::move(v)});
    }
    f.temporal_properties.push_back(std::move(p));
  }
  return f;
}

FeatureCollection random_segment_collection(Rng& rng, std::size_t features) {
  FeatureCollection c;
  const auto schema = random_schema(rng);
  const std::size_t dims = coin(rng, 0.7) ? 2 : 3;
  for (std::size_t i = 0; i < features; ++i) {
    c.features.push_back(random_segment_feature(rng, "V" + std::to_string(i) + "_" + std::to_string(rng() % 1000),
                                                dims, schema));
  }
  return c;
}

MovingFeature random_feature(Rng& rng, const std::string& id, std::size_t max_tracks) {
  MovingFeature f;
  f.id = id;
  f.geometry.interpolation = random_mode(rng);
  const std::size_t dims = coin(rng) ? 2 : 3;
  const auto tracks = uniform_int(rng, 1, static_cast<std::int64_t>(max_tracks));
  const std::size_t min_samples = f.geometry.interpolation == InterpolationMode::kLinear ? 2 : 1;
  TimeInstant t = random_start(rng);
  for (std::int64_t k = 0; k < tracks; ++k) {
    Track track;
    for (const auto s : random_times(rng, t, uniform_int(rng, min_samples, 10))) {
      track.samples.push_back({s, random_position(rng, dims)});
    }
    t = track.finish().plus_ms(uniform_int(rng, 1, 1'000'000));
    f.geometry.tracks.push_back(std::move(track));
  }

  const Period extent = f.geometry.extent();
  const auto props = uniform_int(rng, 0, 3);
  for (std::int64_t i = 0; i < props; ++i) {
    TemporalProperty p;
    p.name = "p" + std::to_string(i);
    p.value_type = static_cast<ValueType>(uniform_int(rng, 0, 3));
    p.interpolation = random_mode(rng);
    if (p.interpolation == InterpolationMode::kLinear &&
        p.value_type != ValueType::kInteger && p.value_type != ValueType::kReal) {
      p.interpolation = InterpolationMode::kStepwise;
    }
    const auto n = uniform_int(rng, 1, 10);
    std::vector<std::int64_t> offsets;
    for (std::int64_t j = 0; j < n; ++j) offsets.push_back(uniform_int(rng, 0, extent.duration_ms()));
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    for (const auto o : offsets) p.samples.push_back({extent.begin.plus_ms(o), random_value(rng, p.value_type)});
    f.temporal_properties.push_back(std::move(p));
  }
  if (coin(rng, 0.3)) f.static_properties["name"] = random_text(rng);
  return f;
}

MovingFeature random_linear_feature(Rng& rng, const std::string& id, std::size_t dims, std::size_t max_tracks) {
  MovingFeature f;
  f.id = id;
  const auto tracks = uniform_int(rng, 1, static_cast<std::int64_t>(max_tracks));
  TimeInstant t = random_start(rng);
  for (std::int64_t k = 0; k < tracks; ++k) {
    Track track;
    for (const auto s : random_times(rng, t, uniform_int(rng, 2, 10))) {
      track.samples.push_back({s, random_position(rng, dims)});
    }
    t = track.finish().plus_ms(uniform_int(rng, 1, 1'000'000));
    f.geometry.tracks.push_back(std::move(track));
  }
  return f;
}

}  // namespace mf::testing
