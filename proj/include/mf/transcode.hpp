#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mf/codec.hpp"
#include "mf/diagnostic.hpp"
#include "mf/model.hpp"

namespace mf {

// Report codes.
inline constexpr std::string_view kGapNotRepresentable = "GAP_NOT_REPRESENTABLE";
inline constexpr std::string_view kPerAttrInterpolationCollapsed = "PER_ATTR_INTERPOLATION_COLLAPSED";
inline constexpr std::string_view kStaticPropsDropped = "STATIC_PROPS_DROPPED";
inline constexpr std::string_view kAttrResampled = "ATTR_RESAMPLED";
inline constexpr std::string_view kInterpolationUnsupported = "INTERPOLATION_UNSUPPORTED";
inline constexpr std::string_view kAttrNotRepresentable = "ATTR_NOT_REPRESENTABLE";
inline constexpr std::string_view kSchemaMismatch = "SCHEMA_MISMATCH";
inline constexpr std::string_view kCrsMerged = "CRS_MERGED";

struct TranscodeReport {
  std::vector<Diagnostic> losses;

  bool refused() const { return has_errors(losses); }
  bool has(std::string_view code) const;
};

struct TranscodeOptions {
  // Any WARNING-level loss refuses the conversion.
  bool strict = false;
  // Drop interior vertices lying exactly on the space-time line of their
  // neighbours.
  bool simplify = false;
};

struct TranscodeResult {
  std::optional<std::string> document;  // empty when refused
  TranscodeReport report;
  // The target-side model the document was written from.
  FeatureCollection converted;
};

TranscodeResult transcode(const FeatureCollection& collection, Encoding target,
                          TranscodeOptions options = {});

// Exact-collinear vertex removal for Linear geometry; other modes are
// returned unchanged.
MovingFeature simplify_collinear(const MovingFeature& feature);

}  // namespace mf
