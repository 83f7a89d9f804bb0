#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mf {

enum class ErrorCode {
  kEmptyCollection,
  kInvalidArgument,
  kBadTimestamp,
  kBadValue,
  // CSV
  kMalformedHeader,
  kUnknownColumnType,
  kMalformedRecord,
  kBadCoordinateArity,
  kNonChronologicalSegment,
  kOverlappingSegments,
  kDiscontinuousJunction,
  // XML
  kMalformedXml,
  kMissingSTBoundedBy,
  kUnknownMfIdRef,
  kAttrCountMismatch,
  kBadPosList,
  kAttrTypeUnsupported,
  kUnknownElement,
  // JSON
  kMalformedJson,
  kParallelArrayLengthMismatch,
  kUnknownInterpolation,
  kNonIncreasingDatetimes,
  kUnsupportedGeometryType,
  kGapNotRepresentable,
  // writers and access
  kUnsupportedInterpolation,
  kMixedDimensionality,
  kValueNotRepresentable,
  kEmptyIntersection,
  kDimensionalityMismatch,
};

/// Stable CamelCase name of the code, e.g. "BadCoordinateArity".
std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the engine. Codecs throw it for
/// unrecoverable input, access functions for precondition violations.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mf
