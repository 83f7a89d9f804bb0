#include "mf/error.hpp"

namespace mf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCollection: return "EmptyCollection";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kBadTimestamp: return "BadTimestamp";
    case ErrorCode::kBadValue: return "BadValue";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kUnknownColumnType: return "UnknownColumnType";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kBadCoordinateArity: return "BadCoordinateArity";
    case ErrorCode::kNonChronologicalSegment: return "NonChronologicalSegment";
    case ErrorCode::kOverlappingSegments: return "OverlappingSegments";
    case ErrorCode::kDiscontinuousJunction: return "DiscontinuousJunction";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kMissingSTBoundedBy: return "MissingSTBoundedBy";
    case ErrorCode::kUnknownMfIdRef: return "UnknownMfIdRef";
    case ErrorCode::kAttrCountMismatch: return "AttrCountMismatch";
    case ErrorCode::kBadPosList: return "BadPosList";
    case ErrorCode::kAttrTypeUnsupported: return "AttrTypeUnsupported";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kParallelArrayLengthMismatch: return "ParallelArrayLengthMismatch";
    case ErrorCode::kUnknownInterpolation: return "UnknownInterpolation";
    case ErrorCode::kNonIncreasingDatetimes: return "NonIncreasingDatetimes";
    case ErrorCode::kUnsupportedGeometryType: return "UnsupportedGeometryType";
    case ErrorCode::kGapNotRepresentable: return "GapNotRepresentable";
    case ErrorCode::kUnsupportedInterpolation: return "UnsupportedInterpolation";
    case ErrorCode::kMixedDimensionality: return "MixedDimensionality";
    case ErrorCode::kValueNotRepresentable: return "ValueNotRepresentable";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kDimensionalityMismatch: return "DimensionalityMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace mf
