#pragma once

#include <optional>
#include <vector>

#include "mf/diagnostic.hpp"
#include "mf/model.hpp"

namespace mf {

// Checks every model invariant of a single feature. ERROR diagnostics
// mean an invariant is broken; WARNINGs flag legal but suspicious data.
std::vector<Diagnostic> validate_feature(const MovingFeature& feature);

// Per-feature checks, duplicate ids, and declared bounds vs. data.
std::vector<Diagnostic> validate_collection(const FeatureCollection& collection);

// Only the declared-bounds part of validate_collection.
std::vector<Diagnostic> check_declared_bounds(const FeatureCollection& collection);

// Tight box and period over all samples. Throws Error(kEmptyCollection)
// when there is no sample at all. time_unit is taken from the declared
// bounds when present.
STBounds computed_bounds(const FeatureCollection& collection);

// Same for one feature; empty when it has no samples.
std::optional<STBounds> feature_bounds(const MovingFeature& feature);

}  // namespace mf
