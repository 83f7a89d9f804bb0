#pragma once

#include <vector>

#include "mf/interpolation.hpp"
#include "mf/model.hpp"

// Moving-features access operations. Distances and speeds are Euclidean
// in CRS units; geographic CRSs are not treated geodesically.

namespace mf {

struct VelocityVector {
  Position components;  // CRS units per second
  double speed = 0.0;   // Euclidean norm of components
};

SampleResult<Position> location_at(const MovingFeature& feature, TimeInstant t);

// Requires Linear geometry (Error kUnsupportedInterpolation otherwise).
// Interior vertices take the derivative of the following segment, the
// last sample of a track that of the preceding one.
SampleResult<VelocityVector> velocity_at(const MovingFeature& feature, TimeInstant t);

// Requires Linear geometry. Velocity is piecewise constant, so this is the
// zero vector wherever the feature is evaluable, vertices included.
SampleResult<Position> acceleration_at(const MovingFeature& feature, TimeInstant t);

// Clips geometry and temporal properties to [t1, t2]. Linear values get
// interpolated samples at both clip ends; Stepwise values carry the value
// in force at t1 onto t1; Discrete values keep only samples inside the
// window. Throws kInvalidArgument unless t1 < t2, kEmptyIntersection
// when nothing of the geometry remains.
MovingFeature sub_trajectory(const MovingFeature& feature, TimeInstant t1, TimeInstant t2);

// Instants at which the feature is within `tolerance` of `target`: one per
// contiguous solution interval (its midpoint, snapped to a millisecond that
// satisfies the tolerance) plus every vertex lying exactly on target.
// Sorted ascending. Requires Linear geometry.
std::vector<TimeInstant> time_at_position(const MovingFeature& feature, const Position& target,
                                          double tolerance);

struct DistanceBreakpoint {
  TimeInstant time;
  double distance = 0.0;
  // First breakpoint of a track; the curve is not defined between this
  // breakpoint and the previous one.
  bool track_start = false;
};

/// Piecewise-linear cumulative distance over time, one breakpoint per
/// geometry sample, one curve piece per track.
class TimeToDistanceCurve {
 public:
  TimeToDistanceCurve() = default;
  explicit TimeToDistanceCurve(std::vector<DistanceBreakpoint> breakpoints);

  const std::vector<DistanceBreakpoint>& breakpoints() const { return breakpoints_; }
  double total() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back().distance; }
  SampleResult<double> distance_at(TimeInstant t) const;

 private:
  std::vector<DistanceBreakpoint> breakpoints_;
};

// Requires Linear geometry.
TimeToDistanceCurve time_to_distance(const MovingFeature& feature);

// Euclidean distance between the two locations at t. A non-value result
// of either side propagates (first feature wins). Throws
// kDimensionalityMismatch when both are evaluable with different dims.
SampleResult<double> distance_between(const MovingFeature& a, const MovingFeature& b,
                                      TimeInstant t);

// Whether the feature is inside the spatial box at some instant of the
// box period. Linear segments are clipped analytically per axis. A box of
// lower dimensionality than the feature constrains only its leading axes.
bool intersects_box(const MovingFeature& feature, const STBounds& box);

}  // namespace mf
