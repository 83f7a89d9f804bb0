#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "examples.hpp"
#include "mf/access.hpp"
#include "mf/error.hpp"
#include "mf/validate.hpp"

namespace mf {
namespace {

using testing::at_s;

class Vehicles : public ::testing::Test {
 protected:
  void SetUp() override { collection_ = testing::example_csv().collection; }
  const MovingFeature& a() const { return *collection_.find("A"); }
  const MovingFeature& b() const { return *collection_.find("B"); }

  FeatureCollection collection_;
};

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

MovingFeature stepwise_feature() {
  MovingFeature f;
  f.id = "S";
  f.geometry.interpolation = InterpolationMode::kStepwise;
  f.geometry.tracks.push_back(Track{{{at_s(0), {0.0, 0.0}}}});
  return f;
}

TEST_F(Vehicles, LocationAt) {
  EXPECT_EQ(*location_at(a(), at_s(5)), (Position{10.2, 10.6}));
  EXPECT_EQ(*location_at(a(), at_s(0)), (Position{10.0, 10.0}));
  EXPECT_EQ(location_at(a(), at_s(-1)).kind(), SampleKind::kOutOfRange);
}

TEST_F(Vehicles, VelocityAndSpeed) {
  const auto v = *velocity_at(a(), at_s(2));
  EXPECT_NEAR(v.components[0], 0.04, 1e-12);
  EXPECT_NEAR(v.components[1], 0.12, 1e-12);
  EXPECT_NEAR(v.speed, 0.1264911, 1e-6);
  EXPECT_NEAR(velocity_at(a(), at_s(12))->speed, 0.1019804, 1e-6);
  EXPECT_NEAR(velocity_at(b(), at_s(7))->speed, 0.0070711, 1e-6);
  EXPECT_EQ(velocity_at(a(), at_s(21)).kind(), SampleKind::kOutOfRange);
}

TEST_F(Vehicles, VertexVelocityIsRightDerivative) {
  // At 10 s the following segment (slower) applies, at the final sample the preceding one.
  EXPECT_NEAR(velocity_at(a(), at_s(10))->speed, std::sqrt(0.26) / 5, 1e-12);
  EXPECT_NEAR(velocity_at(a(), at_s(5))->speed, std::sqrt(0.40) / 5, 1e-12);
  EXPECT_NEAR(velocity_at(a(), at_s(20))->speed, std::sqrt(0.26) / 5, 1e-12);
}

TEST_F(Vehicles, AccelerationIsZeroOnLinearSegments) {
  EXPECT_EQ(*acceleration_at(a(), at_s(2)), Position::zero(2));
  EXPECT_EQ(*acceleration_at(a(), at_s(5)), Position::zero(2));
  EXPECT_EQ(error_of([] { acceleration_at(stepwise_feature(), at_s(0)); }),
            ErrorCode::kUnsupportedInterpolation);
  EXPECT_EQ(error_of([] { velocity_at(stepwise_feature(), at_s(0)); }), ErrorCode::kUnsupportedInterpolation);
}

TEST_F(Vehicles, SubTrajectoryInterpolatesBothEnds) {
  const auto sub = sub_trajectory(a(), at_s(2.5), at_s(7.5));
  ASSERT_EQ(sub.geometry.tracks.size(), 1u);
  const auto& s = sub.geometry.tracks[0].samples;
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].time, at_s(2.5));
  EXPECT_EQ(s[1].time, at_s(5));
  EXPECT_EQ(s[2].time, at_s(7.5));
  EXPECT_NEAR(s[0].position[0], 10.1, 1e-12);
  EXPECT_NEAR(s[0].position[1], 10.3, 1e-12);
  EXPECT_EQ(s[1].position, (Position{10.2, 10.6}));
  EXPECT_NEAR(s[2].position[0], 10.3, 1e-12);
  EXPECT_NEAR(s[2].position[1], 10.9, 1e-12);

  const auto& gear = *sub.find_property("gear");
  ASSERT_EQ(gear.samples.size(), 2u);
  EXPECT_EQ(gear.samples[0].time, at_s(2.5));
  EXPECT_EQ(gear.samples[0].value, Value{std::int64_t{1}});
  EXPECT_EQ(gear.samples[1].time, at_s(5));
  EXPECT_EQ(gear.samples[1].value, Value{std::int64_t{2}});
  EXPECT_TRUE(validate_feature(sub).empty());
}

TEST_F(Vehicles, SubTrajectoryFullRangeAndErrors) {
  EXPECT_TRUE(sample_equal(sub_trajectory(a(), at_s(0), at_s(20)), a()));
  EXPECT_EQ(error_of([&] { sub_trajectory(a(), at_s(3600), at_s(3610)); }), ErrorCode::kEmptyIntersection);
  EXPECT_EQ(error_of([&] { sub_trajectory(a(), at_s(5), at_s(5)); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_of([&] { sub_trajectory(a(), at_s(6), at_s(5)); }), ErrorCode::kInvalidArgument);
}

TEST(SubTrajectory, DropsTracksOutsideWindow) {
  MovingFeature f;
  f.id = "G";
  f.geometry.tracks.push_back(Track{{{at_s(0), {0.0, 0.0}}, {at_s(10), {1.0, 1.0}}}});
  f.geometry.tracks.push_back(Track{{{at_s(20), {5.0, 5.0}}, {at_s(30), {6.0, 6.0}}}});
  const auto sub = sub_trajectory(f, at_s(15), at_s(25));
  ASSERT_EQ(sub.geometry.tracks.size(), 1u);
  EXPECT_EQ(sub.geometry.tracks[0].start(), at_s(20));
  EXPECT_NEAR(sub.geometry.tracks[0].samples.back().position[0], 5.5, 1e-12);
  EXPECT_EQ(sub_trajectory(f, at_s(5), at_s(25)).geometry.tracks.size(), 2u);
}

TEST_F(Vehicles, TimeAtPosition) {
  EXPECT_EQ(time_at_position(a(), {10.2, 10.6}, 0.0), (std::vector<TimeInstant>{at_s(5)}));
  EXPECT_TRUE(time_at_position(a(), {50.0, 50.0}, 0.0).empty());
  EXPECT_EQ(time_at_position(a(), {10.44, 11.40}, 1e-9), (std::vector<TimeInstant>{at_s(12)}));
  EXPECT_EQ(error_of([] { time_at_position(stepwise_feature(), {0.0, 0.0}, 0.0); }),
            ErrorCode::kUnsupportedInterpolation);
}

TEST(TimeAtPosition, RevisitsAreReportedSeparately) {
  MovingFeature f;
  f.id = "R";
  f.geometry.tracks.push_back(
      Track{{{at_s(0), {0.0, 0.0}}, {at_s(10), {10.0, 0.0}}, {at_s(20), {0.0, 0.0}}}});
  EXPECT_EQ(time_at_position(f, {5.0, 0.0}, 0.0), (std::vector<TimeInstant>{at_s(5), at_s(15)}));
  // One interval around the turning point collapses to its midpoint.
  EXPECT_EQ(time_at_position(f, {10.0, 0.0}, 1.0), (std::vector<TimeInstant>{at_s(10)}));
}

TEST_F(Vehicles, TimeToDistance) {
  const auto curve = time_to_distance(a());
  const double want[] = {0.0, 0.6324555, 1.2649111, 1.7748131, 2.2847150};
  ASSERT_EQ(curve.breakpoints().size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(curve.breakpoints()[i].time, at_s(5.0 * i));
    EXPECT_NEAR(curve.breakpoints()[i].distance, want[i], 1e-6);
  }
  EXPECT_NEAR(curve.total(), 2 * std::sqrt(0.40) + 2 * std::sqrt(0.26), 1e-12);
  EXPECT_NEAR(*curve.distance_at(at_s(2.5)), std::sqrt(0.40) / 2, 1e-12);
  EXPECT_EQ(curve.distance_at(at_s(30)).kind(), SampleKind::kOutOfRange);

  const auto b_curve = time_to_distance(b());
  EXPECT_NEAR(b_curve.total(), 0.1414214, 1e-6);
  EXPECT_EQ(error_of([] { time_to_distance(stepwise_feature()); }), ErrorCode::kUnsupportedInterpolation);
}

TEST(TimeToDistance, GapsCarryDistanceForward) {
  MovingFeature f;
  f.id = "G";
  f.geometry.tracks.push_back(Track{{{at_s(0), {0.0, 0.0}}, {at_s(10), {3.0, 4.0}}}});
  f.geometry.tracks.push_back(Track{{{at_s(20), {100.0, 100.0}}, {at_s(30), {100.0, 101.0}}}});
  const auto curve = time_to_distance(f);
  ASSERT_EQ(curve.breakpoints().size(), 4u);
  EXPECT_TRUE(curve.breakpoints()[2].track_start);
  EXPECT_EQ(curve.breakpoints()[2].distance, 5.0);
  EXPECT_EQ(curve.total(), 6.0);
  EXPECT_EQ(curve.distance_at(at_s(15)).kind(), SampleKind::kGap);
  EXPECT_EQ(*curve.distance_at(at_s(20)), 5.0);
}

TEST_F(Vehicles, DistanceBetween) {
  EXPECT_NEAR(*distance_between(a(), b(), at_s(0)), 11.3137085, 1e-6);
  EXPECT_EQ(*distance_between(a(), a(), at_s(7)), 0.0);
  EXPECT_EQ(distance_between(a(), b(), at_s(60)).kind(), SampleKind::kOutOfRange);

  MovingFeature c;
  c.id = "C";
  c.geometry.tracks.push_back(Track{{{at_s(0), {0.0, 0.0, 0.0}}, {at_s(20), {1.0, 1.0, 1.0}}}});
  EXPECT_EQ(error_of([&] { distance_between(a(), c, at_s(1)); }), ErrorCode::kDimensionalityMismatch);
}

TEST_F(Vehicles, IntersectsBox) {
  const STBounds declared = *collection_.bounds;
  EXPECT_TRUE(intersects_box(a(), declared));
  EXPECT_FALSE(intersects_box(b(), declared));
  EXPECT_TRUE(intersects_box(b(), computed_bounds(collection_)));

  FeatureCollection just_b;
  just_b.features.push_back(b());
  EXPECT_TRUE(intersects_box(b(), computed_bounds(just_b)));
}

TEST(IntersectsBox, SegmentCrossingWithoutVertexInside) {
  MovingFeature f;
  f.id = "X";
  f.geometry.tracks.push_back(Track{{{at_s(0), {-10.0, 0.5}}, {at_s(10), {10.0, 0.5}}}});
  const STBounds box{{-1.0, 0.0}, {1.0, 1.0}, {at_s(0), at_s(10)}, "sec"};
  EXPECT_TRUE(intersects_box(f, box));

  // Inside the box only between 4.5 s and 5.5 s.
  EXPECT_FALSE(intersects_box(f, STBounds{{-1.0, 0.0}, {1.0, 1.0}, {at_s(6), at_s(10)}, "sec"}));
  EXPECT_TRUE(intersects_box(f, STBounds{{-1.0, 0.0}, {1.0, 1.0}, {at_s(5.5), at_s(10)}, "sec"}));

  f.geometry.interpolation = InterpolationMode::kStepwise;
  EXPECT_FALSE(intersects_box(f, box));
}

}  // namespace
}  // namespace mf
