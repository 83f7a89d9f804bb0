#include <gtest/gtest.h>

#include "examples.hpp"
#include "mf/interpolation.hpp"

namespace mf {
namespace {

using testing::at_s;

class VehicleA : public ::testing::Test {
 protected:
  void SetUp() override {
    collection_ = testing::example_json().collection;
    a_ = &collection_.features.at(0);
  }
  const TemporalGeometry& geometry() const { return a_->geometry; }
  const TemporalProperty& gear() const { return *a_->find_property("gear"); }

  FeatureCollection collection_;
  const MovingFeature* a_ = nullptr;
};

void expect_near(const Position& got, const Position& want) {
  ASSERT_EQ(got.dims(), want.dims());
  for (std::size_t i = 0; i < got.dims(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << "axis " << i;
}

TEST_F(VehicleA, LinearPositions) {
  expect_near(*position_at(geometry(), at_s(5)), {10.2, 10.6});
  expect_near(*position_at(geometry(), at_s(2.5)), {10.1, 10.3});
  expect_near(*position_at(geometry(), at_s(12)), {10.44, 11.40});
  EXPECT_EQ(position_at(geometry(), at_s(60)).kind(), SampleKind::kOutOfRange);
  EXPECT_EQ(position_at(geometry(), at_s(-1)).kind(), SampleKind::kOutOfRange);
}

TEST_F(VehicleA, VerticesAreExact) {
  EXPECT_EQ(*position_at(geometry(), at_s(10)), (Position{10.4, 11.2}));
  EXPECT_EQ(*position_at(geometry(), at_s(20)), (Position{10.6, 12.2}));
}

TEST_F(VehicleA, StepwiseGear) {
  EXPECT_EQ(*value_at(gear(), at_s(7)), Value{std::int64_t{2}});
  EXPECT_EQ(*value_at(gear(), at_s(5)), Value{std::int64_t{2}});
  EXPECT_EQ(*value_at(gear(), at_s(3)), Value{std::int64_t{1}});
  EXPECT_EQ(*value_at(gear(), TimeInstant{at_s(5).epoch_ms - 1}), Value{std::int64_t{1}});
  EXPECT_EQ(*value_at(gear(), at_s(20)), Value{std::int64_t{3}});
  EXPECT_EQ(value_at(gear(), at_s(21)).kind(), SampleKind::kOutOfRange);
}

TEST_F(VehicleA, ResampleMatchesSegmentBoundaries) {
  const auto times = resample_times(geometry(), a_->temporal_properties);
  const std::vector<TimeInstant> want{at_s(0), at_s(5), at_s(10), at_s(15), at_s(20)};
  EXPECT_EQ(times, want);
  EXPECT_EQ(resample_times(geometry(), {}), (std::vector<TimeInstant>{at_s(0), at_s(10), at_s(20)}));
}

TEST(Modes, StepwiseAndDiscreteGeometry) {
  TemporalGeometry g;
  g.tracks.push_back(Track{{{at_s(0), {0.0, 0.0}}, {at_s(10), {1.0, 1.0}}}});
  g.interpolation = InterpolationMode::kStepwise;
  EXPECT_EQ(*position_at(g, at_s(9.999)), (Position{0.0, 0.0}));
  EXPECT_EQ(*position_at(g, at_s(10)), (Position{1.0, 1.0}));
  g.interpolation = InterpolationMode::kDiscrete;
  EXPECT_EQ(position_at(g, at_s(5)).kind(), SampleKind::kUndefined);
  EXPECT_EQ(*position_at(g, at_s(0)), (Position{0.0, 0.0}));
}

TEST(Modes, GapsBetweenTracks) {
  TemporalGeometry g;
  g.tracks.push_back(Track{{{at_s(0), {0.0, 0.0}}, {at_s(10), {1.0, 1.0}}}});
  g.tracks.push_back(Track{{{at_s(20), {5.0, 5.0}}, {at_s(30), {6.0, 6.0}}}});
  EXPECT_EQ(position_at(g, at_s(15)).kind(), SampleKind::kGap);
  EXPECT_EQ(position_at(g, at_s(10.001)).kind(), SampleKind::kGap);
  EXPECT_EQ(*position_at(g, at_s(10)), (Position{1.0, 1.0}));
  EXPECT_EQ(*position_at(g, at_s(20)), (Position{5.0, 5.0}));

  TemporalProperty p{"gear", ValueType::kInteger,
                     {{at_s(0), std::int64_t{1}}, {at_s(15), std::int64_t{2}}, {at_s(25), std::int64_t{3}}},
                     InterpolationMode::kStepwise, {}};
  const std::vector<TemporalProperty> props{p};
  EXPECT_EQ(resample_times(g, props),
            (std::vector<TimeInstant>{at_s(0), at_s(10), at_s(20), at_s(25), at_s(30)}));
}

TEST(Modes, LinearPropertiesRoundIntegersHalfAwayFromZero) {
  TemporalProperty p{"n", ValueType::kInteger,
                     {{at_s(0), std::int64_t{0}}, {at_s(10), std::int64_t{-3}}},
                     InterpolationMode::kLinear, {}};
  EXPECT_EQ(*value_at(p, at_s(5)), Value{std::int64_t{-2}});  // -1.5
  p.samples[1].value = std::int64_t{3};
  EXPECT_EQ(*value_at(p, at_s(5)), Value{std::int64_t{2}});  // 1.5
  EXPECT_EQ(*value_at(p, at_s(2)), Value{std::int64_t{1}});  // 0.6

  TemporalProperty r{"x", ValueType::kReal, {{at_s(0), 1.0}, {at_s(10), 2.0}}, InterpolationMode::kLinear, {}};
  EXPECT_DOUBLE_EQ(std::get<double>(*value_at(r, at_s(2.5))), 1.25);

  TemporalProperty t{"s", ValueType::kText, {{at_s(0), std::string("a")}, {at_s(10), std::string("b")}},
                     InterpolationMode::kLinear, {}};
  EXPECT_EQ(value_at(t, at_s(5)).kind(), SampleKind::kUndefined);
}

TEST(Modes, LongEpochsKeepMillisecondPrecision) {
  TemporalGeometry g;
  const TimeInstant far{4'000'000'000'000};
  g.tracks.push_back(Track{{{far, {0.0, 0.0}}, {far.plus_ms(3), {3.0, 0.0}}}});
  EXPECT_EQ((*position_at(g, far.plus_ms(1)))[0], 1.0);
  EXPECT_EQ((*position_at(g, far.plus_ms(2)))[0], 2.0);
}

}  // namespace
}  // namespace mf
