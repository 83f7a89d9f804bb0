#include <gtest/gtest.h>

#include "mf/error.hpp"
#include "mf/numeric_text.hpp"
#include "mf/time.hpp"

namespace mf {
namespace {

constexpr std::int64_t kExampleBegin = 1310680800000;  // 2011-07-14T22:00:00Z

TEST(Iso8601, ParsesUtcInstant) {
  EXPECT_EQ(parse_iso8601("2011-07-14T22:00:00Z").epoch_ms, kExampleBegin);
  EXPECT_EQ(parse_iso8601("1970-01-01T00:00:00Z").epoch_ms, 0);
  EXPECT_EQ(parse_iso8601("1969-12-31T23:59:59Z").epoch_ms, -1000);
}

TEST(Iso8601, FractionsAndZones) {
  EXPECT_EQ(parse_iso8601("2011-07-14T22:00:02.5Z").epoch_ms, kExampleBegin + 2500);
  EXPECT_EQ(parse_iso8601("2011-07-14T22:00:00.0004Z").epoch_ms, kExampleBegin);
  EXPECT_EQ(parse_iso8601("2011-07-14T22:00:00.0005Z").epoch_ms, kExampleBegin + 1);
  EXPECT_EQ(parse_iso8601("2011-07-15T00:00:00+02:00").epoch_ms, kExampleBegin);
  EXPECT_EQ(parse_iso8601("2011-07-14T20:00:00-0200").epoch_ms, kExampleBegin);
  EXPECT_EQ(parse_iso8601("2011-07-14 22:00").epoch_ms, kExampleBegin);
  EXPECT_EQ(parse_iso8601("2011-07-14").epoch_ms, kExampleBegin - 22 * 3600 * 1000);
}

TEST(Iso8601, RejectsGarbage) {
  EXPECT_FALSE(try_parse_iso8601(""));
  EXPECT_FALSE(try_parse_iso8601("5"));
  EXPECT_FALSE(try_parse_iso8601("2011-13-01T00:00:00Z"));
  EXPECT_FALSE(try_parse_iso8601("2011-02-30T00:00:00Z"));
  EXPECT_FALSE(try_parse_iso8601("2011-07-14T25:00:00Z"));
  EXPECT_FALSE(try_parse_iso8601("2011-07-14T22:00:00Zjunk"));
  EXPECT_THROW(parse_iso8601("yesterday"), Error);
}

TEST(Iso8601, FormatsWholeAndFractionalSeconds) {
  EXPECT_EQ(format_iso8601(TimeInstant{kExampleBegin + 5000}), "2011-07-14T22:00:05Z");
  EXPECT_EQ(format_iso8601(TimeInstant{kExampleBegin + 2500}), "2011-07-14T22:00:02.500Z");
  EXPECT_EQ(format_iso8601(TimeInstant{-1}), "1969-12-31T23:59:59.999Z");
}

TEST(Iso8601, RoundTripsOverWideRange) {
  for (std::int64_t ms = -4'000'000'000'000; ms < 8'000'000'000'000; ms += 987'654'321'7) {
    EXPECT_EQ(parse_iso8601(format_iso8601(TimeInstant{ms})).epoch_ms, ms);
  }
}

TEST(Offsets, UnitsAndExactConversion) {
  EXPECT_EQ(unit_millis("sec"), 1000);
  EXPECT_EQ(unit_millis("ms"), 1);
  EXPECT_EQ(unit_millis("min"), 60000);
  EXPECT_EQ(unit_millis("hour"), 3600000);
  EXPECT_FALSE(unit_millis("fortnight"));

  const TimeInstant origin{kExampleBegin};
  EXPECT_EQ(parse_offset("5", origin, 1000).epoch_ms, kExampleBegin + 5000);
  EXPECT_EQ(parse_offset("0.1", origin, 1000).epoch_ms, kExampleBegin + 100);
  EXPECT_EQ(parse_offset("-2.5", origin, 1000).epoch_ms, kExampleBegin - 2500);
  EXPECT_EQ(parse_offset("0.0005", origin, 1000).epoch_ms, kExampleBegin + 1);
  EXPECT_EQ(parse_offset("-0.0005", origin, 1000).epoch_ms, kExampleBegin - 1);
  EXPECT_EQ(parse_offset("1.5", origin, 60000).epoch_ms, kExampleBegin + 90000);
  EXPECT_THROW(parse_offset("1e3", origin, 1000), Error);
}

TEST(Offsets, FormatsOnlyTerminatingDecimals) {
  EXPECT_EQ(format_offset(5000, 1000), "5");
  EXPECT_EQ(format_offset(2500, 1000), "2.5");
  EXPECT_EQ(format_offset(-1, 1000), "-0.001");
  EXPECT_EQ(format_offset(90000, 60000), "1.5");
  EXPECT_FALSE(format_offset(1, 60000));  // 1/60000 min repeats
}

TEST(Offsets, TimeTokenAcceptsBothForms) {
  const TimeInstant origin{kExampleBegin};
  EXPECT_EQ(parse_time_token("10", origin, 1000).epoch_ms, kExampleBegin + 10000);
  EXPECT_EQ(parse_time_token("2011-07-14T22:00:10Z", origin, 1000).epoch_ms, kExampleBegin + 10000);
  EXPECT_THROW(parse_time_token("ten", origin, 1000), Error);
}

TEST(NumericText, Formats) {
  EXPECT_EQ(format_shortest(10.0), "10");
  EXPECT_EQ(format_shortest(10.2), "10.2");
  EXPECT_EQ(format_shortest(0.0), "0");
  EXPECT_EQ(format_decimal(10.0), "10.0");
  EXPECT_EQ(format_decimal(2.1), "2.1");
  EXPECT_EQ(format_significant(0.12649110640673517), "0.1264911");
  EXPECT_EQ(format_significant(-0.0), "0");
}

TEST(NumericText, Parses) {
  EXPECT_EQ(parse_double(" 10.5 "), 10.5);
  EXPECT_FALSE(parse_double("10.5x"));
  EXPECT_FALSE(parse_double(""));
  EXPECT_EQ(parse_int("+42"), 42);
  EXPECT_FALSE(parse_int("4.2"));
  EXPECT_FALSE(parse_int("99999999999999999999"));
}

}  // namespace
}  // namespace mf
