#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mf {

/// Milliseconds since the Unix epoch, UTC.
struct TimeInstant {
  std::int64_t epoch_ms = 0;

  friend constexpr auto operator<=>(TimeInstant, TimeInstant) = default;

  constexpr TimeInstant plus_ms(std::int64_t ms) const { return {epoch_ms + ms}; }
};

/// Signed difference b - a in milliseconds.
constexpr std::int64_t millis_between(TimeInstant a, TimeInstant b) {
  return b.epoch_ms - a.epoch_ms;
}

constexpr double seconds_between(TimeInstant a, TimeInstant b) {
  return static_cast<double>(millis_between(a, b)) / 1000.0;
}

/// Closed interval [begin, end].
struct Period {
  TimeInstant begin;
  TimeInstant end;

  constexpr bool contains(TimeInstant t) const { return begin <= t && t <= end; }
  constexpr std::int64_t duration_ms() const { return millis_between(begin, end); }

  friend constexpr bool operator==(const Period&, const Period&) = default;
};

/// Accepts YYYY-MM-DD[(T| )hh:mm[:ss[.f+]]][Z|±hh[:]mm]. Missing zone means UTC.
/// Fractions finer than a millisecond are rounded half-up.
std::optional<TimeInstant> try_parse_iso8601(std::string_view text);
TimeInstant parse_iso8601(std::string_view text);

/// "2011-07-14T22:00:05Z", or "...05.250Z" when the millisecond part is nonzero.
std::string format_iso8601(TimeInstant t);

/// Milliseconds per unit for the offset encodings ("sec" -> 1000).
std::optional<std::int64_t> unit_millis(std::string_view unit);

/// Plain decimal number, optionally signed: "5", "-2.5", "10.000".
bool is_numeric_offset(std::string_view text);

/// Offset in `unit_ms` units from `origin`. Decimal text is converted
/// exactly and rounded to the nearest millisecond (half away from zero).
TimeInstant parse_offset(std::string_view text, TimeInstant origin, std::int64_t unit_ms);

/// Decimal rendering of `offset_ms` in `unit_ms` units without trailing
/// zeros. Empty when the value has no finite decimal expansion.
std::optional<std::string> format_offset(std::int64_t offset_ms, std::int64_t unit_ms);

/// ISO-8601 absolute time or numeric offset, as used by the segment encodings.
TimeInstant parse_time_token(std::string_view token, TimeInstant origin, std::int64_t unit_ms);

}  // namespace mf
