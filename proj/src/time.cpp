#include "mf/time.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>

#include "mf/error.hpp"
#include "mf/numeric_text.hpp"

namespace mf {
namespace {

// Wide enough for any decimal offset we accept times a unit in ms.
__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

using std::chrono::days;
using std::chrono::milliseconds;
using std::chrono::sys_days;

// Cursor over the timestamp text.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  // Exactly `n` decimal digits.
  std::optional<int> digits(int n) {
    if (pos_ + static_cast<std::size_t>(n) > text_.size()) return std::nullopt;
    int v = 0;
    for (int i = 0; i < n; ++i) {
      const char c = text_[pos_ + static_cast<std::size_t>(i)];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  bool digit_next() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  char take() { return text_[pos_++]; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<TimeInstant> try_parse_iso8601(std::string_view text) {
  text = trim(text);
  Scanner s(text);
  const auto year = s.digits(4);
  if (!year || !s.accept('-')) return std::nullopt;
  const auto month = s.digits(2);
  if (!month || !s.accept('-')) return std::nullopt;
  const auto day = s.digits(2);
  if (!day) return std::nullopt;

  const std::chrono::year_month_day ymd{std::chrono::year{*year},
                                        std::chrono::month{static_cast<unsigned>(*month)},
                                        std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;

  std::int64_t ms_of_day = 0;
  std::int64_t zone_offset_ms = 0;
  if (!s.done()) {
    if (!(s.accept('T') || s.accept('t') || s.accept(' '))) return std::nullopt;
    const auto hh = s.digits(2);
    if (!hh || !s.accept(':')) return std::nullopt;
    const auto mm = s.digits(2);
    if (!mm) return std::nullopt;
    int ss = 0;
    std::int64_t frac_ms = 0;
    if (s.accept(':')) {
      const auto sec = s.digits(2);
      if (!sec) return std::nullopt;
      ss = *sec;
      if (s.accept('.') || s.accept(',')) {
        if (!s.digit_next()) return std::nullopt;
        // Keep four digits to round the millisecond half-up.
        std::int64_t scaled = 0;
        int kept = 0;
        while (s.digit_next()) {
          const int d = s.take() - '0';
          if (kept < 4) {
            scaled = scaled * 10 + d;
            ++kept;
          }
        }
        while (kept < 4) {
          scaled *= 10;
          ++kept;
        }
        frac_ms = (scaled + 5) / 10;
      }
    }
    if (*hh > 23 || *mm > 59 || ss > 59) return std::nullopt;
    ms_of_day = ((static_cast<std::int64_t>(*hh) * 60 + *mm) * 60 + ss) * 1000 + frac_ms;

    if (s.accept('Z') || s.accept('z')) {
    } else if (s.peek() == '+' || s.peek() == '-') {
      const int sign = s.take() == '-' ? -1 : 1;
      const auto zh = s.digits(2);
      if (!zh) return std::nullopt;
      s.accept(':');
      int zm = 0;
      if (!s.done()) {
        const auto m = s.digits(2);
        if (!m) return std::nullopt;
        zm = *m;
      }
      if (*zh > 23 || zm > 59) return std::nullopt;
      zone_offset_ms = sign * (static_cast<std::int64_t>(*zh) * 60 + zm) * 60'000;
    }
  }
  if (!s.done()) return std::nullopt;

  const auto day_ms =
      std::chrono::duration_cast<milliseconds>(sys_days{ymd}.time_since_epoch()).count();
  return TimeInstant{day_ms + ms_of_day - zone_offset_ms};
}

TimeInstant parse_iso8601(std::string_view text) {
  if (auto t = try_parse_iso8601(text)) return *t;
  throw Error(ErrorCode::kBadTimestamp, "not an ISO-8601 timestamp: '" + std::string(text) + "'");
}

std::string format_iso8601(TimeInstant t) {
  const milliseconds since_epoch{t.epoch_ms};
  const auto day = std::chrono::floor<days>(since_epoch);
  const std::chrono::year_month_day ymd{sys_days{day}};
  std::int64_t rem = (since_epoch - day).count();
  const int ms = static_cast<int>(rem % 1000);
  rem /= 1000;
  const int sec = static_cast<int>(rem % 60);
  rem /= 60;
  const int min = static_cast<int>(rem % 60);
  const int hour = static_cast<int>(rem / 60);

  char buf[48];
  const int n = std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d",
                              static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                              static_cast<unsigned>(ymd.day()), hour, min, sec);
  std::string out(buf, static_cast<std::size_t>(n));
  if (ms != 0) {
    std::snprintf(buf, sizeof(buf), ".%03d", ms);
    out += buf;
  }
  out += 'Z';
  return out;
}

std::optional<std::int64_t> unit_millis(std::string_view unit) {
  struct Entry {
    std::string_view name;
    std::int64_t ms;
  };
  static constexpr std::array<Entry, 15> kUnits{{
      {"ms", 1},
      {"msec", 1},
      {"millisecond", 1},
      {"milliseconds", 1},
      {"s", 1000},
      {"sec", 1000},
      {"second", 1000},
      {"seconds", 1000},
      {"min", 60'000},
      {"minute", 60'000},
      {"minutes", 60'000},
      {"h", 3'600'000},
      {"hour", 3'600'000},
      {"hours", 3'600'000},
      {"day", 86'400'000},
  }};
  unit = trim(unit);
  for (const auto& e : kUnits) {
    if (e.name == unit) return e.ms;
  }
  if (unit == "days") return 86'400'000;
  return std::nullopt;
}

bool is_numeric_offset(std::string_view text) {
  text = trim(text);
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) text.remove_prefix(1);
  bool digits = false;
  bool dot = false;
  for (const char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

TimeInstant parse_offset(std::string_view text, TimeInstant origin, std::int64_t unit_ms) {
  const std::string_view original = text;
  text = trim(text);
  if (!is_numeric_offset(text) || unit_ms <= 0) {
    throw Error(ErrorCode::kBadTimestamp, "not a numeric time offset: '" + std::string(original) + "'");
  }
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  // value = mantissa / 10^scale, exactly.
  Int128 mantissa = 0;
  Int128 scale = 1;
  bool after_dot = false;
  int significant = 0;
  for (const char c : text) {
    if (c == '.') {
      after_dot = true;
      continue;
    }
    if (significant > 30) {
      throw Error(ErrorCode::kBadTimestamp, "time offset has too many digits: '" + std::string(original) + "'");
    }
    mantissa = mantissa * 10 + (c - '0');
    if (mantissa != 0) ++significant;
    if (after_dot) scale *= 10;
  }
  const Int128 numerator = mantissa * unit_ms;
  Int128 ms = numerator / scale;
  if ((numerator % scale) * 2 >= scale) ++ms;
  if (negative) ms = -ms;
  const Int128 result = static_cast<Int128>(origin.epoch_ms) + ms;
  if (result > INT64_MAX || result < INT64_MIN) {
    throw Error(ErrorCode::kBadTimestamp, "time offset out of range: '" + std::string(original) + "'");
  }
  return TimeInstant{static_cast<std::int64_t>(result)};
}

std::optional<std::string> format_offset(std::int64_t offset_ms, std::int64_t unit_ms) {
  if (unit_ms <= 0) return std::nullopt;
  std::string out;
  UInt128 magnitude = offset_ms < 0 ? static_cast<UInt128>(-(static_cast<Int128>(offset_ms)))
                                              : static_cast<UInt128>(offset_ms);
  if (offset_ms < 0) out += '-';
  const auto unit = static_cast<UInt128>(unit_ms);
  out += std::to_string(static_cast<unsigned long long>(magnitude / unit));
  UInt128 rem = magnitude % unit;
  if (rem == 0) return out;
  out += '.';
  for (int i = 0; i < 24 && rem != 0; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / unit));
    rem %= unit;
  }
  if (rem != 0) return std::nullopt;
  return out;
}

TimeInstant parse_time_token(std::string_view token, TimeInstant origin, std::int64_t unit_ms) {
  if (is_numeric_offset(token)) return parse_offset(token, origin, unit_ms);
  return parse_iso8601(token);
}

}  // namespace mf
