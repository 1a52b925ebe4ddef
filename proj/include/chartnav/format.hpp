#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chartnav {

// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t epoch_ms = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// Finite decimal number spanning the whole string, or nullopt.
std::optional<double> parse_number(std::string_view text);

// Accepts YYYY-MM-DD with an optional time part ("T" or " " separator,
// HH:MM[:SS[.fff]]) and an optional "Z" or +HH:MM offset.
std::optional<Timestamp> parse_iso8601(std::string_view text);

// Rounds to two decimals and trims trailing zeros: 3.50 -> "3.5", 2.0 -> "2".
std::string format_number(double value);

// Shortest text that round-trips the double. Used where labels must stay unique.
std::string format_exact(double value);

// "Jan 1 2010", with " HH:MM" (and ":SS") appended when the time of day is not midnight.
std::string format_timestamp(Timestamp ts);

// "2010-01-01" for midnight, "2010-01-01T13:05:00Z" otherwise.
std::string format_iso8601(Timestamp ts);

}  // namespace chartnav
