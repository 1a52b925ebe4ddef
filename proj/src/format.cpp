#include "chartnav/format.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace chartnav {
namespace {

constexpr std::int64_t kMsPerSecond = 1000;
constexpr std::int64_t kMsPerDay = 86'400'000;

constexpr std::array<std::string_view, 12> kMonthAbbrev = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool read_digits(std::string_view text, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  pos += count;
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0;
  if (!read_digits(text, pos, 4, y)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, mo)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != '-') return std::nullopt;
  if (!read_digits(text, pos, 2, d)) return std::nullopt;

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;

  std::int64_t ms = static_cast<std::int64_t>(sys_days{ymd}.time_since_epoch().count()) * kMsPerDay;
  if (pos == text.size()) return Timestamp{ms};

  if (text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0, frac = 0;
  if (!read_digits(text, pos, 2, hh)) return std::nullopt;
  if (pos >= text.size() || text[pos++] != ':') return std::nullopt;
  if (!read_digits(text, pos, 2, mm)) return std::nullopt;
  if (pos < text.size() && text[pos] == ':') {
    ++pos;
    if (!read_digits(text, pos, 2, ss)) return std::nullopt;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      // One or more digits; precision beyond milliseconds is dropped.
      int scale = 100, digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        frac += (text[pos++] - '0') * scale;
        scale /= 10;
        ++digits;
      }
      if (digits == 0) return std::nullopt;
    }
  }
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  ms += ((hh * 60 + mm) * 60 + ss) * kMsPerSecond + frac;

  if (pos < text.size()) {
    const char sign = text[pos];
    if (sign == 'Z' && pos + 1 == text.size()) return Timestamp{ms};
    if (sign != '+' && sign != '-') return std::nullopt;
    ++pos;
    int oh = 0, om = 0;
    if (!read_digits(text, pos, 2, oh)) return std::nullopt;
    if (pos >= text.size() || text[pos++] != ':') return std::nullopt;
    if (!read_digits(text, pos, 2, om)) return std::nullopt;
    if (pos != text.size() || oh > 23 || om > 59) return std::nullopt;
    const std::int64_t offset = (oh * 60 + om) * 60 * kMsPerSecond;
    ms += sign == '+' ? -offset : offset;
  }
  return Timestamp{ms};
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string out(buf);
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (out == "-0") out = "0";
  return out;
}

std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  std::string out(buf, ptr);
  if (out == "-0") out = "0";
  return out;
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const std::int64_t days = floor_div(ts.epoch_ms, kMsPerDay);
  const std::int64_t in_day = ts.epoch_ms - days * kMsPerDay;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};

  std::string out;
  out += kMonthAbbrev[static_cast<unsigned>(ymd.month()) - 1];
  out += ' ';
  out += std::to_string(static_cast<unsigned>(ymd.day()));
  out += ' ';
  out += std::to_string(static_cast<int>(ymd.year()));
  if (in_day != 0) {
    const std::int64_t total_s = in_day / kMsPerSecond;
    char buf[16];
    std::snprintf(buf, sizeof buf, " %02d:%02d", static_cast<int>(total_s / 3600),
                  static_cast<int>(total_s / 60 % 60));
    out += buf;
    if (total_s % 60 != 0) {
      std::snprintf(buf, sizeof buf, ":%02d", static_cast<int>(total_s % 60));
      out += buf;
    }
  }
  return out;
}

std::string format_iso8601(Timestamp ts) {
  using namespace std::chrono;
  const std::int64_t days = floor_div(ts.epoch_ms, kMsPerDay);
  const std::int64_t in_day = ts.epoch_ms - days * kMsPerDay;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  std::string out(buf);
  if (in_day != 0) {
    const std::int64_t total_s = in_day / kMsPerSecond;
    const std::int64_t millis = in_day % kMsPerSecond;
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02d", static_cast<int>(total_s / 3600),
                  static_cast<int>(total_s / 60 % 60), static_cast<int>(total_s % 60));
    out += buf;
    if (millis != 0) {
      std::snprintf(buf, sizeof buf, ".%03d", static_cast<int>(millis));
      out += buf;
    }
    out += 'Z';
  }
  return out;
}

}  // namespace chartnav
