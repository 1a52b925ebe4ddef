#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>

#include "chartnav/hierarchy.hpp"

namespace chartnav {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Keeps the candidate whose bin count is nearest the target. At equal
// distance the smaller count wins, so (172, 231, 10) lands on 10 rather than 5;
// at equal count the finer step wins. Candidates are offered finest first.
struct StepChoice {
  double distance = std::numeric_limits<double>::infinity();
  double bins = std::numeric_limits<double>::infinity();

  bool offer(double candidate_bins, int target) {
    const double d = std::abs(candidate_bins - target);
    if (d < distance || (d == distance && candidate_bins < bins)) {
      distance = d;
      bins = candidate_bins;
      return true;
    }
    return false;
  }
};

std::vector<Interval> from_edges(const std::vector<double>& edges) {
  std::vector<Interval> bins;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    bins.push_back({edges[i], edges[i + 1], i + 2 == edges.size()});
  }
  return bins;
}

// Calendar month index (year * 12 + month0) of the month containing `ms`.
std::int64_t month_index(std::int64_t ms) {
  using namespace std::chrono;
  const std::int64_t days = floor_div(ms, 86'400'000);
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  return static_cast<std::int64_t>(static_cast<int>(ymd.year())) * 12 +
         (static_cast<unsigned>(ymd.month()) - 1);
}

std::int64_t month_start_ms(std::int64_t index) {
  using namespace std::chrono;
  const int y = static_cast<int>(floor_div(index, 12));
  const unsigned m = static_cast<unsigned>(index - static_cast<std::int64_t>(y) * 12) + 1;
  const sys_days d{year{y} / month{m} / 1};
  return static_cast<std::int64_t>(d.time_since_epoch().count()) * 86'400'000;
}

struct TemporalStep {
  std::int64_t fixed_ms = 0;  // nonzero for second/minute/hour/day steps
  std::int64_t months = 0;    // nonzero for calendar steps
};

constexpr TemporalStep kTemporalSteps[] = {
    {1'000, 0}, {60'000, 0}, {3'600'000, 0}, {86'400'000, 0},
    {0, 1},     {0, 12},     {0, 24},        {0, 60},        {0, 120},
};

}  // namespace

std::vector<Interval> nice_intervals(double min, double max, int target_count) {
  if (!std::isfinite(min) || !std::isfinite(max) || min > max) return {};
  if (min == max) return {{min, max, true}};
  target_count = std::max(target_count, 1);

  const double span = max - min;
  const int base_exp = static_cast<int>(std::floor(std::log10(span / target_count)));
  constexpr int kMultipliers[] = {1, 2, 5};

  // Edge i for step m * 10^k, computed so that decimal steps stay exact-ish.
  auto edge = [](std::int64_t i, int m, int k) {
    return k >= 0 ? static_cast<double>(i) * m * std::pow(10.0, k)
                  : static_cast<double>(i) * m / std::pow(10.0, -k);
  };

  StepChoice choice;
  int best_m = 1, best_k = 0;
  std::int64_t best_lo = 0, best_hi = 0;
  // Past the magnitude of the data every coarser step gives the same one or two bins.
  const double magnitude = std::max({std::abs(min), std::abs(max), span});
  const int top_exp = std::max(base_exp + 2, static_cast<int>(std::ceil(std::log10(magnitude))) + 1);
  for (int k = base_exp - 2; k <= top_exp; ++k) {
    for (int mi = 0; mi < 3; ++mi) {
      const int m = kMultipliers[mi];
      const double step = k >= 0 ? m * std::pow(10.0, k) : m / std::pow(10.0, -k);
      auto lo = static_cast<std::int64_t>(std::floor(min / step));
      auto hi = static_cast<std::int64_t>(std::ceil(max / step));
      if (edge(lo + 1, m, k) <= min) ++lo;
      if (edge(lo, m, k) > min) --lo;
      if (edge(hi - 1, m, k) >= max) --hi;
      if (edge(hi, m, k) < max) ++hi;
      if (choice.offer(static_cast<double>(hi - lo), target_count)) {
        best_m = m;
        best_k = k;
        best_lo = lo;
        best_hi = hi;
      }
    }
  }

  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(best_hi - best_lo + 1));
  for (std::int64_t i = best_lo; i <= best_hi; ++i) edges.push_back(edge(i, best_m, best_k));
  return from_edges(edges);
}

std::vector<Interval> temporal_intervals(Timestamp min, Timestamp max, int target_count) {
  if (min > max) return {};
  const double lo_ms = static_cast<double>(min.epoch_ms);
  const double hi_ms = static_cast<double>(max.epoch_ms);
  if (min == max) return {{lo_ms, hi_ms, true}};
  target_count = std::max(target_count, 1);

  StepChoice choice;
  std::size_t best = 0;
  for (std::size_t s = 0; s < std::size(kTemporalSteps); ++s) {
    const auto& step = kTemporalSteps[s];
    std::int64_t bins = 0;
    if (step.fixed_ms) {
      bins = ceil_div(max.epoch_ms, step.fixed_ms) - floor_div(min.epoch_ms, step.fixed_ms);
    } else {
      const std::int64_t first = floor_div(month_index(min.epoch_ms), step.months);
      std::int64_t last = ceil_div(month_index(max.epoch_ms), step.months);
      if (month_start_ms(last * step.months) < max.epoch_ms) ++last;
      bins = last - first;
    }
    if (choice.offer(static_cast<double>(bins), target_count)) best = s;
  }

  const auto& step = kTemporalSteps[best];
  std::vector<double> edges;
  if (step.fixed_ms) {
    const std::int64_t first = floor_div(min.epoch_ms, step.fixed_ms);
    const std::int64_t last = ceil_div(max.epoch_ms, step.fixed_ms);
    for (std::int64_t i = first; i <= last; ++i) {
      edges.push_back(static_cast<double>(i * step.fixed_ms));
    }
  } else {
    const std::int64_t first = floor_div(month_index(min.epoch_ms), step.months);
    std::int64_t last = ceil_div(month_index(max.epoch_ms), step.months);
    if (month_start_ms(last * step.months) < max.epoch_ms) ++last;
    for (std::int64_t i = first; i <= last; ++i) {
      edges.push_back(static_cast<double>(month_start_ms(i * step.months)));
    }
  }
  return from_edges(edges);
}

std::vector<std::string> categories(std::size_t field, const Dataset& data) {
  std::set<std::string> distinct;
  for (const auto& row : data.rows) distinct.insert(format_value(row[field]));
  return {distinct.begin(), distinct.end()};
}

}  // namespace chartnav
