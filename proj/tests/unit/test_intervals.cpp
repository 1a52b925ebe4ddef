#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "chartnav/hierarchy.hpp"
#include "fixtures.hpp"

using namespace chartnav;

namespace {

// Brute force over every {1,2,5} x 10^k step: count the covering bins and keep
// the count nearest the target. Equal distance prefers fewer bins, equal count
// the finer step.
double oracle_step(double min, double max, int target) {
  double best_step = 0;
  long double best_dist = 1e300L, best_bins = 1e300L;
  for (int k = -12; k <= 12; ++k) {
    for (int m : {1, 2, 5}) {
      const long double step = m * std::pow(10.0L, k);
      const long double lo = std::floor(static_cast<long double>(min) / step);
      const long double hi = std::ceil(static_cast<long double>(max) / step);
      const long double bins = std::max(hi - lo, 1.0L);
      const long double dist = std::fabs(bins - target);
      if (dist < best_dist || (dist == best_dist && bins < best_bins)) {
        best_dist = dist;
        best_bins = bins;
        best_step = static_cast<double>(step);
      }
    }
  }
  return best_step;
}

void check_shape(const std::vector<Interval>& bins, double min, double max) {
  REQUIRE_FALSE(bins.empty());
  CHECK(bins.front().lo <= min);
  CHECK(bins.back().hi >= max);
  CHECK(bins.back().closed);
  for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
    CHECK_FALSE(bins[i].closed);
    CHECK(bins[i].hi == bins[i + 1].lo);
  }
}

}  // namespace

TEST_CASE("nice_intervals examples") {
  const auto penguins = nice_intervals(172, 231, 10);
  REQUIRE(penguins.size() == 7);
  CHECK(penguins.front() == Interval{170, 180, false});
  CHECK(penguins[1] == Interval{180, 190, false});
  CHECK(penguins.back() == Interval{230, 240, true});

  const auto unit = nice_intervals(0, 10, 10);
  REQUIRE(unit.size() == 10);
  CHECK(unit.front().lo == 0);
  CHECK(unit.back().hi == 10);
  CHECK(unit[3] == Interval{3, 4, false});

  // Steps 10 and 20 both give one bin; the finer one wins.
  CHECK(nice_intervals(1, 9, 1) == std::vector<Interval>{{0, 10, true}});

  const auto single = nice_intervals(5, 5, 10);
  REQUIRE(single.size() == 1);
  CHECK(single.front() == Interval{5, 5, true});
  CHECK(single.front().contains(5));
}

TEST_CASE("nice_intervals agrees with a brute-force step search") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(-4, 5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double span = std::pow(10.0, scale(rng));
    const double min = (unit(rng) - 0.5) * 2000;
    const double max = min + span * unit(rng) + 1e-3 * span;
    const int target = 1 + static_cast<int>(rng() % 40);
    const auto bins = nice_intervals(min, max, target);
    check_shape(bins, min, max);
    const double step = oracle_step(min, max, target);
    for (const auto& b : bins) {
      const double scale = std::max(1.0, std::fabs(b.hi));
      CHECK(std::fabs((b.hi - b.lo) - step) <= 1e-9 * scale);
      CHECK(std::fabs(b.lo - std::round(b.lo / step) * step) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("half-open bins place every value once") {
  const auto bins = nice_intervals(0, 10, 10);
  for (double v = 0; v <= 10; v += 0.25) {
    int hits = 0;
    for (const auto& b : bins) hits += b.contains(v);
    CHECK(hits == 1);
  }
}

TEST_CASE("temporal_intervals") {
  const auto t = [](const char* iso) { return *parse_iso8601(iso); };

  SUBCASE("stocks decade in two-year bins") {
    const auto bins = temporal_intervals(t("2000-01-01"), t("2010-03-01"), 5);
    REQUIRE(bins.size() == 6);
    CHECK(bins[0].lo == t("2000-01-01").epoch_ms);
    CHECK(bins[0].hi == t("2002-01-01").epoch_ms);
    CHECK(bins[1].hi == t("2004-01-01").epoch_ms);
    CHECK(bins.back().hi == t("2012-01-01").epoch_ms);
    CHECK(bins.back().closed);
  }

  SUBCASE("one day in hourly bins") {
    const auto lo = t("2021-06-01");
    const auto hi = t("2021-06-02");
    const auto bins = temporal_intervals(lo, hi, 24);
    REQUIRE(bins.size() == 24);
    // Each bin is exactly one hour and every minute of the day lands in one bin.
    for (const auto& b : bins) CHECK(b.hi - b.lo == 3'600'000.0);
    for (std::int64_t ms = lo.epoch_ms; ms <= hi.epoch_ms; ms += 60'000) {
      int hits = 0;
      for (const auto& b : bins) hits += b.contains(static_cast<double>(ms));
      CHECK(hits == 1);
    }
  }

  SUBCASE("monthly bins are calendar aligned") {
    const auto bins = temporal_intervals(t("2010-01-01"), t("2010-12-31"), 12);
    REQUIRE(bins.size() == 12);
    CHECK(bins[1].lo == t("2010-02-01").epoch_ms);
    CHECK(bins[2].lo == t("2010-03-01").epoch_ms);
  }

  SUBCASE("degenerate span") {
    const auto bins = temporal_intervals(t("2010-01-01"), t("2010-01-01"), 5);
    REQUIRE(bins.size() == 1);
    CHECK(bins.front().closed);
  }
}

TEST_CASE("categories are sorted and distinct") {
  const auto data = load_csv("c\nb\na\nb\n");
  CHECK(categories(0, data) == std::vector<std::string>{"a", "b"});
  CHECK(categories(0, load_csv("c\nonly\nonly\n")) == std::vector<std::string>{"only"});

  const auto penguins = load_csv(read_text_file(fixtures::samples_dir() / "penguins.csv"));
  const auto species = *penguins.field_index("species");
  std::set<std::string> oracle;
  for (const auto& row : penguins.rows) oracle.insert(std::get<std::string>(row[species]));
  CHECK(categories(species, penguins) == std::vector<std::string>(oracle.begin(), oracle.end()));
  CHECK(categories(species, penguins) ==
        std::vector<std::string>{"Adelie", "Chinstrap", "Gentoo"});
}
