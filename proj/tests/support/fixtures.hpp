#pragma once

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "chartnav/chart_model.hpp"
#include "chartnav/error.hpp"
#include "chartnav/hierarchy.hpp"

namespace fixtures {

inline std::filesystem::path samples_dir() { return CHARTNAV_SAMPLES_DIR; }
inline std::filesystem::path golden_dir() { return CHARTNAV_GOLDEN_DIR; }
inline std::string cli_path() { return CHARTNAV_CLI_PATH; }

inline std::shared_ptr<const chartnav::HierarchyTree> sample_tree(const std::string& name) {
  return std::make_shared<const chartnav::HierarchyTree>(
      chartnav::build_hierarchy(chartnav::load_chart(samples_dir() / (name + ".json"))));
}

inline std::shared_ptr<const chartnav::HierarchyTree> inline_tree(const std::string& spec_json) {
  const auto spec = chartnav::parse_spec(spec_json);
  const auto& values = std::get<chartnav::InlineData>(spec.data).values;
  return std::make_shared<const chartnav::HierarchyTree>(
      chartnav::build_hierarchy(chartnav::validate(spec, chartnav::load_records(values))));
}

inline chartnav::NodeIndex by_id(const chartnav::HierarchyTree& tree, const std::string& id) {
  const auto found = tree.find(id);
  if (!found) throw std::runtime_error("no node " + id);
  return *found;
}

// Runs a command line and captures stdout; returns the exit status.
inline int run_capture(const std::string& command, std::string& out) {
  out.clear();
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Random chart over a synthetic dataset: numeric x/y, a nominal group used as
// color, optionally faceted.
struct RandomChart {
  std::string csv;
  std::string spec_json;
};

inline RandomChart random_chart(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rows_dist(0, 1000);
  std::uniform_int_distribution<int> groups_dist(1, 6);
  std::uniform_int_distribution<int> mode_dist(0, 2);
  std::uniform_int_distribution<int> target_dist(1, 20);
  std::uniform_real_distribution<double> scale_dist(-3.0, 4.0);
  const int rows = rows_dist(rng);
  const int groups = groups_dist(rng);
  const double xs = std::pow(10.0, scale_dist(rng));
  const double ys = std::pow(10.0, scale_dist(rng));
  const double x0 = std::uniform_real_distribution<double>(-1000, 1000)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool integral = unit(rng) < 0.3;

  RandomChart out;
  out.csv = "x,y,g\n";
  char line[128];
  for (int r = 0; r < rows; ++r) {
    double x = x0 + unit(rng) * xs;
    double y = (unit(rng) - 0.3) * ys;
    if (integral) {
      x = std::round(x);
      y = std::round(y);
    }
    std::snprintf(line, sizeof line, "%.17g,%.17g,g%d\n", x, y,
                  std::uniform_int_distribution<int>(0, groups - 1)(rng));
    out.csv += line;
  }
  const int mode = mode_dist(rng);
  const std::string mark = mode == 1 ? "line" : "point";
  std::string enc = "{\"channel\":\"x\",\"field\":\"x\",\"binTargetCount\":" +
                    std::to_string(target_dist(rng)) +
                    "},{\"channel\":\"y\",\"field\":\"y\",\"binTargetCount\":" +
                    std::to_string(target_dist(rng)) + "},{\"channel\":\"color\",\"field\":\"g\"}";
  if (mode == 2) enc += ",{\"channel\":\"facet\",\"field\":\"g\"}";
  out.spec_json = "{\"mark\":\"" + mark + "\",\"encodings\":[" + enc + "],\"data\":{\"path\":\"d.csv\"}}";
  return out;
}

inline chartnav::HierarchyTree build_random(const RandomChart& chart) {
  return chartnav::build_hierarchy(
      chartnav::validate(chartnav::parse_spec(chart.spec_json), chartnav::load_csv(chart.csv)));
}

}  // namespace fixtures
