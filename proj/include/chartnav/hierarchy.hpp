#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chartnav/chart_model.hpp"

namespace chartnav {

enum class Level { kRoot, kFacet, kAxis, kSection, kDatapoint };

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view name);

// Bin [lo, hi), or [lo, hi] when `closed`.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed = false;

  bool contains(double v) const { return v >= lo && (closed ? v <= hi : v < hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Bins with step {1,2,5} x 10^k whose count is closest to `target_count`.
// Edges are multiples of the step; the last bin is closed. min == max yields
// the single closed bin [min, min].
std::vector<Interval> nice_intervals(double min, double max, int target_count);

// Calendar-aligned bins (UTC) over epoch-millisecond bounds, stepping by one of
// 1s, 1min, 1h, 1d, 1mo, 1y, 2y, 5y, 10y.
std::vector<Interval> temporal_intervals(Timestamp min, Timestamp max, int target_count);

// Distinct values of a nominal field, ascending.
std::vector<std::string> categories(std::size_t field, const Dataset& data);

struct Equals {
  Value value;
  friend bool operator==(const Equals&, const Equals&) = default;
};
struct InRange {
  Interval bounds;
  friend bool operator==(const InRange&, const InRange&) = default;
};
// Pins a single datapoint.
struct RowIs {
  std::size_t row = 0;
  friend bool operator==(const RowIs&, const RowIs&) = default;
};

struct Predicate {
  std::size_t field = 0;
  std::variant<Equals, InRange, RowIs> test;

  bool matches(const Dataset& data, std::size_t row) const;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Conjunction of predicates; empty selects everything.
struct Selection {
  std::vector<Predicate> predicates;

  bool matches(const Dataset& data, std::size_t row) const;
  Selection with(Predicate p) const;
};

std::vector<std::size_t> select(const Selection& selection, const Dataset& data);

using NodeIndex = std::size_t;

struct SummaryPayload {};
struct FacetPayload {
  std::size_t field = 0;
  std::string value;
};
struct AxisPayload {
  Channel channel = Channel::kX;
  std::size_t field = 0;
};
struct LegendPayload {
  std::size_t field = 0;
};
struct IntervalPayload {
  std::size_t field = 0;
  Interval bounds;
};
struct CategoryPayload {
  std::size_t field = 0;
  std::string value;
};
struct RowPayload {
  std::size_t row = 0;
};

using Payload = std::variant<SummaryPayload, FacetPayload, AxisPayload, LegendPayload,
                             IntervalPayload, CategoryPayload, RowPayload>;

struct HierarchyNode {
  NodeIndex index = 0;
  std::string id;
  Level level = Level::kRoot;
  Selection selection;
  Payload payload;
  std::optional<NodeIndex> parent;
  std::vector<NodeIndex> children;
  std::vector<std::size_t> rows;  // select(selection, data), in dataset order
  std::size_t depth = 0;          // root is 0
  std::size_t sibling_index = 0;
};

class HierarchyTree {
 public:
  const HierarchyNode& root() const { return nodes_.front(); }
  const HierarchyNode& node(NodeIndex index) const { return nodes_.at(index); }
  std::span<const HierarchyNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<NodeIndex> find(std::string_view id) const;
  std::span<const NodeIndex> level_nodes(Level level) const;
  const ValidatedChart& chart() const { return chart_; }
  const Dataset& data() const { return chart_.data(); }

  // Siblings include the node itself; the root is its own only sibling.
  std::span<const NodeIndex> siblings(const HierarchyNode& node) const;
  // Nearest facet at or above the node.
  std::optional<NodeIndex> facet_of(const HierarchyNode& node) const;
  bool has_facets() const { return !level_nodes(Level::kFacet).empty(); }

 private:
  friend HierarchyTree build_hierarchy(ValidatedChart chart);
  friend class TreeBuilder;

  ValidatedChart chart_;
  std::vector<HierarchyNode> nodes_;
  std::map<Level, std::vector<NodeIndex>> level_index_;
  std::map<std::string, NodeIndex, std::less<>> id_index_;
  std::vector<NodeIndex> root_siblings_;
};

// root -> [facet] -> axis/legend -> section -> datapoint.
HierarchyTree build_hierarchy(ValidatedChart chart);

}  // namespace chartnav
