#include "chartnav/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace chartnav {
namespace {

std::string escape_id(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (c == '/') {
      out += "%2F";
    } else if (c == '%') {
      out += "%25";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kRoot: return "root";
    case Level::kFacet: return "facet";
    case Level::kAxis: return "axis";
    case Level::kSection: return "section";
    case Level::kDatapoint: return "datapoint";
  }
  return "";
}

std::optional<Level> parse_level(std::string_view name) {
  for (Level l : {Level::kRoot, Level::kFacet, Level::kAxis, Level::kSection, Level::kDatapoint}) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

bool Predicate::matches(const Dataset& data, std::size_t row) const {
  if (const auto* eq = std::get_if<Equals>(&test)) return data.rows[row][field] == eq->value;
  if (const auto* range = std::get_if<InRange>(&test)) {
    const auto v = numeric(data.rows[row][field]);
    return v && range->bounds.contains(*v);
  }
  return std::get<RowIs>(test).row == row;
}

bool Selection::matches(const Dataset& data, std::size_t row) const {
  return std::all_of(predicates.begin(), predicates.end(),
                     [&](const Predicate& p) { return p.matches(data, row); });
}

Selection Selection::with(Predicate p) const {
  Selection out = *this;
  out.predicates.push_back(std::move(p));
  return out;
}

std::vector<std::size_t> select(const Selection& selection, const Dataset& data) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < data.row_count(); ++r) {
    if (selection.matches(data, r)) rows.push_back(r);
  }
  return rows;
}

std::optional<NodeIndex> HierarchyTree::find(std::string_view id) const {
  const auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeIndex> HierarchyTree::level_nodes(Level level) const {
  const auto it = level_index_.find(level);
  if (it == level_index_.end()) return {};
  return it->second;
}

std::span<const NodeIndex> HierarchyTree::siblings(const HierarchyNode& node) const {
  if (!node.parent) return root_siblings_;
  return nodes_[*node.parent].children;
}

std::optional<NodeIndex> HierarchyTree::facet_of(const HierarchyNode& node) const {
  std::optional<NodeIndex> current = node.index;
  while (current) {
    const auto& n = nodes_[*current];
    if (n.level == Level::kFacet) return n.index;
    current = n.parent;
  }
  return std::nullopt;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(ValidatedChart chart) { tree_.chart_ = std::move(chart); }

  HierarchyTree build() {
    const ValidatedChart& chart = tree_.chart_;
    const Dataset& data = chart.data();

    std::vector<std::size_t> all_rows(data.row_count());
    for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = r;
    const NodeIndex root = add_node(std::nullopt, "root", Level::kRoot, Selection{},
                                    SummaryPayload{}, std::move(all_rows));

    const ResolvedEncoding* facet = chart.find(Channel::kFacet);
    const ResolvedEncoding* color = chart.find(Channel::kColor);
    const ResolvedEncoding* facet_source = facet;
    if (!facet_source && color && chart.spec().mark == Mark::kLine) facet_source = color;
    legend_ = color && color != facet_source ? color : nullptr;

    if (facet_source) {
      const std::size_t field = facet_source->field;
      for (const auto& value : categories(field, data)) {
        const Predicate p{field, Equals{Value{value}}};
        const NodeIndex f = add_child(root, "facet:" + escape_id(value), Level::kFacet, p,
                                      FacetPayload{field, value});
        build_encodings(f);
      }
    } else {
      build_encodings(root);
    }

    tree_.root_siblings_ = {root};
    return std::move(tree_);
  }

 private:
  NodeIndex add_node(std::optional<NodeIndex> parent, std::string id, Level level,
                     Selection selection, Payload payload, std::vector<std::size_t> rows) {
    HierarchyNode node;
    node.index = tree_.nodes_.size();
    node.id = std::move(id);
    node.level = level;
    node.selection = std::move(selection);
    node.payload = std::move(payload);
    node.parent = parent;
    node.rows = std::move(rows);
    if (parent) {
      auto& p = tree_.nodes_[*parent];
      node.depth = p.depth + 1;
      node.sibling_index = p.children.size();
      p.children.push_back(node.index);
    }
    tree_.level_index_[level].push_back(node.index);
    tree_.id_index_.emplace(node.id, node.index);
    tree_.nodes_.push_back(std::move(node));
    return tree_.nodes_.back().index;
  }

  // Child narrowing the parent by one predicate; rows filter the parent's rows.
  NodeIndex add_child(NodeIndex parent, const std::string& label, Level level,
                      const std::optional<Predicate>& predicate, Payload payload) {
    const Dataset& data = tree_.chart_.data();
    const auto& p = tree_.nodes_[parent];
    Selection selection = predicate ? p.selection.with(*predicate) : p.selection;
    std::vector<std::size_t> rows;
    if (predicate) {
      for (std::size_t r : p.rows) {
        if (predicate->matches(data, r)) rows.push_back(r);
      }
    } else {
      rows = p.rows;
    }
    std::string id = p.id + "/" + label;
    return add_node(parent, std::move(id), level, std::move(selection), std::move(payload),
                    std::move(rows));
  }

  void build_encodings(NodeIndex parent) {
    const ValidatedChart& chart = tree_.chart_;
    for (Channel ch : {Channel::kX, Channel::kY}) {
      const ResolvedEncoding* enc = chart.find(ch);
      const NodeIndex axis = add_child(parent, "axis:" + std::string(to_string(ch)), Level::kAxis,
                                       std::nullopt, AxisPayload{ch, enc->field});
      build_sections(axis, *enc);
    }
    if (legend_) {
      const NodeIndex legend =
          add_child(parent, "legend:" + escape_id(chart.field(legend_->field).name), Level::kAxis,
                    std::nullopt, LegendPayload{legend_->field});
      build_sections(legend, *legend_);
    }
  }

  void build_sections(NodeIndex axis, const ResolvedEncoding& enc) {
    const Dataset& data = tree_.chart_.data();
    const FieldDef& field = data.fields[enc.field];
    if (field.kind == FieldKind::kNominal) {
      for (const auto& value : categories(enc.field, data)) {
        const NodeIndex s = add_child(axis, "section:" + escape_id(value), Level::kSection,
                                      Predicate{enc.field, Equals{Value{value}}},
                                      CategoryPayload{enc.field, value});
        build_datapoints(s);
      }
      return;
    }

    // Bin edges come from the full dataset so sibling facets line up.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : data.rows) {
      const double v = *numeric(row[enc.field]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (data.rows.empty()) return;

    const bool temporal = field.kind == FieldKind::kTemporal;
    const auto bins =
        temporal ? temporal_intervals(Timestamp{static_cast<std::int64_t>(lo)},
                                      Timestamp{static_cast<std::int64_t>(hi)}, enc.bin_target_count)
                 : nice_intervals(lo, hi, enc.bin_target_count);
    for (const auto& bin : bins) {
      std::string label;
      if (temporal) {
        label = format_iso8601(Timestamp{static_cast<std::int64_t>(bin.lo)}) + "~" +
                format_iso8601(Timestamp{static_cast<std::int64_t>(bin.hi)});
      } else {
        label = format_exact(bin.lo) + "-" + format_exact(bin.hi);
      }
      const NodeIndex s = add_child(axis, "section:" + label, Level::kSection,
                                    Predicate{enc.field, InRange{bin}},
                                    IntervalPayload{enc.field, bin});
      build_datapoints(s);
    }
  }

  void build_datapoints(NodeIndex section) {
    const std::vector<std::size_t> rows = tree_.nodes_[section].rows;
    for (std::size_t r : rows) {
      add_child(section, "row:" + std::to_string(r), Level::kDatapoint, Predicate{0, RowIs{r}},
                RowPayload{r});
    }
  }

  HierarchyTree tree_;
  const ResolvedEncoding* legend_ = nullptr;
};

HierarchyTree build_hierarchy(ValidatedChart chart) { return TreeBuilder(std::move(chart)).build(); }

}  // namespace chartnav
