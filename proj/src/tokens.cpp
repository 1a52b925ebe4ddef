#include "chartnav/tokens.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>

#include "chartnav/error.hpp"
#include "json.hpp"

namespace chartnav {

namespace detail {
extern const std::string_view kEmbeddedTemplates;
}  // namespace detail

namespace {

constexpr int kTemplateVersion = 1;

constexpr std::array<TokenInfo, 10> kCatalog = {{
    {TokenKind::kNodeName, "node_name", "name", Affordance::kLocation, Direction::kInPlace},
    {TokenKind::kIndex, "index", "index", Affordance::kSurroundings, Direction::kInPlace},
    {TokenKind::kObjectType, "object_type", "type", Affordance::kConsuming, Direction::kInPlace},
    {TokenKind::kDataValues, "data_values", "values", Affordance::kConsuming, Direction::kInPlace},
    {TokenKind::kAggregate, "aggregate", "aggregate", Affordance::kConsuming, Direction::kDownwards},
    {TokenKind::kChildNames, "child_names", "children", Affordance::kLocation, Direction::kDownwards},
    {TokenKind::kChildSize, "child_size", "size", Affordance::kSurroundings, Direction::kDownwards},
    {TokenKind::kParentName, "parent_name", "parent", Affordance::kLocation, Direction::kUpwards},
    {TokenKind::kDepth, "depth", "depth", Affordance::kSurroundings, Direction::kUpwards},
    {TokenKind::kContextQuantile, "context_quantile", "context", Affordance::kConsuming,
     Direction::kUpwards},
}};

struct Pair {
  std::string short_text;
  std::string long_text;

  const std::string& get(Brevity b) const { return b == Brevity::kShort ? short_text : long_text; }
};

class TemplateTable {
 public:
  explicit TemplateTable(std::string_view json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    if (doc.at("version").get<int>() != kTemplateVersion) {
      throw Error(ErrorCode::kVersionMismatch, "unsupported token template version");
    }
    for (const auto& info : kCatalog) {
      const auto& entry = doc.at("tokens").at(std::string(info.name));
      tokens_[info.kind] = {entry.at("short").get<std::string>(), entry.at("long").get<std::string>()};
    }
    for (const auto& [name, entry] : doc.at("fragments").items()) {
      fragments_[name] = {entry.at("short").get<std::string>(), entry.at("long").get<std::string>()};
    }
  }

  const std::string& token(TokenKind kind, Brevity b) const { return tokens_.at(kind).get(b); }
  const std::string& fragment(const std::string& name, Brevity b) const {
    return fragments_.at(name).get(b);
  }

 private:
  std::map<TokenKind, Pair> tokens_;
  std::map<std::string, Pair> fragments_;
};

const TemplateTable& templates() {
  static const TemplateTable table(detail::kEmbeddedTemplates);
  return table;
}

using Vars = std::vector<std::pair<std::string_view, std::string>>;

std::string substitute(const std::string& tpl, const Vars& vars) {
  std::string out;
  out.reserve(tpl.size() + 32);
  for (std::size_t i = 0; i < tpl.size(); ++i) {
    if (tpl[i] == '{') {
      const auto close = tpl.find('}', i);
      if (close != std::string::npos) {
        const std::string_view key(tpl.data() + i + 1, close - i - 1);
        for (const auto& [name, value] : vars) {
          if (name == key) {
            out += value;
            break;
          }
        }
        i = close;
        continue;
      }
    }
    out += tpl[i];
  }
  return out;
}

std::string plural(std::size_t count, std::string_view singular, std::string_view plural_form) {
  return std::to_string(count) + " " + std::string(count == 1 ? singular : plural_form);
}

std::string join_names(const std::vector<std::string>& items) {
  constexpr std::size_t kShown = 3;
  if (items.empty()) return "";
  if (items.size() == 1) return items[0];
  if (items.size() == 2) return items[0] + " and " + items[1];
  std::string out;
  const std::size_t shown = std::min(items.size(), kShown);
  for (std::size_t i = 0; i < shown; ++i) {
    out += items[i];
    out += ", ";
  }
  if (items.size() > kShown) {
    out += "and " + std::to_string(items.size() - kShown) + " more";
  } else {
    out.resize(out.size() - 2);
    const auto last_comma = out.rfind(", ");
    out.insert(last_comma + 2, "and ");
  }
  return out;
}

std::string unit_suffix(const FieldDef& field) {
  if (field.kind != FieldKind::kQuantitative || !field.unit) return "";
  return " " + *field.unit;
}

std::string format_measure(const FieldDef& field, double v) {
  if (field.kind == FieldKind::kTemporal) {
    return format_timestamp(Timestamp{static_cast<std::int64_t>(std::llround(v))});
  }
  return format_number(v);
}

// Year-aligned bins read "2000 to 2002", month-aligned ones "Jan 2010 to Feb 2010".
std::string format_bin(const FieldDef& field, const Interval& bin) {
  if (field.kind != FieldKind::kTemporal) {
    return format_number(bin.lo) + " to " + format_number(bin.hi);
  }
  const std::string lo = format_iso8601(Timestamp{static_cast<std::int64_t>(bin.lo)});
  const std::string hi = format_iso8601(Timestamp{static_cast<std::int64_t>(bin.hi)});
  auto month_aligned = [](const std::string& iso) { return iso.size() == 10 && iso.ends_with("-01"); };
  if (month_aligned(lo) && month_aligned(hi)) {
    if (lo.substr(4) == "-01-01" && hi.substr(4) == "-01-01") {
      return lo.substr(0, 4) + " to " + hi.substr(0, 4);
    }
    auto month_year = [](const std::string& iso) {
      static constexpr std::string_view kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                     "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
      return std::string(kMonths[std::stoi(iso.substr(5, 2)) - 1]) + " " + iso.substr(0, 4);
    };
    return month_year(lo) + " to " + month_year(hi);
  }
  return format_measure(field, bin.lo) + " to " + format_measure(field, bin.hi);
}

bool is_series_chart(const HierarchyTree& tree) {
  const auto& chart = tree.chart();
  return !chart.find(Channel::kFacet) && chart.spec().mark == Mark::kLine && chart.find(Channel::kColor);
}

// Per-node vocabulary shared by several tokens.
class NodeText {
 public:
  NodeText(const HierarchyTree& tree, const HierarchyNode& node)
      : tree_(tree), node_(node), chart_(tree.chart()), data_(tree.data()) {}

  std::string short_name(const HierarchyNode& n) const {
    return std::visit(
        [&](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SummaryPayload>) {
            if (chart_.spec().title) return *chart_.spec().title;
            return label(Channel::kY) + " by " + label(Channel::kX);
          } else if constexpr (std::is_same_v<T, FacetPayload>) {
            return p.value;
          } else if constexpr (std::is_same_v<T, AxisPayload>) {
            return p.channel == Channel::kX ? "X-axis" : "Y-axis";
          } else if constexpr (std::is_same_v<T, LegendPayload>) {
            return "Legend";
          } else if constexpr (std::is_same_v<T, IntervalPayload>) {
            return format_bin(chart_.field(p.field), p.bounds);
          } else if constexpr (std::is_same_v<T, CategoryPayload>) {
            return p.value;
          } else {
            return format_value(data_.rows[p.row][chart_.find(Channel::kX)->field]);
          }
        },
        n.payload);
  }

  std::string long_name() const {
    return std::visit(
        [&](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SummaryPayload>) {
            if (chart_.spec().title) return "chart titled " + *chart_.spec().title;
            return "chart of " + short_name(node_);
          } else if constexpr (std::is_same_v<T, FacetPayload>) {
            return field_label(chart_.field(p.field)) + " " + p.value;
          } else if constexpr (std::is_same_v<T, AxisPayload>) {
            const FieldDef& f = chart_.field(p.field);
            std::string out = short_name(node_) + " for " + field_label(f);
            if (f.unit) out += " in " + *f.unit;
            return out;
          } else if constexpr (std::is_same_v<T, LegendPayload>) {
            return "Legend for " + field_label(chart_.field(p.field));
          } else if constexpr (std::is_same_v<T, IntervalPayload>) {
            const FieldDef& f = chart_.field(p.field);
            return field_label(f) + " from " + short_name(node_) + unit_suffix(f);
          } else if constexpr (std::is_same_v<T, CategoryPayload>) {
            return field_label(chart_.field(p.field)) + " " + p.value;
          } else {
            const FieldDef& f = chart_.field(chart_.find(Channel::kX)->field);
            return field_label(f) + " " + short_name(node_) + unit_suffix(f);
          }
        },
        node_.payload);
  }

  // Noun for a node when talking about its kind ("interval", "legend").
  std::string kind_noun(const HierarchyNode& n) const {
    switch (n.level) {
      case Level::kRoot: return "chart";
      case Level::kFacet: return is_series_chart(tree_) ? "series" : "facet";
      case Level::kAxis: return std::holds_alternative<LegendPayload>(n.payload) ? "legend" : "axis";
      case Level::kSection:
        return std::holds_alternative<IntervalPayload>(n.payload) ? "interval" : "category";
      case Level::kDatapoint: return "datapoint";
    }
    return "";
  }

  std::string sibling_count(std::size_t count) const {
    switch (node_.level) {
      case Level::kRoot: return "chart" + std::string(count == 1 ? "" : "s");
      case Level::kFacet:
        if (is_series_chart(tree_)) return "series";
        return count == 1 ? "facet" : "facets";
      case Level::kAxis: return count == 1 ? "encoding" : "encodings";
      case Level::kSection:
        if (std::holds_alternative<IntervalPayload>(node_.payload)) {
          return count == 1 ? "interval" : "intervals";
        }
        return count == 1 ? "category" : "categories";
      case Level::kDatapoint: return count == 1 ? "value" : "values";
    }
    return "";
  }

  std::string object_type() const {
    switch (node_.level) {
      case Level::kRoot:
        switch (chart_.spec().mark) {
          case Mark::kPoint: return "scatterplot";
          case Mark::kLine: return tree_.has_facets() ? "multi-series line chart" : "line chart";
          case Mark::kBar: return "bar chart";
        }
        return "chart";
      case Level::kFacet: return kind_noun(node_);
      case Level::kAxis:
        if (const auto* axis = std::get_if<AxisPayload>(&node_.payload)) {
          switch (chart_.field(axis->field).kind) {
            case FieldKind::kQuantitative: return "linear scale";
            case FieldKind::kTemporal: return "temporal scale";
            case FieldKind::kNominal: return "categorical scale";
          }
        }
        return "legend";
      case Level::kSection: return kind_noun(node_);
      case Level::kDatapoint: return "datapoint";
    }
    return "";
  }

  std::string range_or_distinct(std::size_t field_index, Brevity b) const {
    const FieldDef& f = chart_.field(field_index);
    const auto& t = templates();
    if (f.kind == FieldKind::kNominal) {
      std::vector<std::string> seen;
      for (std::size_t r : node_.rows) {
        auto v = format_value(data_.rows[r][field_index]);
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(std::move(v));
      }
      return substitute(t.fragment("field_distinct", b),
                        {{"count", std::to_string(seen.size())}, {"field", field_label(f)}});
    }
    const auto agg = aggregate(node_.rows, field_index, data_);
    return substitute(t.fragment("field_range", b), {{"field", field_label(f)},
                                                     {"lo", format_measure(f, agg->min)},
                                                     {"hi", format_measure(f, agg->max)},
                                                     {"unit", unit_suffix(f)}});
  }

  std::string data_values(Brevity b) const {
    if (node_.rows.empty()) return "";
    std::vector<std::string> parts;
    if (const auto* row = std::get_if<RowPayload>(&node_.payload)) {
      std::vector<std::size_t> listed;
      for (const auto& enc : chart_.encodings()) {
        if (std::find(listed.begin(), listed.end(), enc.field) != listed.end()) continue;
        listed.push_back(enc.field);
        const FieldDef& f = chart_.field(enc.field);
        parts.push_back(substitute(templates().fragment("field_value", b),
                                   {{"field", field_label(f)},
                                    {"value", format_value(data_.rows[row->row][enc.field])},
                                    {"unit", unit_suffix(f)}}));
      }
    } else if (const auto* axis = std::get_if<AxisPayload>(&node_.payload)) {
      parts.push_back(range_or_distinct(axis->field, b));
    } else if (const auto* legend = std::get_if<LegendPayload>(&node_.payload)) {
      parts.push_back(range_or_distinct(legend->field, b));
    } else {
      const std::size_t x = chart_.find(Channel::kX)->field;
      const std::size_t y = chart_.find(Channel::kY)->field;
      parts.push_back(range_or_distinct(x, b));
      if (y != x) parts.push_back(range_or_distinct(y, b));
    }
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += ", ";
      out += p;
    }
    return out;
  }

  std::string child_list_name(const HierarchyNode& child) const {
    if (const auto* axis = std::get_if<AxisPayload>(&child.payload)) {
      return field_label(chart_.field(axis->field));
    }
    if (const auto* legend = std::get_if<LegendPayload>(&child.payload)) {
      return field_label(chart_.field(legend->field));
    }
    return short_name(child);
  }

  // (capitalised list noun, count breakdown) for the node's children.
  std::pair<std::string, std::string> children_summary() const {
    const auto& children = node_.children;
    const std::size_t n = children.size();
    switch (node_.level) {
      case Level::kRoot:
      case Level::kFacet: {
        if (node_.level == Level::kRoot && tree_.has_facets()) {
          if (is_series_chart(tree_)) return {"Series", plural(n, "series", "series")};
          return {"Facets", plural(n, "facet", "facets")};
        }
        std::size_t legends = 0;
        for (NodeIndex c : children) {
          if (std::holds_alternative<LegendPayload>(tree_.node(c).payload)) ++legends;
        }
        const std::size_t axes = n - legends;
        if (legends == 0) return {"Axes", plural(axes, "axis", "axes")};
        return {"Axes and legend",
                plural(axes, "axis", "axes") + " and " + plural(legends, "legend", "legends")};
      }
      case Level::kAxis: {
        std::size_t field = 0;
        if (const auto* a = std::get_if<AxisPayload>(&node_.payload)) field = a->field;
        if (const auto* l = std::get_if<LegendPayload>(&node_.payload)) field = l->field;
        if (chart_.field(field).kind == FieldKind::kNominal) {
          return {"Categories", plural(n, "category", "categories")};
        }
        return {"Intervals", plural(n, "interval", "intervals")};
      }
      case Level::kSection: return {"Values", plural(n, "value", "values")};
      case Level::kDatapoint: return {"", ""};
    }
    return {"", ""};
  }

  std::string label(Channel channel) const {
    const ResolvedEncoding* enc = chart_.find(channel);
    return enc ? field_label(chart_.field(enc->field)) : "";
  }

 private:
  const HierarchyTree& tree_;
  const HierarchyNode& node_;
  const ValidatedChart& chart_;
  const Dataset& data_;
};

std::string ordinal(int n) {
  switch (n) {
    case 1: return "1st";
    case 2: return "2nd";
    case 3: return "3rd";
    default: return std::to_string(n) + "th";
  }
}

}  // namespace

std::span<const TokenInfo> token_catalog() { return kCatalog; }

const TokenInfo& token_info(TokenKind kind) {
  for (const auto& info : kCatalog) {
    if (info.kind == kind) return info;
  }
  return kCatalog.front();
}

std::string_view to_string(TokenKind kind) { return token_info(kind).name; }

std::string_view to_string(Brevity brevity) { return brevity == Brevity::kShort ? "short" : "long"; }

std::string_view to_string(Affordance affordance) {
  switch (affordance) {
    case Affordance::kLocation: return "location";
    case Affordance::kSurroundings: return "surroundings";
    case Affordance::kConsuming: return "consuming";
  }
  return "";
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::kUpwards: return "upwards";
    case Direction::kInPlace: return "in_place";
    case Direction::kDownwards: return "downwards";
  }
  return "";
}

std::optional<TokenKind> parse_token_kind(std::string_view name) {
  for (const auto& info : kCatalog) {
    if (info.name == name || info.alias == name) return info.kind;
  }
  return std::nullopt;
}

bool is_available(TokenKind kind, Level level) {
  const Direction d = token_info(kind).direction;
  if (level == Level::kRoot && d == Direction::kUpwards) return false;
  if (level == Level::kDatapoint && d == Direction::kDownwards) return false;
  return true;
}

std::vector<TokenKind> available_tokens(Level level) {
  std::vector<TokenKind> kinds;
  for (const auto& info : kCatalog) {
    if (is_available(info.kind, level)) kinds.push_back(info.kind);
  }
  return kinds;
}

std::optional<AggregateValues> aggregate(std::span<const std::size_t> rows, std::size_t field,
                                         const Dataset& data) {
  if (rows.empty()) return std::nullopt;
  // Neumaier-compensated sum keeps the mean accurate for long selections.
  double sum = 0.0, compensation = 0.0;
  AggregateValues out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  for (std::size_t r : rows) {
    const auto v = numeric(data.rows[r][field]);
    if (!v) return std::nullopt;
    const double t = sum + *v;
    compensation += std::abs(sum) >= std::abs(*v) ? (sum - t) + *v : (*v - t) + sum;
    sum = t;
    out.min = std::min(out.min, *v);
    out.max = std::max(out.max, *v);
  }
  out.avg = (sum + compensation) / static_cast<double>(rows.size());
  return out;
}

std::optional<AggregateValues> aggregate(const Selection& selection, std::size_t field,
                                         const Dataset& data) {
  const auto rows = select(selection, data);
  return aggregate(rows, field, data);
}

std::optional<std::size_t> measure_field(const ValidatedChart& chart) {
  for (Channel ch : {Channel::kY, Channel::kX}) {
    const auto* enc = chart.find(ch);
    if (enc && chart.field(enc->field).kind != FieldKind::kNominal) return enc->field;
  }
  return std::nullopt;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::optional<int> context_quartile(const HierarchyTree& tree, const HierarchyNode& node) {
  if (!node.parent) return std::nullopt;
  const auto field = measure_field(tree.chart());
  if (!field) return std::nullopt;
  const auto mine = aggregate(node.rows, *field, tree.data());
  const auto& parent = tree.node(*node.parent);
  if (!mine || parent.rows.empty()) return std::nullopt;

  std::vector<double> values;
  values.reserve(parent.rows.size());
  for (std::size_t r : parent.rows) values.push_back(*numeric(tree.data().rows[r][*field]));
  std::sort(values.begin(), values.end());
  const double mean = mine->avg;
  for (int q = 1; q <= 3; ++q) {
    if (mean <= quantile_sorted(values, q / 4.0)) return q;
  }
  return 4;
}

std::string render_token(TokenKind kind, Brevity brevity, const HierarchyTree& tree,
                         const HierarchyNode& node) {
  if (!is_available(kind, node.level)) return "";
  const NodeText text(tree, node);
  const std::string& tpl = templates().token(kind, brevity);
  const ValidatedChart& chart = tree.chart();

  switch (kind) {
    case TokenKind::kParentName: {
      if (!node.parent) return "";
      const HierarchyNode& parent = tree.node(*node.parent);
      if (const auto facet = tree.facet_of(parent)) {
        const HierarchyNode& f = tree.node(*facet);
        return substitute(tpl, {{"parent", text.short_name(f)}, {"parent_kind", text.kind_noun(f)}});
      }
      return substitute(tpl, {{"parent", text.short_name(parent)}, {"parent_kind", text.kind_noun(parent)}});
    }
    case TokenKind::kDepth:
      return substitute(tpl, {{"depth", std::to_string(node.depth + 1)}});
    case TokenKind::kContextQuantile: {
      const auto q = context_quartile(tree, node);
      if (!q) return "";
      return substitute(tpl, {{"ordinal", ordinal(*q)},
                              {"measure", field_label(chart.field(*measure_field(chart)))}});
    }
    case TokenKind::kNodeName:
      return substitute(tpl, {{"name", text.short_name(node)}, {"long_name", text.long_name()}});
    case TokenKind::kIndex: {
      const std::size_t count = tree.siblings(node).size();
      return substitute(tpl, {{"position", std::to_string(node.sibling_index + 1)},
                              {"count", std::to_string(count)},
                              {"siblings", text.sibling_count(count)}});
    }
    case TokenKind::kDataValues: {
      std::string values = text.data_values(brevity);
      if (values.empty()) return "";
      return substitute(tpl, {{"values", std::move(values)}});
    }
    case TokenKind::kObjectType: {
      std::string type = text.object_type();
      const bool vowel = !type.empty() && std::string_view("aeiou").find(type[0]) != std::string_view::npos;
      return substitute(tpl, {{"type", type}, {"article", vowel ? "an" : "a"}});
    }
    case TokenKind::kChildNames: {
      if (node.children.empty()) return "";
      std::vector<std::string> names;
      names.reserve(std::min<std::size_t>(node.children.size(), 4));
      for (NodeIndex c : node.children) {
        if (names.size() == 4) {
          names.resize(node.children.size());  // only the count matters past the shown names
          break;
        }
        names.push_back(text.child_list_name(tree.node(c)));
      }
      return substitute(tpl, {{"names", join_names(names)}, {"noun", text.children_summary().first}});
    }
    case TokenKind::kChildSize: {
      return substitute(tpl, {{"count", std::to_string(node.children.size())},
                              {"breakdown", text.children_summary().second}});
    }
    case TokenKind::kAggregate: {
      const auto field = measure_field(chart);
      if (!field) return "";
      const auto agg = aggregate(node.rows, *field, tree.data());
      if (!agg) return "";
      const FieldDef& f = chart.field(*field);
      return substitute(tpl, {{"measure", field_label(f)},
                              {"avg", format_measure(f, agg->avg)},
                              {"min", format_measure(f, agg->min)},
                              {"max", format_measure(f, agg->max)}});
    }
  }
  return "";
}

}  // namespace chartnav
