#include "chartnav/chart_model.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "chartnav/csv.hpp"
#include "chartnav/error.hpp"

namespace chartnav {
namespace {

using ojson = nlohmann::ordered_json;

struct UnitSuffix {
  std::string_view suffix;
  std::string_view unit;
};

constexpr std::array<UnitSuffix, 7> kUnitSuffixes = {{
    {"_mm", "millimeters"},
    {"_cm", "centimeters"},
    {"_km", "kilometers"},
    {"_kg", "kilograms"},
    {"_g", "grams"},
    {"_pct", "percent"},
    {"_usd", "dollars"},
}};

std::optional<std::string> infer_unit(std::string_view name) {
  for (const auto& s : kUnitSuffixes) {
    if (name.size() > s.suffix.size() && name.ends_with(s.suffix)) return std::string(s.unit);
  }
  return std::nullopt;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDocument, "malformed chart spec: " + what);
}

// Classifies the column and converts its cells. Every cell must fall in the
// same class (number, ISO date, free text); anything else is MixedTypes.
FieldKind infer_column(const std::string& name, const std::vector<std::vector<std::string>>& cells,
                       std::size_t column) {
  bool all_number = true;
  bool any_number = false;
  bool all_date = true;
  bool any_date = false;
  for (const auto& row : cells) {
    const std::string& cell = row[column];
    const bool is_number = parse_number(cell).has_value();
    const bool is_date = !is_number && parse_iso8601(cell).has_value();
    all_number = all_number && is_number;
    any_number = any_number || is_number;
    all_date = all_date && is_date;
    any_date = any_date || is_date;
  }
  if (all_number) return FieldKind::kQuantitative;
  if (all_date) return FieldKind::kTemporal;
  if (any_number || any_date) {
    throw Error(ErrorCode::kMixedTypes, "mixed value types in column '" + name + "'");
  }
  return FieldKind::kNominal;
}

Dataset build_dataset(std::vector<std::string> header, std::vector<std::vector<std::string>> cells) {
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty()) throw Error(ErrorCode::kMalformedDocument, "empty column name in header");
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kMalformedDocument, "duplicate column name '" + name + "'");
    }
  }
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].size() != header.size()) {
      throw Error(ErrorCode::kRaggedRows, "row " + std::to_string(r + 1) + " has " +
                                              std::to_string(cells[r].size()) + " values, expected " +
                                              std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (cells[r][c].empty()) {
        throw Error(ErrorCode::kEmptyCell,
                    "empty value in row " + std::to_string(r + 1) + ", column '" + header[c] + "'");
      }
    }
  }

  Dataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    data.fields.push_back({header[c], infer_column(header[c], cells, c), infer_unit(header[c])});
  }
  data.rows.reserve(cells.size());
  for (auto& row : cells) {
    std::vector<Value> values;
    values.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      switch (data.fields[c].kind) {
        case FieldKind::kQuantitative: values.emplace_back(*parse_number(row[c])); break;
        case FieldKind::kTemporal: values.emplace_back(*parse_iso8601(row[c])); break;
        case FieldKind::kNominal: values.emplace_back(std::move(row[c])); break;
      }
    }
    data.rows.push_back(std::move(values));
  }
  return data;
}

}  // namespace

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::kQuantitative: return "quantitative";
    case FieldKind::kTemporal: return "temporal";
    case FieldKind::kNominal: return "nominal";
  }
  return "";
}

std::string_view to_string(Mark mark) {
  switch (mark) {
    case Mark::kPoint: return "point";
    case Mark::kLine: return "line";
    case Mark::kBar: return "bar";
  }
  return "";
}

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::kX: return "x";
    case Channel::kY: return "y";
    case Channel::kColor: return "color";
    case Channel::kFacet: return "facet";
  }
  return "";
}

std::optional<Channel> parse_channel(std::string_view name) {
  for (Channel c : {Channel::kX, Channel::kY, Channel::kColor, Channel::kFacet}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<Mark> parse_mark(std::string_view name) {
  for (Mark m : {Mark::kPoint, Mark::kLine, Mark::kBar}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string field_label(const FieldDef& field) {
  std::string name = field.name;
  if (field.unit) {
    for (const auto& s : kUnitSuffixes) {
      if (s.unit == *field.unit && name.size() > s.suffix.size() && name.ends_with(s.suffix)) {
        name.resize(name.size() - s.suffix.size());
        break;
      }
    }
  }
  std::replace(name.begin(), name.end(), '_', ' ');
  return name;
}

std::optional<double> numeric(const Value& value) {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* t = std::get_if<Timestamp>(&value)) return static_cast<double>(t->epoch_ms);
  return std::nullopt;
}

std::string format_value(const Value& value) {
  if (const auto* d = std::get_if<double>(&value)) return format_number(*d);
  if (const auto* t = std::get_if<Timestamp>(&value)) return format_timestamp(*t);
  return std::get<std::string>(value);
}

const EncodingDef* ChartSpec::encoding(Channel channel) const {
  for (const auto& e : encodings) {
    if (e.channel == channel) return &e;
  }
  return nullptr;
}

ChartSpec parse_spec(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");

  ChartSpec spec;
  if (doc.contains("title")) {
    if (!doc["title"].is_string()) malformed("'title' must be a string");
    spec.title = doc["title"].get<std::string>();
  }

  if (!doc.contains("mark") || !doc["mark"].is_string()) malformed("'mark' must be a string");
  const auto mark = parse_mark(doc["mark"].get<std::string>());
  if (!mark) malformed("unknown mark '" + doc["mark"].get<std::string>() + "'");
  spec.mark = *mark;

  if (!doc.contains("encodings") || !doc["encodings"].is_array()) {
    malformed("'encodings' must be an array");
  }
  for (const auto& enc : doc["encodings"]) {
    if (!enc.is_object()) malformed("each encoding must be an object");
    if (!enc.contains("channel") || !enc["channel"].is_string()) {
      malformed("encoding 'channel' must be a string");
    }
    if (!enc.contains("field") || !enc["field"].is_string()) {
      malformed("encoding 'field' must be a string");
    }
    const auto name = enc["channel"].get<std::string>();
    const auto channel = parse_channel(name);
    if (!channel) throw Error(ErrorCode::kUnknownChannel, "unknown channel '" + name + "'");
    if (spec.encoding(*channel)) {
      throw Error(ErrorCode::kDuplicateChannel, "channel '" + name + "' is encoded twice");
    }
    EncodingDef def{*channel, enc["field"].get<std::string>(), 10};
    if (def.field.empty()) malformed("encoding 'field' is empty");
    if (enc.contains("binTargetCount")) {
      const auto& count = enc["binTargetCount"];
      if (!count.is_number_integer() || count.get<long long>() < 1 ||
          count.get<long long>() > 100000) {
        malformed("'binTargetCount' must be a positive integer");
      }
      def.bin_target_count = count.get<int>();
    }
    spec.encodings.push_back(std::move(def));
  }
  for (Channel required : {Channel::kX, Channel::kY}) {
    if (!spec.encoding(required)) {
      throw Error(ErrorCode::kMissingChannel,
                  "missing required channel '" + std::string(to_string(required)) + "'");
    }
  }

  if (!doc.contains("data") || !doc["data"].is_object()) malformed("'data' must be an object");
  const auto& data = doc["data"];
  if (data.contains("path") && data["path"].is_string()) {
    spec.data = DataPath{data["path"].get<std::string>()};
  } else if (data.contains("values") && data["values"].is_array()) {
    spec.data = InlineData{data["values"]};
  } else {
    malformed("'data' needs a string 'path' or a 'values' array");
  }
  return spec;
}

std::string serialize_spec(const ChartSpec& spec) {
  ojson doc = ojson::object();
  if (spec.title) doc["title"] = *spec.title;
  doc["mark"] = std::string(to_string(spec.mark));
  doc["encodings"] = ojson::array();
  for (const auto& e : spec.encodings) {
    doc["encodings"].push_back({{"channel", std::string(to_string(e.channel))},
                                {"field", e.field},
                                {"binTargetCount", e.bin_target_count}});
  }
  if (const auto* path = std::get_if<DataPath>(&spec.data)) {
    doc["data"] = {{"path", path->path}};
  } else {
    doc["data"] = {{"values", std::get<InlineData>(spec.data).values}};
  }
  return doc.dump(2) + "\n";
}

std::optional<std::size_t> Dataset::field_index(std::string_view name) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == name) return i;
  }
  return std::nullopt;
}

Dataset load_csv(std::string_view text) {
  auto records = parse_csv(text);
  if (records.empty()) throw Error(ErrorCode::kEmptySource, "data source is empty");
  auto header = std::move(records.front());
  records.erase(records.begin());
  return build_dataset(std::move(header), std::move(records));
}

Dataset load_records(const nlohmann::ordered_json& values) {
  if (!values.is_array()) throw Error(ErrorCode::kMalformedDocument, "inline data must be an array");
  if (values.empty()) throw Error(ErrorCode::kEmptySource, "inline data has no records");
  if (!values.front().is_object()) {
    throw Error(ErrorCode::kMalformedDocument, "inline records must be objects");
  }

  std::vector<std::string> header;
  for (const auto& [key, _] : values.front().items()) header.push_back(key);

  std::vector<std::vector<std::string>> cells;
  cells.reserve(values.size());
  for (std::size_t r = 0; r < values.size(); ++r) {
    const auto& record = values[r];
    if (!record.is_object()) {
      throw Error(ErrorCode::kMalformedDocument, "inline records must be objects");
    }
    if (record.size() != header.size()) {
      throw Error(ErrorCode::kRaggedRows, "record " + std::to_string(r + 1) + " has different keys");
    }
    std::vector<std::string> row;
    for (const auto& key : header) {
      if (!record.contains(key)) {
        throw Error(ErrorCode::kRaggedRows,
                    "record " + std::to_string(r + 1) + " lacks key '" + key + "'");
      }
      const auto& v = record[key];
      if (v.is_null()) {
        row.emplace_back();
      } else if (v.is_string()) {
        row.push_back(v.get<std::string>());
      } else if (v.is_number()) {
        row.push_back(v.dump());
      } else {
        throw Error(ErrorCode::kMalformedDocument,
                    "record " + std::to_string(r + 1) + " key '" + key + "' is not a scalar");
      }
    }
    cells.push_back(std::move(row));
  }
  return build_dataset(std::move(header), std::move(cells));
}

const ResolvedEncoding* ValidatedChart::find(Channel channel) const {
  for (const auto& e : encodings_) {
    if (e.channel == channel) return &e;
  }
  return nullptr;
}

ValidatedChart validate(const ChartSpec& spec, const Dataset& data) {
  ValidatedChart chart;
  chart.data_ = data;
  for (const auto& enc : spec.encodings) {
    const auto index = data.field_index(enc.field);
    if (!index) throw Error(ErrorCode::kFieldNotFound, "field '" + enc.field + "' not found in data");
    FieldDef& field = chart.data_.fields[*index];
    const bool positional = enc.channel == Channel::kX || enc.channel == Channel::kY;
    // Columns without rows were typed vacuously; the encoding decides.
    if (data.rows.empty() && !positional) field.kind = FieldKind::kNominal;
    bool ok = true;
    if (positional) {
      ok = field.kind != FieldKind::kNominal || spec.mark == Mark::kBar;
    } else {
      ok = field.kind == FieldKind::kNominal;
    }
    if (!ok) {
      throw Error(ErrorCode::kKindMismatch,
                  "field '" + field.name + "' is " + std::string(to_string(field.kind)) +
                      ", which cannot drive the " + std::string(to_string(enc.channel)) + " channel");
    }
    chart.encodings_.push_back({enc.channel, *index, enc.bin_target_count});
  }
  // Encodings keep a canonical channel order: x, y, color, facet.
  std::stable_sort(chart.encodings_.begin(), chart.encodings_.end(),
                   [](const ResolvedEncoding& a, const ResolvedEncoding& b) { return a.channel < b.channel; });
  chart.spec_ = spec;
  return chart;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ValidatedChart load_chart(const std::filesystem::path& spec_path,
                          const std::optional<std::filesystem::path>& data_override) {
  const ChartSpec spec = parse_spec(read_text_file(spec_path));
  Dataset data;
  if (data_override) {
    data = load_csv(read_text_file(*data_override));
  } else if (const auto* path = std::get_if<DataPath>(&spec.data)) {
    std::filesystem::path data_path(path->path);
    if (data_path.is_relative()) data_path = spec_path.parent_path() / data_path;
    data = load_csv(read_text_file(data_path));
  } else {
    data = load_records(std::get<InlineData>(spec.data).values);
  }
  return validate(spec, data);
}

}  // namespace chartnav
