#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chartnav/format.hpp"
#include "json.hpp"

namespace chartnav {

enum class FieldKind { kQuantitative, kTemporal, kNominal };
enum class Mark { kPoint, kLine, kBar };
enum class Channel { kX, kY, kColor, kFacet };

std::string_view to_string(FieldKind kind);
std::string_view to_string(Mark mark);
std::string_view to_string(Channel channel);
std::optional<Channel> parse_channel(std::string_view name);
std::optional<Mark> parse_mark(std::string_view name);

struct FieldDef {
  std::string name;
  FieldKind kind = FieldKind::kNominal;
  std::optional<std::string> unit;  // e.g. "millimeters", inferred from a name suffix

  friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

// Human label for a field: underscores become spaces and a recognised unit
// suffix is dropped ("flipper_length_mm" -> "flipper length").
std::string field_label(const FieldDef& field);

using Value = std::variant<double, Timestamp, std::string>;

// Numbers as-is, timestamps as epoch milliseconds. Strings are not numeric.
std::optional<double> numeric(const Value& value);
std::string format_value(const Value& value);

struct EncodingDef {
  Channel channel = Channel::kX;
  std::string field;
  int bin_target_count = 10;

  friend bool operator==(const EncodingDef&, const EncodingDef&) = default;
};

struct DataPath {
  std::string path;
  friend bool operator==(const DataPath&, const DataPath&) = default;
};

struct InlineData {
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  friend bool operator==(const InlineData&, const InlineData&) = default;
};

struct ChartSpec {
  std::optional<std::string> title;
  Mark mark = Mark::kPoint;
  std::vector<EncodingDef> encodings;
  std::variant<DataPath, InlineData> data;

  const EncodingDef* encoding(Channel channel) const;

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

ChartSpec parse_spec(std::string_view text);
std::string serialize_spec(const ChartSpec& spec);

struct Dataset {
  std::vector<FieldDef> fields;
  std::vector<std::vector<Value>> rows;  // rows[r][f] pairs with fields[f]

  std::optional<std::size_t> field_index(std::string_view name) const;
  std::size_t row_count() const { return rows.size(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

Dataset load_csv(std::string_view text);
Dataset load_records(const nlohmann::ordered_json& values);

struct ResolvedEncoding {
  Channel channel = Channel::kX;
  std::size_t field = 0;  // index into Dataset::fields
  int bin_target_count = 10;
};

class ValidatedChart {
 public:
  const ChartSpec& spec() const { return spec_; }
  const Dataset& data() const { return data_; }
  const std::vector<ResolvedEncoding>& encodings() const { return encodings_; }
  const ResolvedEncoding* find(Channel channel) const;
  const FieldDef& field(std::size_t index) const { return data_.fields.at(index); }

 private:
  friend ValidatedChart validate(const ChartSpec& spec, const Dataset& data);

  ChartSpec spec_;
  Dataset data_;
  std::vector<ResolvedEncoding> encodings_;
};

// Resolves every encoding against the dataset. Facet and color fields must be
// nominal; x and y must be quantitative or temporal unless the mark is a bar.
ValidatedChart validate(const ChartSpec& spec, const Dataset& data);

// Reads a spec file and its data. A relative data path resolves against the
// spec's directory; `data_override` replaces the spec's data reference.
ValidatedChart load_chart(const std::filesystem::path& spec_path,
                          const std::optional<std::filesystem::path>& data_override = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace chartnav
