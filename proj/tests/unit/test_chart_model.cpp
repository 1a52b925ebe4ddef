#include "doctest.h"

#include <random>

#include "chartnav/chart_model.hpp"
#include "chartnav/error.hpp"
#include "fixtures.hpp"

using namespace chartnav;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

const char* kPenguinSpec = R"({"mark":"point","encodings":[
  {"channel":"x","field":"flipper_length_mm"},
  {"channel":"y","field":"body_mass_g"},
  {"channel":"color","field":"species"}],"data":{"path":"penguins.csv"}})";

}  // namespace

TEST_CASE("parse_spec examples") {
  const auto spec = parse_spec(kPenguinSpec);
  CHECK(spec.mark == Mark::kPoint);
  REQUIRE(spec.encodings.size() == 3);
  CHECK(spec.encoding(Channel::kColor)->field == "species");
  CHECK(spec.encoding(Channel::kX)->bin_target_count == 10);
  CHECK(std::get<DataPath>(spec.data).path == "penguins.csv");

  const auto minimal = parse_spec(
      R"({"mark":"line","encodings":[{"channel":"x","field":"a"},{"channel":"y","field":"b"}],
          "data":{"values":[{"a":1,"b":2}]}})");
  CHECK(minimal.encodings.size() == 2);
  CHECK_FALSE(minimal.title);
}

TEST_CASE("parse_spec errors") {
  auto with = [](const std::string& enc) {
    return R"({"mark":"point","encodings":[)" + enc + R"(],"data":{"path":"d.csv"}})";
  };
  CHECK(code_of([&] {
          parse_spec(with(R"({"channel":"x","field":"a"},{"channel":"x","field":"b"},{"channel":"y","field":"c"})"));
        }) == ErrorCode::kDuplicateChannel);
  CHECK(code_of([&] {
          parse_spec(with(R"({"channel":"x","field":"a"},{"channel":"size","field":"b"},{"channel":"y","field":"c"})"));
        }) == ErrorCode::kUnknownChannel);
  CHECK(code_of([&] { parse_spec(with(R"({"channel":"x","field":"a"})")); }) ==
        ErrorCode::kMissingChannel);
  CHECK(code_of([&] { parse_spec("{not json"); }) == ErrorCode::kMalformedDocument);
  CHECK(code_of([&] { parse_spec(R"({"mark":"pie","encodings":[],"data":{"path":"x"}})"); }) ==
        ErrorCode::kMalformedDocument);
  CHECK(code_of([&] {
          parse_spec(with(R"({"channel":"x","field":"a","binTargetCount":0},{"channel":"y","field":"c"})"));
        }) == ErrorCode::kMalformedDocument);
}

TEST_CASE("parse_spec and serialize_spec round-trip") {
  std::mt19937_64 rng(11);
  const char* channels[] = {"x", "y", "color", "facet"};
  const char* marks[] = {"point", "line", "bar"};
  for (int i = 0; i < 200; ++i) {
    ChartSpec spec;
    if (rng() % 2) spec.title = "t" + std::to_string(rng() % 1000) + " \"q\"";
    spec.mark = *parse_mark(marks[rng() % 3]);
    for (int c = 0; c < 4; ++c) {
      if (c < 2 || rng() % 2) {
        spec.encodings.push_back({*parse_channel(channels[c]), "f" + std::to_string(rng() % 50),
                                  static_cast<int>(1 + rng() % 100)});
      }
    }
    if (rng() % 2) {
      spec.data = DataPath{"dir/data " + std::to_string(i) + ".csv"};
    } else {
      spec.data = InlineData{nlohmann::ordered_json::parse(R"([{"a":1,"b":"x"}])")};
    }
    const auto text = serialize_spec(spec);
    CHECK(parse_spec(text) == spec);
    CHECK(serialize_spec(parse_spec(text)) == text);
  }
}

TEST_CASE("load_csv inference") {
  const auto data = load_csv("a,b\n1,x\n2,y");
  REQUIRE(data.fields.size() == 2);
  CHECK(data.fields[0].kind == FieldKind::kQuantitative);
  CHECK(data.fields[1].kind == FieldKind::kNominal);
  CHECK(data.row_count() == 2);
  CHECK(std::get<double>(data.rows[1][0]) == 2.0);

  const auto dates = load_csv("d\n2000-01-01\n2000-02-01\n");
  CHECK(dates.fields[0].kind == FieldKind::kTemporal);

  CHECK(load_csv("flipper_length_mm\n1\n").fields[0].unit == "millimeters");
  CHECK(field_label(load_csv("flipper_length_mm\n1\n").fields[0]) == "flipper length");

  CHECK(code_of([] { load_csv("a\n1\nfoo"); }) == ErrorCode::kMixedTypes);
  CHECK(code_of([] { load_csv("a,b\n1\n"); }) == ErrorCode::kRaggedRows);
  CHECK(code_of([] { load_csv(""); }) == ErrorCode::kEmptySource);
  CHECK(code_of([] { load_csv("a,b\n1,\n"); }) == ErrorCode::kEmptyCell);
}

TEST_CASE("load_csv preserves row order and count") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int n = static_cast<int>(rng() % 200);
    std::string csv = "k,v\n";
    for (int r = 0; r < n; ++r) csv += std::to_string(r) + ",\"v," + std::to_string(rng() % 7) + "\"\n";
    const auto data = load_csv(csv);
    REQUIRE(data.row_count() == static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) CHECK(std::get<double>(data.rows[r][0]) == r);
  }
}

TEST_CASE("load_records matches csv inference") {
  const auto data = load_records(nlohmann::ordered_json::parse(R"([{"a":1,"b":"x"},{"a":2.5,"b":"y"}])"));
  CHECK(data == load_csv("a,b\n1,x\n2.5,y\n"));
}

TEST_CASE("validate") {
  const auto data = load_csv(read_text_file(fixtures::samples_dir() / "penguins.csv"));
  CHECK_NOTHROW(validate(parse_spec(kPenguinSpec), data));

  const auto missing = parse_spec(
      R"({"mark":"point","encodings":[{"channel":"x","field":"speed"},{"channel":"y","field":"body_mass_g"}],
          "data":{"path":"p.csv"}})");
  try {
    validate(missing, data);
    FAIL("expected FieldNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFieldNotFound);
    CHECK(std::string(e.what()).find("speed") != std::string::npos);
  }

  const auto quant_facet = parse_spec(
      R"({"mark":"point","encodings":[{"channel":"x","field":"flipper_length_mm"},
          {"channel":"y","field":"body_mass_g"},{"channel":"facet","field":"year"}],"data":{"path":"p.csv"}})");
  CHECK(code_of([&] { validate(quant_facet, data); }) == ErrorCode::kKindMismatch);

  const auto nominal_x = parse_spec(
      R"({"mark":"bar","encodings":[{"channel":"x","field":"species"},{"channel":"y","field":"body_mass_g"}],
          "data":{"path":"p.csv"}})");
  CHECK_NOTHROW(validate(nominal_x, data));
  auto as_point = nominal_x;
  as_point.mark = Mark::kPoint;
  CHECK(code_of([&] { validate(as_point, data); }) == ErrorCode::kKindMismatch);
}

TEST_CASE("load_chart names a missing file") {
  try {
    load_chart("/nonexistent/chart.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
    CHECK(std::string(e.what()).find("/nonexistent/chart.json") != std::string::npos);
  }
}
