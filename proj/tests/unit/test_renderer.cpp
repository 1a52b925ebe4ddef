#include "doctest.h"

#include "chartnav/renderer.hpp"
#include "fixtures.hpp"

using namespace chartnav;

namespace {

using K = TokenKind;

SettingsState with_preset(const std::string& name) {
  SettingsState s;
  for (Level level : kPresetLevels) s.apply_preset(level, name);
  return s;
}

}  // namespace

TEST_CASE("describe joins tokens in order") {
  const auto tree = fixtures::sample_tree("penguins");
  SettingsState state;
  state.create_preset("brief", Level::kAxis,
                      {{K::kNodeName, Setting::kShort}, {K::kIndex, Setting::kShort}});
  state.apply_preset(Level::kAxis, "brief");
  const auto& x = tree->node(fixtures::by_id(*tree, "root/axis:x"));
  CHECK(describe(*tree, x, state) == "X-axis. 1 of 3");
  CHECK(announce(*tree, x, state).text == "X-axis. 1 of 3");
}

TEST_CASE("all-off node uses the placeholder") {
  const auto tree = fixtures::sample_tree("penguins");
  SettingsState state;
  state.create_preset("silent", Level::kAxis, {});
  state.apply_preset(Level::kAxis, "silent");
  const auto& x = tree->node(fixtures::by_id(*tree, "root/axis:x"));
  CHECK(describe(*tree, x, state).empty());
  CHECK(announce(*tree, x, state).text == kNoDescription);
}

TEST_CASE("description equals its rendered tokens joined") {
  const auto tree = fixtures::sample_tree("stocks");
  const auto high = with_preset("high");
  FocusList focus;
  focus.focus(K::kAggregate);
  for (const auto& node : tree->nodes()) {
    std::string expected;
    for (const auto& t : effective_tokens(node.level, high, focus)) {
      const auto text = render_token(t.kind, t.brevity, *tree, node);
      if (text.empty()) continue;
      if (!expected.empty()) expected += kTokenSeparator;
      expected += text;
    }
    const auto got = describe(*tree, node, high, focus);
    CHECK(got == expected);
    CHECK_FALSE(got.starts_with(". "));
    CHECK_FALSE(got.ends_with(". "));
    CHECK(got.find(". . ") == std::string::npos);
  }
}

TEST_CASE("presets order description lengths") {
  const auto low = with_preset("low");
  const auto medium = with_preset("medium");
  const auto high = with_preset("high");
  const auto tree = fixtures::sample_tree("stocks");
  for (const auto& node : tree->nodes()) {
    const auto l = describe(*tree, node, low).size();
    const auto m = describe(*tree, node, medium).size();
    const auto h = describe(*tree, node, high).size();
    CHECK(l <= m);
    CHECK(m <= h);
    if (node.level != Level::kRoot) CHECK(l < h);
  }
}

TEST_CASE("tree dumps match golden files") {
  const auto penguins = fixtures::sample_tree("penguins");
  CHECK(render_tree(*penguins, with_preset("medium")) ==
        read_text_file(fixtures::golden_dir() / "penguins_medium.txt"));
  const auto stocks = fixtures::sample_tree("stocks");
  CHECK(render_tree(*stocks, with_preset("low")) ==
        read_text_file(fixtures::golden_dir() / "stocks_low.txt"));
}

TEST_CASE("tree dump shape") {
  const auto tree = fixtures::sample_tree("seattle_temps");
  const auto dump = render_tree(*tree, SettingsState{});
  CHECK(dump.find('\r') == std::string::npos);
  CHECK(dump.ends_with("\n"));
  std::size_t lines = 0;
  for (char c : dump) lines += c == '\n';
  CHECK(lines == tree->size());
  CHECK(dump.starts_with("chart titled"));
  CHECK(dump.find("\n  X-axis") != std::string::npos);
  CHECK(render_tree(*tree, SettingsState{}) == dump);
}
