#include "doctest.h"

#include <random>

#include "chartnav/error.hpp"
#include "chartnav/session.hpp"
#include "fixtures.hpp"

using namespace chartnav;

namespace {

std::vector<TranscriptEntry> run(Session& s, std::vector<std::string> lines) {
  return run_script(s, lines);
}

}  // namespace

TEST_CASE("walkthrough down, down, right") {
  Session s(fixtures::sample_tree("penguins"));
  CHECK(s.navigate(NavKey::kDown).text.starts_with("X-axis"));
  CHECK(s.navigate(NavKey::kDown).text.starts_with("flipper length from 170 to 180 millimeters"));
  const auto a = s.navigate(NavKey::kRight);
  CHECK(a.source == AnnouncementSource::kNavigation);
  CHECK(s.cursor().id == "root/axis:x/section:180-190");
  CHECK(a.text.find("69 values") != std::string::npos);
}

TEST_CASE("boundaries leave the cursor in place") {
  Session s(fixtures::sample_tree("penguins"));
  const auto up = s.navigate(NavKey::kUp);
  CHECK(up.source == AnnouncementSource::kBoundary);
  CHECK(s.cursor().id == "root");
  CHECK(s.navigate(NavKey::kRight).source == AnnouncementSource::kBoundary);
  s.navigate(NavKey::kDown);
  CHECK(s.navigate(NavKey::kLeft).source == AnnouncementSource::kBoundary);
  CHECK(s.cursor().id == "root/axis:x");
}

TEST_CASE("axis shortcuts") {
  Session s(fixtures::sample_tree("penguins"));
  run(s, {"down", "down", "right", "down"});
  CHECK(s.cursor().level == Level::kDatapoint);
  s.navigate(NavKey::kY);
  CHECK(s.cursor().id == "root/axis:y");
  s.navigate(NavKey::kX);
  CHECK(s.cursor().id == "root/axis:x");

  Session stocks(fixtures::sample_tree("stocks"));
  stocks.navigate(NavKey::kY);
  CHECK(stocks.cursor().id == "root/facet:AAPL/axis:y");
  run(stocks, {"up", "right", "right", "down", "down"});
  stocks.navigate(NavKey::kY);
  CHECK(stocks.cursor().id == "root/facet:GOOG/axis:y");
}

TEST_CASE("run_script") {
  Session s(fixtures::sample_tree("penguins"));
  const auto t = run(s, {"down", "down", "right"});
  REQUIRE(t.size() == 3);
  CHECK(s.cursor().id == "root/axis:x/section:180-190");

  Session oracle(fixtures::sample_tree("penguins"));
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t[i].announcement == oracle.navigate(*parse_nav_key(t[i].input)).text);
  }

  Session empty(fixtures::sample_tree("penguins"));
  CHECK(run(empty, {}).empty());
  CHECK(run(empty, {"", "# comment"}).empty());
  CHECK(format_transcript(run(empty, {})).empty());

  Session focused(fixtures::sample_tree("penguins"));
  const auto f = run(focused, {"focus aggregate", "down"});
  CHECK(f[0].announcement.empty());
  CHECK(f[1].announcement.starts_with("average body mass"));

  Session bad(fixtures::sample_tree("penguins"));
  try {
    run(bad, {"down", "sideways"});
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(bad.cursor().id == "root");
}

TEST_CASE("speak does not change state") {
  Session s(fixtures::sample_tree("penguins"));
  run(s, {"down", "down", "focus index"});
  const auto cursor = s.cursor().index;
  const auto settings = s.settings();
  const auto focus = s.focus();
  const auto a = s.apply(SpeakCommand{TokenKind::kAggregate});
  REQUIRE(a);
  CHECK(a->source == AnnouncementSource::kSpeak);
  CHECK(a->text.starts_with("average body mass"));
  CHECK(s.cursor().index == cursor);
  CHECK(s.settings() == settings);
  CHECK(s.focus() == focus);
}

TEST_CASE("inapplicable and unknown commands are atomic") {
  Session s(fixtures::sample_tree("penguins"));
  run(s, {"down", "down", "down"});
  const auto settings = s.settings();
  const auto log_size = s.action_log().size();
  try {
    s.apply(FocusCommand{TokenKind::kAggregate});
    FAIL("expected InapplicableToken");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInapplicableToken);
  }
  CHECK(s.focus().empty());
  CHECK_THROWS_AS(s.apply(ApplyPresetCommand{Level::kAxis, "ghost"}), Error);
  CHECK(s.settings() == settings);
  CHECK(s.action_log().size() == log_size + 2);
}

TEST_CASE("preset shortcut changes later announcements") {
  Session s(fixtures::sample_tree("penguins"));
  const auto before = s.navigate(NavKey::kX).text;
  s.apply(ApplyPresetCommand{Level::kAxis, "low"});
  s.navigate(NavKey::kUp);
  const auto after = s.navigate(NavKey::kX).text;
  CHECK(after.size() < before.size());
  CHECK(after.starts_with("X-axis. 1 of 3"));
}

TEST_CASE("every action appends one log entry") {
  Session s(fixtures::sample_tree("stocks"));
  run(s, {"down", "speak size", "focus aggregate", "clear", "preset axis low", "up", "x"});
  const auto& log = s.action_log();
  REQUIRE(log.size() == 7);
  CHECK(log[0].category == ActionCategory::kNavigation);
  CHECK(log[1].category == ActionCategory::kPresence);
  CHECK(log[2].category == ActionCategory::kOrdering);
  CHECK(log[3].category == ActionCategory::kOrdering);
  CHECK(log[4].category == ActionCategory::kBrevity);
}

TEST_CASE("summary percentages") {
  Session s(fixtures::sample_tree("penguins"));
  std::vector<std::string> lines;
  for (int i = 0; i < 7; ++i) lines.push_back("speak index");
  lines.push_back("focus size");
  lines.push_back("focus children");
  lines.push_back("preset axis low");
  run(s, lines);
  const auto summary = summarize_actions(s.action_log());
  CHECK(summary.percent(ActionCategory::kPresence) == 70.0);
  CHECK(summary.percent(ActionCategory::kOrdering) == 20.0);
  CHECK(summary.percent(ActionCategory::kBrevity) == 10.0);
  CHECK(format_summary(summary) == "category\tcount\tpercent\npresence\t7\t70\nordering\t2\t20\nbrevity\t1\t10\n");
  CHECK(format_summary(ActionSummary{}) == "category\tcount\tpercent\npresence\t0\t0\nordering\t0\t0\nbrevity\t0\t0\n");
}

TEST_CASE("random walks stay valid and moves invert") {
  const auto tree = fixtures::sample_tree("stocks");
  std::mt19937_64 rng(23);
  const NavKey keys[] = {NavKey::kUp, NavKey::kDown, NavKey::kLeft, NavKey::kRight, NavKey::kX, NavKey::kY};
  for (int walk = 0; walk < 20; ++walk) {
    Session s(tree);
    for (int i = 0; i < 1000; ++i) {
      const NavKey key = keys[rng() % 6];
      const auto from = s.cursor().index;
      const auto a = s.navigate(key);
      const auto to = s.cursor().index;
      REQUIRE(to < tree->size());
      CHECK_FALSE(a.text.empty());
      if (a.source == AnnouncementSource::kBoundary) {
        CHECK(to == from);
        continue;
      }
      if (key == NavKey::kDown) {
        s.navigate(NavKey::kUp);
        CHECK(s.cursor().index == from);
        s.navigate(NavKey::kDown);
      } else if (key == NavKey::kRight) {
        s.navigate(NavKey::kLeft);
        CHECK(s.cursor().index == from);
        s.navigate(NavKey::kRight);
      } else if (key == NavKey::kLeft) {
        s.navigate(NavKey::kRight);
        CHECK(s.cursor().index == from);
        s.navigate(NavKey::kLeft);
      }
    }
  }
}

TEST_CASE("reset keeps settings but drops focus") {
  Session s(fixtures::sample_tree("penguins"));
  run(s, {"down", "focus aggregate", "preset axis high"});
  s.reset();
  CHECK(s.cursor().id == "root");
  CHECK(s.focus().empty());
  CHECK(s.settings().active_name(Level::kAxis) == "high");
}
