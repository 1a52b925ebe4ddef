#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chartnav/customization.hpp"
#include "chartnav/hierarchy.hpp"
#include "chartnav/renderer.hpp"

namespace chartnav {

enum class NavKey { kUp, kDown, kLeft, kRight, kX, kY };
std::string_view to_string(NavKey key);
std::optional<NavKey> parse_nav_key(std::string_view text);

struct LogEntry {
  std::chrono::system_clock::time_point time;
  ActionCategory category;
  std::string detail;
};

// One user's cursor, settings and ephemeral focus over a shared tree.
class Session {
 public:
  explicit Session(std::shared_ptr<const HierarchyTree> tree, SettingsState settings = {});

  const HierarchyTree& tree() const { return *tree_; }
  const HierarchyNode& cursor() const { return tree_->node(cursor_); }
  const SettingsState& settings() const { return settings_; }
  const FocusList& focus() const { return focus_; }
  const std::vector<LogEntry>& action_log() const { return log_; }

  // Moves the cursor. A move with no target leaves the cursor in place and
  // returns a boundary announcement.
  Announcement navigate(NavKey key);

  // Speak returns an announcement and changes nothing else. Focus, Clear and
  // ApplyPreset return nothing. Errors (kInapplicableToken, kUnknownPreset)
  // leave cursor, settings and focus untouched; the attempt is still logged.
  std::optional<Announcement> apply(const Command& command);

  Announcement current() const;

  // Saves a user preset into the persistent settings; see SettingsState.
  const Preset& create_preset(std::string name, Level level, std::vector<TokenSetting> entries);

  // Returns to the root and drops ephemeral focus; settings persist.
  void reset();

 private:
  void log(ActionCategory category, std::string detail);
  std::optional<NodeIndex> axis_target(Channel channel) const;

  std::shared_ptr<const HierarchyTree> tree_;
  NodeIndex cursor_ = 0;
  SettingsState settings_;
  FocusList focus_;
  std::vector<LogEntry> log_;
};

using ScriptStep = std::variant<NavKey, Command>;

// Throws Error(kParseError) naming `line_number` for unrecognised input.
ScriptStep parse_script_line(std::string_view line, std::size_t line_number);

struct TranscriptEntry {
  std::string input;
  std::string announcement;  // empty for commands that announce nothing
};

// Blank lines and lines starting with '#' are skipped. Every other line must
// parse before anything runs.
std::vector<TranscriptEntry> run_script(Session& session, std::span<const std::string> lines);

// Tab-separated "input<TAB>announcement" lines.
std::string format_transcript(std::span<const TranscriptEntry> transcript);

struct ActionSummary {
  std::size_t presence = 0;
  std::size_t ordering = 0;
  std::size_t brevity = 0;

  std::size_t total() const { return presence + ordering + brevity; }
  double percent(ActionCategory category) const;
};

// Counts command entries by category; navigation is not counted.
ActionSummary summarize_actions(std::span<const LogEntry> log);
std::string format_summary(const ActionSummary& summary);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace chartnav
