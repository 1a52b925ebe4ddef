#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chartnav/hierarchy.hpp"
#include "chartnav/tokens.hpp"

namespace chartnav {

enum class Setting { kOff, kShort, kLong };
std::string_view to_string(Setting setting);
std::optional<Setting> parse_setting(std::string_view name);

struct TokenSetting {
  TokenKind kind;
  Setting setting;
  friend bool operator==(const TokenSetting&, const TokenSetting&) = default;
};

// Entry order is narration order.
struct Preset {
  std::string name;
  Level level = Level::kAxis;
  std::vector<TokenSetting> entries;
  friend bool operator==(const Preset&, const Preset&) = default;
};

// The four levels that carry presets. The root reads a fixed summary.
inline constexpr std::array<Level, 4> kPresetLevels = {Level::kFacet, Level::kAxis, Level::kSection,
                                                      Level::kDatapoint};
// Display name used by the settings menu: "Facet", "Axis", ...
std::string_view level_title(Level level);

inline constexpr std::string_view kDefaultPreset = "medium";

// high: every available kind, long. medium: the wayfinding subset
// (node_name, index, child_names, child_size; plus data_values at datapoints),
// long. low: the medium subset, short. Unlisted kinds are present as off.
std::vector<Preset> builtin_presets(Level level);

class SettingsState {
 public:
  SettingsState();

  const std::string& active_name(Level level) const;
  const Preset& active(Level level) const;
  const Preset* find(Level level, std::string_view name) const;
  std::vector<std::string> preset_names(Level level) const;
  const std::vector<Preset>& custom_presets() const { return custom_; }

  // Throws kUnknownPreset.
  void apply_preset(Level level, std::string_view name);

  // Validates and stores a user preset. Kinds missing from `entries` are
  // appended as off. Throws kEmptyName, kDuplicateName, kUnknownToken,
  // kDuplicateToken.
  const Preset& create_preset(std::string name, Level level, std::vector<TokenSetting> entries);

  friend bool operator==(const SettingsState& a, const SettingsState& b) {
    return a.active_ == b.active_ && a.custom_ == b.custom_;
  }

 private:
  std::map<Level, std::string> active_;
  std::vector<Preset> custom_;
};

// "depth (long), index (short)" for the active customization's menu label.
std::string describe_preset(const Preset& preset);

// Ephemeral ordering state, most recently focused first.
class FocusList {
 public:
  void focus(TokenKind kind);
  void clear() { kinds_.clear(); }
  std::span<const TokenKind> kinds() const { return kinds_; }
  bool empty() const { return kinds_.empty(); }

  friend bool operator==(const FocusList&, const FocusList&) = default;

 private:
  std::vector<TokenKind> kinds_;
};

struct EffectiveToken {
  TokenKind kind;
  Brevity brevity;
  friend bool operator==(const EffectiveToken&, const EffectiveToken&) = default;
};

// Active preset for the level minus off entries, then each focused kind moved
// to the front, most recent ending first. A focused kind that the preset has
// off is included at long brevity; kinds unavailable at the level are skipped.
std::vector<EffectiveToken> effective_tokens(Level level, const SettingsState& settings,
                                             const FocusList& focus);

// Fixed token list read for the root summary.
std::vector<EffectiveToken> root_summary_tokens();

struct SpeakCommand {
  TokenKind kind;
  friend bool operator==(const SpeakCommand&, const SpeakCommand&) = default;
};
struct FocusCommand {
  TokenKind kind;
  friend bool operator==(const FocusCommand&, const FocusCommand&) = default;
};
struct ClearCommand {
  friend bool operator==(const ClearCommand&, const ClearCommand&) = default;
};
struct ApplyPresetCommand {
  Level level;
  std::string name;
  friend bool operator==(const ApplyPresetCommand&, const ApplyPresetCommand&) = default;
};

using Command = std::variant<SpeakCommand, FocusCommand, ClearCommand, ApplyPresetCommand>;

// "speak size", "focus aggregate", "clear", "preset axis low". A bare token
// name or alias is read as a speak command, as in the command box.
std::optional<Command> parse_command(std::string_view text);
std::string format_command(const Command& command);

// Edits made in the preset builder.
struct SettingToggle {
  Level level;
  TokenKind kind;
  Setting from;
  Setting to;
};
struct EntryReorder {
  Level level;
  TokenKind kind;
  std::size_t from_position;
  std::size_t to_position;
};
using SettingChange = std::variant<SettingToggle, EntryReorder>;

enum class ActionCategory { kNavigation, kPresence, kOrdering, kBrevity };
std::string_view to_string(ActionCategory category);

// Speak and off<->on toggles are presence; focus, clear and reorders are
// ordering; short<->long toggles and preset shortcuts are brevity.
ActionCategory categorize_action(const Command& command);
ActionCategory categorize_action(const SettingChange& change);

inline constexpr int kSettingsVersion = 1;

std::string save_settings(const SettingsState& state);
// Throws kVersionMismatch or kMalformedDocument.
SettingsState load_settings(std::string_view document);

// Writes to a sibling temp file and renames it over `path`.
void save_settings_file(const SettingsState& state, const std::filesystem::path& path);
SettingsState load_settings_file(const std::filesystem::path& path);

}  // namespace chartnav
