#include "chartnav/customization.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "chartnav/error.hpp"
#include "json.hpp"

namespace chartnav {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kBuiltinNames = {"high", "medium", "low"};

bool is_preset_level(Level level) {
  return std::find(kPresetLevels.begin(), kPresetLevels.end(), level) != kPresetLevels.end();
}

bool in_medium_subset(TokenKind kind, Level level) {
  switch (kind) {
    case TokenKind::kNodeName:
    case TokenKind::kIndex:
    case TokenKind::kChildNames:
    case TokenKind::kChildSize:
      return true;
    case TokenKind::kDataValues:
      return level == Level::kDatapoint;
    default:
      return false;
  }
}

Preset make_builtin(std::string_view name, Level level) {
  Preset preset{std::string(name), level, {}};
  for (TokenKind kind : available_tokens(level)) {
    Setting s = Setting::kLong;
    if (name != "high") {
      s = !in_medium_subset(kind, level) ? Setting::kOff
          : name == "low"                ? Setting::kShort
                                         : Setting::kLong;
    }
    preset.entries.push_back({kind, s});
  }
  return preset;
}

const std::vector<Preset>& builtins_for(Level level) {
  static const std::map<Level, std::vector<Preset>> table = [] {
    std::map<Level, std::vector<Preset>> t;
    for (Level l : kPresetLevels) t[l] = builtin_presets(l);
    return t;
  }();
  return table.at(level);
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDocument, "malformed settings document: " + what);
}

}  // namespace

std::string_view to_string(Setting setting) {
  switch (setting) {
    case Setting::kOff: return "off";
    case Setting::kShort: return "short";
    case Setting::kLong: return "long";
  }
  return "";
}

std::optional<Setting> parse_setting(std::string_view name) {
  for (Setting s : {Setting::kOff, Setting::kShort, Setting::kLong}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view level_title(Level level) {
  switch (level) {
    case Level::kRoot: return "Root";
    case Level::kFacet: return "Facet";
    case Level::kAxis: return "Axis";
    case Level::kSection: return "Section";
    case Level::kDatapoint: return "Datapoint";
  }
  return "";
}

std::vector<Preset> builtin_presets(Level level) {
  std::vector<Preset> out;
  for (auto name : kBuiltinNames) out.push_back(make_builtin(name, level));
  return out;
}

SettingsState::SettingsState() {
  for (Level l : kPresetLevels) active_[l] = std::string(kDefaultPreset);
}

const std::string& SettingsState::active_name(Level level) const { return active_.at(level); }

const Preset& SettingsState::active(Level level) const {
  return *find(level, active_.at(level));
}

const Preset* SettingsState::find(Level level, std::string_view name) const {
  if (!is_preset_level(level)) return nullptr;
  for (const auto& p : builtins_for(level)) {
    if (p.name == name) return &p;
  }
  for (const auto& p : custom_) {
    if (p.level == level && p.name == name) return &p;
  }
  return nullptr;
}

std::vector<std::string> SettingsState::preset_names(Level level) const {
  std::vector<std::string> names;
  if (!is_preset_level(level)) return names;
  for (auto n : kBuiltinNames) names.emplace_back(n);
  for (const auto& p : custom_) {
    if (p.level == level) names.push_back(p.name);
  }
  return names;
}

void SettingsState::apply_preset(Level level, std::string_view name) {
  if (!find(level, name)) {
    throw Error(ErrorCode::kUnknownPreset, "no preset named '" + std::string(name) + "' at the " +
                                               std::string(to_string(level)) + " level");
  }
  active_[level] = std::string(name);
}

const Preset& SettingsState::create_preset(std::string name, Level level,
                                           std::vector<TokenSetting> entries) {
  if (name.empty()) throw Error(ErrorCode::kEmptyName, "preset name is empty");
  if (!is_preset_level(level)) {
    throw Error(ErrorCode::kUnknownPreset,
                "presets cannot target the " + std::string(to_string(level)) + " level");
  }
  if (find(level, name)) {
    throw Error(ErrorCode::kDuplicateName, "a preset named '" + name + "' already exists at the " +
                                               std::string(to_string(level)) + " level");
  }
  std::set<TokenKind> seen;
  for (const auto& e : entries) {
    if (!is_available(e.kind, level)) {
      throw Error(ErrorCode::kUnknownToken, "token '" + std::string(to_string(e.kind)) +
                                                "' is not available at the " +
                                                std::string(to_string(level)) + " level");
    }
    if (!seen.insert(e.kind).second) {
      throw Error(ErrorCode::kDuplicateToken,
                  "token '" + std::string(to_string(e.kind)) + "' listed twice");
    }
  }
  for (TokenKind kind : available_tokens(level)) {
    if (!seen.count(kind)) entries.push_back({kind, Setting::kOff});
  }
  custom_.push_back({std::move(name), level, std::move(entries)});
  return custom_.back();
}

std::string describe_preset(const Preset& preset) {
  std::string out;
  for (const auto& e : preset.entries) {
    if (e.setting == Setting::kOff) continue;
    if (!out.empty()) out += ", ";
    out += std::string(to_string(e.kind)) + " (" + std::string(to_string(e.setting)) + ")";
  }
  return out.empty() ? "no tokens" : out;
}

void FocusList::focus(TokenKind kind) {
  std::erase(kinds_, kind);
  kinds_.insert(kinds_.begin(), kind);
}

std::vector<EffectiveToken> effective_tokens(Level level, const SettingsState& settings,
                                             const FocusList& focus) {
  if (level == Level::kRoot) return root_summary_tokens();

  std::vector<EffectiveToken> out;
  const Preset& preset = settings.active(level);
  for (const auto& e : preset.entries) {
    if (e.setting != Setting::kOff) {
      out.push_back({e.kind, e.setting == Setting::kShort ? Brevity::kShort : Brevity::kLong});
    }
  }
  // Oldest focus first so the most recent one ends up in front.
  const auto kinds = focus.kinds();
  for (auto it = kinds.rbegin(); it != kinds.rend(); ++it) {
    const TokenKind kind = *it;
    if (!is_available(kind, level)) continue;
    auto pos = std::find_if(out.begin(), out.end(),
                            [&](const EffectiveToken& t) { return t.kind == kind; });
    EffectiveToken token{kind, Brevity::kLong};
    if (pos != out.end()) {
      token = *pos;
      out.erase(pos);
    }
    out.insert(out.begin(), token);
  }
  return out;
}

std::vector<EffectiveToken> root_summary_tokens() {
  return {{TokenKind::kNodeName, Brevity::kLong},
          {TokenKind::kObjectType, Brevity::kLong},
          {TokenKind::kChildSize, Brevity::kLong},
          {TokenKind::kChildNames, Brevity::kLong}};
}

std::optional<Command> parse_command(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    if (pos > start) words.push_back(text.substr(start, pos - start));
  }
  if (words.empty()) return std::nullopt;

  if (words.size() == 1) {
    if (words[0] == "clear") return ClearCommand{};
    if (const auto kind = parse_token_kind(words[0])) return SpeakCommand{*kind};
    return std::nullopt;
  }
  if (words.size() == 2 && (words[0] == "speak" || words[0] == "focus")) {
    const auto kind = parse_token_kind(words[1]);
    if (!kind) return std::nullopt;
    if (words[0] == "speak") return SpeakCommand{*kind};
    return FocusCommand{*kind};
  }
  if (words.size() == 3 && words[0] == "preset") {
    const auto level = parse_level(words[1]);
    if (!level || !is_preset_level(*level)) return std::nullopt;
    return ApplyPresetCommand{*level, std::string(words[2])};
  }
  return std::nullopt;
}

std::string format_command(const Command& command) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SpeakCommand>) {
          return "speak " + std::string(to_string(c.kind));
        } else if constexpr (std::is_same_v<T, FocusCommand>) {
          return "focus " + std::string(to_string(c.kind));
        } else if constexpr (std::is_same_v<T, ClearCommand>) {
          return "clear";
        } else {
          return "preset " + std::string(to_string(c.level)) + " " + c.name;
        }
      },
      command);
}

std::string_view to_string(ActionCategory category) {
  switch (category) {
    case ActionCategory::kNavigation: return "navigation";
    case ActionCategory::kPresence: return "presence";
    case ActionCategory::kOrdering: return "ordering";
    case ActionCategory::kBrevity: return "brevity";
  }
  return "";
}

ActionCategory categorize_action(const Command& command) {
  if (std::holds_alternative<SpeakCommand>(command)) return ActionCategory::kPresence;
  if (std::holds_alternative<ApplyPresetCommand>(command)) return ActionCategory::kBrevity;
  return ActionCategory::kOrdering;
}

ActionCategory categorize_action(const SettingChange& change) {
  if (const auto* toggle = std::get_if<SettingToggle>(&change)) {
    const bool was_on = toggle->from != Setting::kOff;
    const bool is_on = toggle->to != Setting::kOff;
    return was_on != is_on ? ActionCategory::kPresence : ActionCategory::kBrevity;
  }
  return ActionCategory::kOrdering;
}

std::string save_settings(const SettingsState& state) {
  ojson doc = ojson::object();
  doc["version"] = kSettingsVersion;
  doc["active"] = ojson::object();
  for (Level l : kPresetLevels) doc["active"][std::string(to_string(l))] = state.active_name(l);
  doc["custom"] = ojson::array();
  for (const auto& p : state.custom_presets()) {
    ojson entries = ojson::array();
    for (const auto& e : p.entries) {
      entries.push_back({{"kind", std::string(to_string(e.kind))},
                         {"setting", std::string(to_string(e.setting))}});
    }
    doc["custom"].push_back(
        {{"name", p.name}, {"level", std::string(to_string(p.level))}, {"entries", entries}});
  }
  return doc.dump(2) + "\n";
}

SettingsState load_settings(std::string_view document) {
  ojson doc;
  try {
    doc = ojson::parse(document);
  } catch (const ojson::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "version" && key != "active" && key != "custom") malformed("unknown key '" + key + "'");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    malformed("'version' must be an integer");
  }
  if (doc["version"].get<long long>() != kSettingsVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "settings version " + doc["version"].dump() + " is not supported (expected " +
                    std::to_string(kSettingsVersion) + ")");
  }

  SettingsState state;
  if (doc.contains("custom")) {
    if (!doc["custom"].is_array()) malformed("'custom' must be an array");
    for (const auto& p : doc["custom"]) {
      if (!p.is_object() || !p.contains("name") || !p["name"].is_string() || !p.contains("level") ||
          !p["level"].is_string() || !p.contains("entries") || !p["entries"].is_array()) {
        malformed("custom presets need 'name', 'level' and 'entries'");
      }
      const auto level = parse_level(p["level"].get<std::string>());
      if (!level) malformed("unknown level '" + p["level"].get<std::string>() + "'");
      std::vector<TokenSetting> entries;
      for (const auto& e : p["entries"]) {
        if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() ||
            !e.contains("setting") || !e["setting"].is_string()) {
          malformed("entries need string 'kind' and 'setting'");
        }
        const auto kind = parse_token_kind(e["kind"].get<std::string>());
        const auto setting = parse_setting(e["setting"].get<std::string>());
        if (!kind || !setting) malformed("bad entry " + e.dump());
        entries.push_back({*kind, *setting});
      }
      try {
        state.create_preset(p["name"].get<std::string>(), *level, std::move(entries));
      } catch (const Error& err) {
        malformed(err.what());
      }
    }
  }
  if (doc.contains("active")) {
    if (!doc["active"].is_object()) malformed("'active' must be an object");
    for (const auto& [key, value] : doc["active"].items()) {
      const auto level = parse_level(key);
      if (!level || !is_preset_level(*level) || !value.is_string()) {
        malformed("bad active entry '" + key + "'");
      }
      try {
        state.apply_preset(*level, value.get<std::string>());
      } catch (const Error& err) {
        malformed(err.what());
      }
    }
  }
  return state;
}

void save_settings_file(const SettingsState& state, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp.string() + "'");
    out << save_settings(state);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace '" + path.string() + "': " + ec.message());
}

SettingsState load_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read file '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_settings(text);
}

}  // namespace chartnav
