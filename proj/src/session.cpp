#include "chartnav/session.hpp"

#include <utility>

#include "chartnav/error.hpp"

namespace chartnav {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Announcement boundary(std::string text) { return {std::move(text), AnnouncementSource::kBoundary}; }

}  // namespace

std::string_view to_string(NavKey key) {
  switch (key) {
    case NavKey::kUp: return "up";
    case NavKey::kDown: return "down";
    case NavKey::kLeft: return "left";
    case NavKey::kRight: return "right";
    case NavKey::kX: return "x";
    case NavKey::kY: return "y";
  }
  return "";
}

std::optional<NavKey> parse_nav_key(std::string_view text) {
  for (NavKey k : {NavKey::kUp, NavKey::kDown, NavKey::kLeft, NavKey::kRight, NavKey::kX, NavKey::kY}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

Session::Session(std::shared_ptr<const HierarchyTree> tree, SettingsState settings)
    : tree_(std::move(tree)), cursor_(tree_->root().index), settings_(std::move(settings)) {}

void Session::log(ActionCategory category, std::string detail) {
  log_.push_back({std::chrono::system_clock::now(), category, std::move(detail)});
}

Announcement Session::current() const { return announce(*tree_, cursor(), settings_, focus_); }

const Preset& Session::create_preset(std::string name, Level level,
                                     std::vector<TokenSetting> entries) {
  return settings_.create_preset(std::move(name), level, std::move(entries));
}

void Session::reset() {
  cursor_ = tree_->root().index;
  focus_.clear();
}

std::optional<NodeIndex> Session::axis_target(Channel channel) const {
  const HierarchyNode& here = cursor();
  NodeIndex scope = tree_->root().index;
  if (const auto facet = tree_->facet_of(here)) {
    scope = *facet;
  } else if (here.level == Level::kRoot && tree_->has_facets()) {
    scope = tree_->level_nodes(Level::kFacet).front();
  }
  for (NodeIndex c : tree_->node(scope).children) {
    const auto* axis = std::get_if<AxisPayload>(&tree_->node(c).payload);
    if (axis && axis->channel == channel) return c;
  }
  return std::nullopt;
}

Announcement Session::navigate(NavKey key) {
  log(ActionCategory::kNavigation, std::string(to_string(key)));
  const HierarchyNode& here = cursor();
  std::optional<NodeIndex> target;
  switch (key) {
    case NavKey::kUp:
      if (!here.parent) return boundary("At the top of the hierarchy");
      target = here.parent;
      break;
    case NavKey::kDown:
      if (here.children.empty()) return boundary("No further detail below this node");
      target = here.children.front();
      break;
    case NavKey::kLeft:
      if (here.sibling_index == 0) return boundary("At the first item");
      target = tree_->siblings(here)[here.sibling_index - 1];
      break;
    case NavKey::kRight: {
      const auto siblings = tree_->siblings(here);
      if (here.sibling_index + 1 >= siblings.size()) return boundary("At the last item");
      target = siblings[here.sibling_index + 1];
      break;
    }
    case NavKey::kX:
    case NavKey::kY:
      target = axis_target(key == NavKey::kX ? Channel::kX : Channel::kY);
      if (!target) return boundary("No " + std::string(to_string(key)) + "-axis here");
      break;
  }
  cursor_ = *target;
  return current();
}

std::optional<Announcement> Session::apply(const Command& command) {
  const ActionCategory category = categorize_action(command);
  const std::string detail = format_command(command);
  const Level level = cursor().level;

  auto require_available = [&](TokenKind kind) {
    if (!is_available(kind, level)) {
      log(category, detail + " (inapplicable)");
      throw Error(ErrorCode::kInapplicableToken,
                  std::string(token_info(kind).alias) + " is not available at the " +
                      std::string(to_string(level)) + " level");
    }
  };

  if (const auto* speak = std::get_if<SpeakCommand>(&command)) {
    require_available(speak->kind);
    Brevity brevity = Brevity::kLong;
    if (level != Level::kRoot) {
      for (const auto& e : settings_.active(level).entries) {
        if (e.kind == speak->kind && e.setting == Setting::kShort) brevity = Brevity::kShort;
      }
    }
    std::string text = render_token(speak->kind, brevity, *tree_, cursor());
    if (text.empty()) text = "no " + std::string(token_info(speak->kind).alias) + " for this node";
    log(category, detail);
    return Announcement{std::move(text), AnnouncementSource::kSpeak};
  }
  if (const auto* focus = std::get_if<FocusCommand>(&command)) {
    require_available(focus->kind);
    focus_.focus(focus->kind);
  } else if (std::holds_alternative<ClearCommand>(command)) {
    focus_.clear();
  } else {
    const auto& preset = std::get<ApplyPresetCommand>(command);
    try {
      settings_.apply_preset(preset.level, preset.name);
    } catch (const Error&) {
      log(category, detail + " (unknown preset)");
      throw;
    }
  }
  log(category, detail);
  return std::nullopt;
}

ScriptStep parse_script_line(std::string_view line, std::size_t line_number) {
  const auto text = trim(line);
  if (const auto key = parse_nav_key(text)) return *key;
  if (const auto command = parse_command(text)) return *command;
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line_number) + ": cannot parse '" + std::string(text) + "'");
}

std::vector<TranscriptEntry> run_script(Session& session, std::span<const std::string> lines) {
  std::vector<std::pair<std::string, ScriptStep>> steps;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto text = trim(lines[i]);
    if (text.empty() || text.front() == '#') continue;
    steps.emplace_back(std::string(text), parse_script_line(text, i + 1));
  }

  std::vector<TranscriptEntry> transcript;
  transcript.reserve(steps.size());
  for (auto& [input, step] : steps) {
    TranscriptEntry entry{input, ""};
    if (const auto* key = std::get_if<NavKey>(&step)) {
      entry.announcement = session.navigate(*key).text;
    } else {
      try {
        if (auto a = session.apply(std::get<Command>(step))) entry.announcement = std::move(a->text);
      } catch (const Error& e) {
        entry.announcement = e.what();
      }
    }
    transcript.push_back(std::move(entry));
  }
  return transcript;
}

std::string format_transcript(std::span<const TranscriptEntry> transcript) {
  auto clean = [](std::string s) {
    for (char& c : s) {
      if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
  };
  std::string out;
  for (const auto& e : transcript) out += clean(e.input) + "\t" + clean(e.announcement) + "\n";
  return out;
}

double ActionSummary::percent(ActionCategory category) const {
  if (total() == 0) return 0.0;
  std::size_t count = 0;
  switch (category) {
    case ActionCategory::kPresence: count = presence; break;
    case ActionCategory::kOrdering: count = ordering; break;
    case ActionCategory::kBrevity: count = brevity; break;
    case ActionCategory::kNavigation: return 0.0;
  }
  return 100.0 * static_cast<double>(count) / static_cast<double>(total());
}

ActionSummary summarize_actions(std::span<const LogEntry> log) {
  ActionSummary s;
  for (const auto& e : log) {
    switch (e.category) {
      case ActionCategory::kPresence: ++s.presence; break;
      case ActionCategory::kOrdering: ++s.ordering; break;
      case ActionCategory::kBrevity: ++s.brevity; break;
      case ActionCategory::kNavigation: break;
    }
  }
  return s;
}

std::string format_summary(const ActionSummary& summary) {
  std::string out = "category\tcount\tpercent\n";
  const std::pair<ActionCategory, std::size_t> rows[] = {
      {ActionCategory::kPresence, summary.presence},
      {ActionCategory::kOrdering, summary.ordering},
      {ActionCategory::kBrevity, summary.brevity}};
  for (const auto& [category, count] : rows) {
    out += std::string(to_string(category)) + "\t" + std::to_string(count) + "\t" +
           format_number(summary.percent(category)) + "\n";
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

}  // namespace chartnav
