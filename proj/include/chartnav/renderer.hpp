#pragma once

#include <string>
#include <string_view>

#include "chartnav/customization.hpp"
#include "chartnav/hierarchy.hpp"

namespace chartnav {

enum class AnnouncementSource { kNavigation, kSpeak, kBoundary, kMenu };
std::string_view to_string(AnnouncementSource source);

// What a screen reader would voice.
struct Announcement {
  std::string text;
  AnnouncementSource source = AnnouncementSource::kNavigation;
  friend bool operator==(const Announcement&, const Announcement&) = default;
};

inline constexpr std::string_view kTokenSeparator = ". ";
inline constexpr std::string_view kNoDescription = "(no description)";

// Effective tokens rendered in order and joined with ". ". Tokens that render
// empty are skipped. All-off nodes give "".
std::string describe(const HierarchyTree& tree, const HierarchyNode& node,
                     const SettingsState& settings, const FocusList& focus = {});

// describe(), with the placeholder substituted for an empty description.
Announcement announce(const HierarchyTree& tree, const HierarchyNode& node,
                      const SettingsState& settings, const FocusList& focus = {});

// Depth-first dump, one line per node, two spaces of indent per depth, LF endings.
std::string render_tree(const HierarchyTree& tree, const SettingsState& settings);

}  // namespace chartnav
