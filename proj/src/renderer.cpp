#include "chartnav/renderer.hpp"

#include <vector>

#include "chartnav/tokens.hpp"

namespace chartnav {

std::string_view to_string(AnnouncementSource source) {
  switch (source) {
    case AnnouncementSource::kNavigation: return "navigation";
    case AnnouncementSource::kSpeak: return "speak";
    case AnnouncementSource::kBoundary: return "boundary";
    case AnnouncementSource::kMenu: return "menu";
  }
  return "";
}

std::string describe(const HierarchyTree& tree, const HierarchyNode& node,
                     const SettingsState& settings, const FocusList& focus) {
  std::string out;
  for (const auto& token : effective_tokens(node.level, settings, focus)) {
    const std::string text = render_token(token.kind, token.brevity, tree, node);
    if (text.empty()) continue;
    if (!out.empty()) out += kTokenSeparator;
    out += text;
  }
  return out;
}

Announcement announce(const HierarchyTree& tree, const HierarchyNode& node,
                      const SettingsState& settings, const FocusList& focus) {
  std::string text = describe(tree, node, settings, focus);
  if (text.empty()) text = kNoDescription;
  return {std::move(text), AnnouncementSource::kNavigation};
}

std::string render_tree(const HierarchyTree& tree, const SettingsState& settings) {
  std::string out;
  std::vector<NodeIndex> stack = {tree.root().index};
  while (!stack.empty()) {
    const HierarchyNode& node = tree.node(stack.back());
    stack.pop_back();
    out.append(node.depth * 2, ' ');
    out += announce(tree, node, settings).text;
    out += '\n';
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

}  // namespace chartnav
