#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chartnav/hierarchy.hpp"

namespace chartnav {

enum class TokenKind {
  kParentName,
  kDepth,
  kContextQuantile,
  kNodeName,
  kIndex,
  kDataValues,
  kObjectType,
  kChildNames,
  kChildSize,
  kAggregate,
};

// Location and surroundings are the two wayfinding affordances.
enum class Affordance { kLocation, kSurroundings, kConsuming };
enum class Direction { kUpwards, kInPlace, kDownwards };
enum class Brevity { kShort, kLong };

struct TokenInfo {
  TokenKind kind;
  std::string_view name;   // canonical, e.g. "child_size"
  std::string_view alias;  // command-box word, e.g. "size"
  Affordance affordance;
  Direction direction;
};

// All ten kinds in the default narration order.
std::span<const TokenInfo> token_catalog();
const TokenInfo& token_info(TokenKind kind);
std::string_view to_string(TokenKind kind);
std::string_view to_string(Brevity brevity);
std::string_view to_string(Affordance affordance);
std::string_view to_string(Direction direction);
// Accepts the canonical name or the alias.
std::optional<TokenKind> parse_token_kind(std::string_view name);

// Kinds valid at a level, in default order. The root has nothing above it and
// datapoints nothing below, so they drop the upward and downward kinds.
std::vector<TokenKind> available_tokens(Level level);
bool is_available(TokenKind kind, Level level);

struct TokenInstance {
  TokenKind kind;
  Brevity brevity;
  std::string text;
};

// Text of one token for a node. Empty when the token has nothing to say for
// this node (an empty selection, a nominal measure, no children).
std::string render_token(TokenKind kind, Brevity brevity, const HierarchyTree& tree,
                         const HierarchyNode& node);

struct AggregateValues {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
};

std::optional<AggregateValues> aggregate(std::span<const std::size_t> rows, std::size_t field,
                                         const Dataset& data);
std::optional<AggregateValues> aggregate(const Selection& selection, std::size_t field,
                                         const Dataset& data);

// Field summarised by aggregate and context tokens: y when numeric, else x
// when numeric, else none.
std::optional<std::size_t> measure_field(const ValidatedChart& chart);

// Linear-interpolation quantile of sorted values, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// 1..4: the quartile of the parent's measure values holding the node's mean.
// Upper bounds are inclusive: a mean equal to the parent median is quartile 2.
std::optional<int> context_quartile(const HierarchyTree& tree, const HierarchyNode& node);

}  // namespace chartnav
