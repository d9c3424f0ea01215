#pragma once

#include <string>
#include <vector>

#include "lpmkit/seqdb.hpp"

namespace lpmkit {

enum class TreeOp { leaf, seq, alt, par, loop };

// Block-structured process model: leaves carry an activity; seq/alt/par
// ("→", "×", "∧") take two or more children; loop ("↻") takes exactly one.
struct ProcessTree {
  TreeOp op = TreeOp::leaf;
  Activity activity;                   // leaf only
  std::vector<ProcessTree> children;   // operator nodes only

  bool operator==(const ProcessTree&) const = default;
};

ProcessTree tree_leaf(Activity activity);

// Validates arity; throws ArgumentError on violation.
ProcessTree tree_node(TreeOp op, std::vector<ProcessTree> children);

// Canonical text rendering, e.g. →(A,∧(B,→(C,D))).
std::string to_text(const ProcessTree& tree);

// Parses the canonical text form; throws ParseError on malformed input.
ProcessTree parse_tree(const std::string& text, const std::string& source = "<tree>");

// Language-preserving normal form used for duplicate removal: children of
// × and ∧ sorted by canonical text; directly nested seq nodes flattened.
ProcessTree normalize(const ProcessTree& tree);

// Sorted set of distinct leaf activities.
std::vector<Activity> tree_activities(const ProcessTree& tree);

std::size_t tree_leaf_count(const ProcessTree& tree);

}  // namespace lpmkit
