#include "lpmkit/process_tree.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

namespace {

const std::string kSeqGlyph = "→";   // →
const std::string kAltGlyph = "×";   // ×
const std::string kParGlyph = "∧";   // ∧
const std::string kLoopGlyph = "↻";  // ↻

const std::string& glyph(TreeOp op) {
  switch (op) {
    case TreeOp::seq: return kSeqGlyph;
    case TreeOp::alt: return kAltGlyph;
    case TreeOp::par: return kParGlyph;
    case TreeOp::loop: return kLoopGlyph;
    default: throw ArgumentError("leaf nodes have no operator glyph");
  }
}

void check_arity(TreeOp op, std::size_t n) {
  if (op == TreeOp::loop) {
    if (n != 1) throw ArgumentError("loop operator takes exactly 1 child, got " + std::to_string(n));
  } else if (op != TreeOp::leaf) {
    if (n < 2) throw ArgumentError("operator takes at least 2 children, got " + std::to_string(n));
  }
}

class TreeParser {
 public:
  TreeParser(const std::string& text, const std::string& source)
      : text_(text), source_(source) {}

  ProcessTree parse() {
    ProcessTree tree = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return tree;
  }

 private:
  ProcessTree parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    for (TreeOp op : {TreeOp::seq, TreeOp::alt, TreeOp::par, TreeOp::loop}) {
      const std::string& g = glyph(op);
      if (text_.compare(pos_, g.size(), g) == 0) {
        pos_ += g.size();
        return parse_operator(op);
      }
    }
    return tree_leaf(parse_label());
  }

  ProcessTree parse_operator(TreeOp op) {
    skip_space();
    expect('(');
    std::vector<ProcessTree> children;
    children.push_back(parse_node());
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      children.push_back(parse_node());
      skip_space();
    }
    expect(')');
    check_arity(op, children.size());
    ProcessTree node;
    node.op = op;
    node.children = std::move(children);
    return node;
  }

  Activity parse_label() {
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != ',' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == begin) fail("expected activity label");
    return text_.substr(begin, pos_ - begin);
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(source_, 1, message + " at offset " + std::to_string(pos_) + " in '" +
                                     text_ + "'");
  }

  const std::string& text_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

}  // namespace

ProcessTree tree_leaf(Activity activity) {
  if (activity.empty()) throw ArgumentError("leaf activity label must be non-empty");
  ProcessTree tree;
  tree.op = TreeOp::leaf;
  tree.activity = std::move(activity);
  return tree;
}

ProcessTree tree_node(TreeOp op, std::vector<ProcessTree> children) {
  if (op == TreeOp::leaf) throw ArgumentError("leaf nodes carry an activity, not children");
  check_arity(op, children.size());
  ProcessTree tree;
  tree.op = op;
  tree.children = std::move(children);
  return tree;
}

std::string to_text(const ProcessTree& tree) {
  if (tree.op == TreeOp::leaf) return tree.activity;
  std::string out = glyph(tree.op);
  out += '(';
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    if (i > 0) out += ',';
    out += to_text(tree.children[i]);
  }
  out += ')';
  return out;
}

ProcessTree parse_tree(const std::string& text, const std::string& source) {
  return TreeParser(text, source).parse();
}

ProcessTree normalize(const ProcessTree& tree) {
  if (tree.op == TreeOp::leaf) return tree;
  std::vector<ProcessTree> children;
  children.reserve(tree.children.size());
  for (const ProcessTree& child : tree.children) {
    ProcessTree normalized = normalize(child);
    if (tree.op == TreeOp::seq && normalized.op == TreeOp::seq) {
      for (ProcessTree& grandchild : normalized.children) {
        children.push_back(std::move(grandchild));
      }
    } else {
      children.push_back(std::move(normalized));
    }
  }
  if (tree.op == TreeOp::alt || tree.op == TreeOp::par) {
    std::stable_sort(children.begin(), children.end(),
                     [](const ProcessTree& a, const ProcessTree& b) {
                       return to_text(a) < to_text(b);
                     });
  }
  ProcessTree out;
  out.op = tree.op;
  out.children = std::move(children);
  return out;
}

namespace {

void collect_activities(const ProcessTree& tree, std::set<Activity>& out) {
  if (tree.op == TreeOp::leaf) {
    out.insert(tree.activity);
    return;
  }
  for (const ProcessTree& child : tree.children) collect_activities(child, out);
}

}  // namespace

std::vector<Activity> tree_activities(const ProcessTree& tree) {
  std::set<Activity> set;
  collect_activities(tree, set);
  return {set.begin(), set.end()};
}

std::size_t tree_leaf_count(const ProcessTree& tree) {
  if (tree.op == TreeOp::leaf) return 1;
  std::size_t n = 0;
  for (const ProcessTree& child : tree.children) n += tree_leaf_count(child);
  return n;
}

}  // namespace lpmkit
