#include "lpmkit/lpm_mine.hpp"

#include <algorithm>
#include <map>

#include "lpmkit/errors.hpp"

namespace lpmkit {

Lpm evaluate_tree(const SequenceDatabase& db, const ProcessTree& tree,
                  std::size_t state_budget, Mode mode) {
  Lpm lpm;
  lpm.tree = tree;
  lpm.net = tree_to_net(tree);
  lpm.activities = tree_activities(tree);

  const Segmentation seg = segment_lpm(db, lpm.net, state_budget, mode);
  std::map<Activity, long long> explained_per_activity;
  for (const auto& segments : seg.sequences) {
    for (const Segment& segment : segments) {
      if (segment.kind != SegmentKind::gamma) continue;
      ++lpm.instance_count;
      lpm.support += static_cast<long long>(segment.events.size());
      for (const EventRef& event : segment.events) {
        ++explained_per_activity[db.label(event)];
      }
    }
  }

  std::map<Activity, long long> totals;
  for (const Sequence& seq : db.sequences()) {
    for (const Activity& a : seq) ++totals[a];
  }
  lpm.confidence = 1.0;
  for (const Activity& a : lpm.activities) {
    const long long total = totals.count(a) ? totals[a] : 0;
    const double ratio =
        total == 0 ? 0.0
                   : static_cast<double>(explained_per_activity[a]) /
                         static_cast<double>(total);
    lpm.confidence = std::min(lpm.confidence, ratio);
  }
  return lpm;
}

std::vector<Lpm> initial_lpms(const SequenceDatabase& db, std::size_t state_budget,
                              Mode mode) {
  std::vector<Lpm> out;
  for (const Activity& a : db.alphabet()) {
    out.push_back(evaluate_tree(db, tree_leaf(a), state_budget, mode));
  }
  return out;
}

namespace {

std::vector<ProcessTree> leaf_replacements(const Activity& a,
                                           const std::vector<Activity>& alphabet,
                                           const std::set<TreeOp>& operators) {
  std::vector<ProcessTree> out;
  for (const Activity& b : alphabet) {
    if (operators.count(TreeOp::seq)) {
      out.push_back(tree_node(TreeOp::seq, {tree_leaf(a), tree_leaf(b)}));
      out.push_back(tree_node(TreeOp::seq, {tree_leaf(b), tree_leaf(a)}));
    }
    if (operators.count(TreeOp::alt)) {
      out.push_back(tree_node(TreeOp::alt, {tree_leaf(a), tree_leaf(b)}));
    }
    if (operators.count(TreeOp::par)) {
      out.push_back(tree_node(TreeOp::par, {tree_leaf(a), tree_leaf(b)}));
    }
    if (operators.count(TreeOp::loop)) {
      out.push_back(tree_node(
          TreeOp::loop, {tree_node(TreeOp::seq, {tree_leaf(a), tree_leaf(b)})}));
      out.push_back(tree_node(
          TreeOp::loop, {tree_node(TreeOp::seq, {tree_leaf(b), tree_leaf(a)})}));
    }
  }
  return out;
}

void collect_expansions(const ProcessTree& tree, const std::vector<Activity>& alphabet,
                        const std::set<TreeOp>& operators,
                        std::vector<ProcessTree>& out) {
  if (tree.op == TreeOp::leaf) {
    auto replacements = leaf_replacements(tree.activity, alphabet, operators);
    out.insert(out.end(), std::make_move_iterator(replacements.begin()),
               std::make_move_iterator(replacements.end()));
    return;
  }
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    std::vector<ProcessTree> child_expansions;
    collect_expansions(tree.children[i], alphabet, operators, child_expansions);
    for (ProcessTree& expanded_child : child_expansions) {
      ProcessTree copy = tree;
      copy.children[i] = std::move(expanded_child);
      out.push_back(std::move(copy));
    }
  }
}

}  // namespace

std::vector<ProcessTree> expand(const ProcessTree& tree,
                                const std::vector<Activity>& alphabet,
                                const std::set<TreeOp>& operators) {
  std::vector<ProcessTree> raw;
  collect_expansions(tree, alphabet, operators, raw);

  std::set<std::string> seen;
  std::vector<ProcessTree> out;
  for (ProcessTree& candidate : raw) {
    ProcessTree normalized = normalize(candidate);
    if (seen.insert(to_text(normalized)).second) out.push_back(std::move(normalized));
  }
  return out;
}

MineResult mine(const SequenceDatabase& db, const MineConfig& cfg) {
  if (cfg.min_sup < 1) throw ArgumentError("min_sup must be positive");
  if (cfg.exp_max < 1) throw ArgumentError("exp_max must be positive");

  const std::vector<Activity> alphabet = db.alphabet();
  MineResult result;

  std::vector<Lpm> frontier;  // retained candidates of the current level
  for (const Activity& a : alphabet) {
    if (result.candidates_evaluated >= cfg.max_candidates_evaluated) {
      result.truncated = true;
      break;
    }
    ++result.candidates_evaluated;
    Lpm lpm = evaluate_tree(db, tree_leaf(a), cfg.state_budget, cfg.mode);
    if (lpm.support >= cfg.min_sup) frontier.push_back(std::move(lpm));
  }

  std::set<std::string> seen;
  std::vector<Lpm> retained;
  for (int level = 1; level <= cfg.exp_max && !frontier.empty() && !result.truncated;
       ++level) {
    // Generate this level's candidates in canonical order. Only the
    // lexicographically-first `remaining` new trees are kept, so memory stays
    // bounded by the evaluation budget even when a level would be huge.
    const std::size_t remaining =
        cfg.max_candidates_evaluated - result.candidates_evaluated;
    std::map<std::string, ProcessTree> level_candidates;
    bool level_overflow = false;
    for (const Lpm& parent : frontier) {
      for (ProcessTree& tree : expand(*parent.tree, alphabet, cfg.operators)) {
        std::string text = to_text(tree);
        if (seen.count(text)) continue;
        if (level_candidates.size() >= remaining) {
          if (level_candidates.empty()) {  // no budget left at all
            level_overflow = true;
            continue;
          }
          const std::string& cutoff = std::prev(level_candidates.end())->first;
          if (text == cutoff) continue;  // duplicate of a kept candidate
          if (text > cutoff) {
            level_overflow = true;
            continue;
          }
        }
        if (level_candidates.emplace(std::move(text), std::move(tree)).second &&
            level_candidates.size() > remaining) {
          level_candidates.erase(std::prev(level_candidates.end()));
          level_overflow = true;
        }
      }
    }
    if (level_overflow) result.truncated = true;

    std::vector<ProcessTree> candidates;
    candidates.reserve(level_candidates.size());
    for (auto& [text, tree] : level_candidates) {
      seen.insert(text);
      candidates.push_back(std::move(tree));
    }
    result.candidates_evaluated += candidates.size();

    std::vector<Lpm> evaluated(candidates.size());
    parallel::for_index(candidates.size(), cfg.mode, [&](std::size_t i) {
      evaluated[i] = evaluate_tree(db, candidates[i], cfg.state_budget, Mode::serial);
    });

    frontier.clear();
    for (Lpm& lpm : evaluated) {
      if (lpm.support < cfg.min_sup) continue;
      retained.push_back(lpm);
      frontier.push_back(std::move(lpm));
    }
  }

  for (Lpm& lpm : retained) {
    if (lpm.activities.size() >= 2) result.lpms.push_back(std::move(lpm));
  }
  std::sort(result.lpms.begin(), result.lpms.end(), [](const Lpm& a, const Lpm& b) {
    if (a.support != b.support) return a.support > b.support;
    const std::size_t ta = a.net.net.transitions.size();
    const std::size_t tb = b.net.net.transitions.size();
    if (ta != tb) return ta < tb;
    return to_text(*a.tree) < to_text(*b.tree);
  });
  return result;
}

}  // namespace lpmkit
