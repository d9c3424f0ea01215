#pragma once

// Shared fixtures and independent reference implementations used by the test
// suites: the bundled running-example database, the three standing example
// models, a brute-force alignment-cost oracle, a brute-force non-overlapping
// occurrence counter, and a direct tree-language interpreter.

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lpmkit/petri.hpp"
#include "lpmkit/process_tree.hpp"
#include "lpmkit/seqdb.hpp"

namespace fixtures {

inline const char* kFixtureText =
    "E B A B A F A C B D\n"
    "E B A F E B A B A F\n"
    "A B C D A C D B E F\n"
    "A C D B E E B A F\n";

inline lpmkit::SequenceDatabase fixture_db() {
  return lpmkit::parse_lines(kFixtureText, "fixture");
}

// The three standing example models over the fixture database.
inline lpmkit::ProcessTree tree_a() {
  return lpmkit::parse_tree("→(A,∧(B,→(C,D)))", "fixture");
}
inline lpmkit::ProcessTree tree_b() {
  return lpmkit::parse_tree("→(E,↻(→(B,A)),F)", "fixture");
}
inline lpmkit::ProcessTree tree_c() {
  return lpmkit::parse_tree("→(D,×(A,→(B,E)))", "fixture");
}

// ---------------------------------------------------------------------------
// Independent alignment-cost oracle: 0/1-cost breadth-first search over
// (position, marking) states. Log moves cost 1; synchronous and silent moves
// cost 0 and are closed over inside each cost layer. Returns -1 when no
// alignment reaches the final marking.
inline int brute_align_cost(const lpmkit::Sequence& seq,
                            const lpmkit::AcceptingPetriNet& apn) {
  using State = std::pair<int, lpmkit::Marking>;
  const int n = static_cast<int>(seq.size());

  std::set<State> layer{{0, apn.initial_marking}};
  std::set<State> seen = layer;
  for (int cost = 0; cost <= n; ++cost) {
    // Close the current layer under 0-cost moves (sync and silent).
    std::deque<State> queue(layer.begin(), layer.end());
    while (!queue.empty()) {
      const State state = queue.front();
      queue.pop_front();
      for (int t : lpmkit::enabled(apn, state.second)) {
        const lpmkit::Transition& tr =
            apn.net.transitions[static_cast<std::size_t>(t)];
        State next = state;
        if (tr.silent()) {
          next.second = lpmkit::fire(apn, state.second, t);
        } else if (state.first < n &&
                   tr.label == seq[static_cast<std::size_t>(state.first)]) {
          next.first = state.first + 1;
          next.second = lpmkit::fire(apn, state.second, t);
        } else {
          continue;
        }
        if (seen.insert(next).second) {
          layer.insert(next);
          queue.push_back(next);
        }
      }
    }
    for (const State& state : layer) {
      if (state.first == n && state.second == apn.final_marking) return cost;
    }
    // Spend one log move everywhere possible.
    std::set<State> next_layer;
    for (const State& state : layer) {
      if (state.first < n) {
        State next{state.first + 1, state.second};
        if (seen.insert(next).second) next_layer.insert(next);
      }
    }
    layer = std::move(next_layer);
    if (layer.empty()) break;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Brute-force maximum family of non-overlapping pattern occurrences in one
// sequence: enumerates every instance, then backtracks over families that
// are pairwise disjoint at every pattern position.
namespace detail {
inline void enumerate_instances(const lpmkit::Sequence& seq,
                                const lpmkit::Sequence& pattern, std::size_t from,
                                std::vector<int>& current,
                                std::vector<std::vector<int>>& out) {
  if (current.size() == pattern.size()) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < seq.size(); ++i) {
    if (seq[i] == pattern[current.size()]) {
      current.push_back(static_cast<int>(i));
      enumerate_instances(seq, pattern, i + 1, current, out);
      current.pop_back();
    }
  }
}

inline void best_family(const std::vector<std::vector<int>>& instances,
                        std::size_t index, std::vector<std::set<int>>& used,
                        int chosen, int& best) {
  best = std::max(best, chosen);
  if (index == instances.size()) return;
  if (chosen + static_cast<int>(instances.size() - index) <= best) return;
  const std::vector<int>& instance = instances[index];
  bool usable = true;
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (used[j].count(instance[j])) {
      usable = false;
      break;
    }
  }
  if (usable) {
    for (std::size_t j = 0; j < instance.size(); ++j) used[j].insert(instance[j]);
    best_family(instances, index + 1, used, chosen + 1, best);
    for (std::size_t j = 0; j < instance.size(); ++j) used[j].erase(instance[j]);
  }
  best_family(instances, index + 1, used, chosen, best);
}
}  // namespace detail

inline int brute_max_occurrences(const lpmkit::Sequence& seq,
                                 const lpmkit::Sequence& pattern) {
  std::vector<std::vector<int>> instances;
  std::vector<int> current;
  detail::enumerate_instances(seq, pattern, 0, current, instances);
  std::vector<std::set<int>> used(pattern.size());
  int best = 0;
  detail::best_family(instances, 0, used, 0, best);
  return best;
}

// ---------------------------------------------------------------------------
// Direct interpreter for the trace language of a process tree up to a length
// bound, independent of the net compiler.
inline std::set<lpmkit::Sequence> shuffle_product(const std::set<lpmkit::Sequence>& a,
                                                  const std::set<lpmkit::Sequence>& b,
                                                  std::size_t bound);

inline std::set<lpmkit::Sequence> tree_language(const lpmkit::ProcessTree& tree,
                                                std::size_t bound) {
  using lpmkit::Sequence;
  std::set<Sequence> out;
  switch (tree.op) {
    case lpmkit::TreeOp::leaf:
      if (bound >= 1) out.insert(Sequence{tree.activity});
      return out;
    case lpmkit::TreeOp::seq: {
      out.insert(Sequence{});
      for (const lpmkit::ProcessTree& child : tree.children) {
        const std::set<Sequence> suffixes = tree_language(child, bound);
        std::set<Sequence> next;
        for (const Sequence& prefix : out) {
          for (const Sequence& suffix : suffixes) {
            if (prefix.size() + suffix.size() > bound) continue;
            Sequence joined = prefix;
            joined.insert(joined.end(), suffix.begin(), suffix.end());
            next.insert(std::move(joined));
          }
        }
        out = std::move(next);
      }
      return out;
    }
    case lpmkit::TreeOp::alt:
      for (const lpmkit::ProcessTree& child : tree.children) {
        const std::set<Sequence> lang = tree_language(child, bound);
        out.insert(lang.begin(), lang.end());
      }
      return out;
    case lpmkit::TreeOp::par: {
      out.insert(Sequence{});
      for (const lpmkit::ProcessTree& child : tree.children) {
        out = shuffle_product(out, tree_language(child, bound), bound);
      }
      return out;
    }
    case lpmkit::TreeOp::loop: {
      const std::set<Sequence> body = tree_language(tree.children.front(), bound);
      out.insert(Sequence{});
      bool grew = true;
      while (grew) {
        grew = false;
        std::set<Sequence> next = out;
        for (const Sequence& prefix : out) {
          for (const Sequence& repetition : body) {
            if (prefix.size() + repetition.size() > bound) continue;
            Sequence joined = prefix;
            joined.insert(joined.end(), repetition.begin(), repetition.end());
            if (next.insert(std::move(joined)).second) grew = true;
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return out;
}

inline void interleave(const lpmkit::Sequence& a, std::size_t i,
                       const lpmkit::Sequence& b, std::size_t j,
                       lpmkit::Sequence& current, std::set<lpmkit::Sequence>& out) {
  if (i == a.size() && j == b.size()) {
    out.insert(current);
    return;
  }
  if (i < a.size()) {
    current.push_back(a[i]);
    interleave(a, i + 1, b, j, current, out);
    current.pop_back();
  }
  if (j < b.size()) {
    current.push_back(b[j]);
    interleave(a, i, b, j + 1, current, out);
    current.pop_back();
  }
}

inline std::set<lpmkit::Sequence> shuffle_product(const std::set<lpmkit::Sequence>& a,
                                                  const std::set<lpmkit::Sequence>& b,
                                                  std::size_t bound) {
  std::set<lpmkit::Sequence> out;
  for (const lpmkit::Sequence& x : a) {
    for (const lpmkit::Sequence& y : b) {
      if (x.size() + y.size() > bound) continue;
      lpmkit::Sequence current;
      interleave(x, 0, y, 0, current, out);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random generators with caller-owned engines so every test fixes its seed.

inline lpmkit::Sequence random_sequence(std::mt19937& rng,
                                        const std::vector<lpmkit::Activity>& alphabet,
                                        std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  lpmkit::Sequence out;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) out.push_back(alphabet[pick(rng)]);
  return out;
}

/// Random process tree with exactly `leaves` leaves. Loops are never nested
/// directly inside loops, keeping the shape space finite.
inline lpmkit::ProcessTree random_tree(std::mt19937& rng,
                                       const std::vector<lpmkit::Activity>& alphabet,
                                       int leaves, bool allow_loop = true) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  if (leaves <= 1) {
    lpmkit::ProcessTree leaf = lpmkit::tree_leaf(alphabet[pick(rng)]);
    if (allow_loop && std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
      return lpmkit::tree_node(lpmkit::TreeOp::loop, {std::move(leaf)});
    }
    return leaf;
  }
  std::uniform_int_distribution<int> op_pick(0, 3);
  const int op = op_pick(rng);
  if (allow_loop && op == 3) {
    return lpmkit::tree_node(lpmkit::TreeOp::loop,
                             {random_tree(rng, alphabet, leaves, false)});
  }
  std::uniform_int_distribution<int> split_pick(1, leaves - 1);
  const int left = split_pick(rng);
  const lpmkit::TreeOp kind = op == 0   ? lpmkit::TreeOp::seq
                              : op == 1 ? lpmkit::TreeOp::alt
                                        : lpmkit::TreeOp::par;
  return lpmkit::tree_node(kind, {random_tree(rng, alphabet, left, true),
                                  random_tree(rng, alphabet, leaves - left, true)});
}

/// Every process tree with at most `max_leaves` leaves over `alphabet`,
/// using binary operator nodes and loops that are not directly nested.
inline std::vector<lpmkit::ProcessTree> all_trees(
    const std::vector<lpmkit::Activity>& alphabet, int max_leaves) {
  using lpmkit::ProcessTree;
  std::vector<std::vector<ProcessTree>> by_leaves(
      static_cast<std::size_t>(max_leaves) + 1);
  for (const lpmkit::Activity& a : alphabet) {
    by_leaves[1].push_back(lpmkit::tree_leaf(a));
  }
  for (const lpmkit::Activity& a : alphabet) {
    by_leaves[1].push_back(
        lpmkit::tree_node(lpmkit::TreeOp::loop, {lpmkit::tree_leaf(a)}));
  }
  for (int n = 2; n <= max_leaves; ++n) {
    std::vector<ProcessTree> loop_candidates;
    for (int left = 1; left < n; ++left) {
      for (const ProcessTree& l : by_leaves[static_cast<std::size_t>(left)]) {
        for (const ProcessTree& r : by_leaves[static_cast<std::size_t>(n - left)]) {
          for (lpmkit::TreeOp op :
               {lpmkit::TreeOp::seq, lpmkit::TreeOp::alt, lpmkit::TreeOp::par}) {
            ProcessTree t = lpmkit::tree_node(op, {l, r});
            by_leaves[static_cast<std::size_t>(n)].push_back(t);
            loop_candidates.push_back(std::move(t));
          }
        }
      }
    }
    for (const ProcessTree& t : loop_candidates) {
      by_leaves[static_cast<std::size_t>(n)].push_back(
          lpmkit::tree_node(lpmkit::TreeOp::loop, {t}));
    }
  }
  std::vector<ProcessTree> out;
  for (const auto& bucket : by_leaves) {
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

}  // namespace fixtures
