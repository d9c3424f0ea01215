#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "lpmkit/align.hpp"
#include "lpmkit/parallel.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/process_tree.hpp"
#include "lpmkit/seqdb.hpp"

namespace lpmkit {

/// A local process model: a small behavioral pattern with its compiled net
/// and the statistics of its occurrences in the mining database. Models
/// produced by rediscovery from segments carry no tree.
struct Lpm {
  std::optional<ProcessTree> tree;
  AcceptingPetriNet net;
  std::vector<Activity> activities;  ///< sorted, distinct
  long long support = 0;             ///< explained events in the mining database
  long long instance_count = 0;      ///< completed occurrences (gamma segments)
  double confidence = 0.0;           ///< min over activities of explained/total ratio
};

struct MineConfig {
  int min_sup = 3;
  int exp_max = 4;  ///< maximum number of leaf expansions
  std::set<TreeOp> operators = {TreeOp::seq, TreeOp::alt, TreeOp::par, TreeOp::loop};
  std::size_t max_candidates_evaluated = 250000;
  std::size_t state_budget = kDefaultStateBudget;
  Mode mode = Mode::multi_threaded;
};

struct MineResult {
  std::vector<Lpm> lpms;
  bool truncated = false;  ///< candidate budget was exhausted
  std::size_t candidates_evaluated = 0;
};

/// Builds one Lpm from a tree, evaluating support, instance count, and
/// confidence against the database.
Lpm evaluate_tree(const SequenceDatabase& db, const ProcessTree& tree,
                  std::size_t state_budget = kDefaultStateBudget,
                  Mode mode = Mode::multi_threaded);

/// One single-leaf model per alphabet activity, evaluated against `db`.
std::vector<Lpm> initial_lpms(const SequenceDatabase& db,
                              std::size_t state_budget = kDefaultStateBudget,
                              Mode mode = Mode::multi_threaded);

/// All distinct one-step expansions of `tree`: every leaf a is replaced, for
/// each enabled operator and each alphabet activity b, by seq(a,b) / seq(b,a),
/// alt(a,b), par(a,b), or loop(seq(a,b)) / loop(seq(b,a)). Results are
/// normalized and deduplicated.
std::vector<ProcessTree> expand(const ProcessTree& tree,
                                const std::vector<Activity>& alphabet,
                                const std::set<TreeOp>& operators);

/// Breadth-first mining: starting from single-activity models, candidates
/// with support >= min_sup are retained and expanded, up to exp_max
/// expansions or until the evaluation budget is exhausted (then `truncated`
/// is set). The result keeps only models with at least two distinct
/// activities, ranked by support descending, then fewer transitions, then
/// canonical tree text.
MineResult mine(const SequenceDatabase& db, const MineConfig& cfg = {});

}  // namespace lpmkit
