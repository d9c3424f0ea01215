#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lpmkit/lpm_mine.hpp"
#include "lpmkit/metrics.hpp"
#include "lpmkit/spm.hpp"

namespace lpmkit {

/// An ordered set of local process models with a cached global merge.
class LpmSet {
 public:
  LpmSet() = default;
  explicit LpmSet(std::vector<Lpm> lpms) : lpms_(std::move(lpms)) {}

  const std::vector<Lpm>& lpms() const { return lpms_; }
  std::size_t size() const { return lpms_.size(); }
  bool empty() const { return lpms_.empty(); }

  /// Member nets, in order.
  std::vector<AcceptingPetriNet> nets() const;

  /// The merged global model. Throws ArgumentError on an empty set.
  const AcceptingPetriNet& global() const;

  LpmSetReport evaluate_against(const SequenceDatabase& db,
                                std::size_t state_budget = kDefaultStateBudget,
                                Mode mode = Mode::multi_threaded) const;

 private:
  std::vector<Lpm> lpms_;
  mutable std::optional<AcceptingPetriNet> global_;
};

/// A process-discovery strategy mapping a multiset of traces to an accepting
/// net with single-place initial and final markings.
using Discoverer = std::function<AcceptingPetriNet(const std::vector<Sequence>&)>;

/// Keeps, in original order, exactly the models with at least one completed
/// occurrence in one segmentation pass of the full set.
LpmSet alignment_based_selection(const SequenceDatabase& db, const LpmSet& set,
                                 std::size_t state_budget = kDefaultStateBudget,
                                 Mode mode = Mode::multi_threaded);

/// Repeatedly picks the candidate explaining the most events of the residual
/// database (ties: earlier position), then removes those events; stops when
/// no candidate explains anything. Output in pick order.
LpmSet greedy_selection(const SequenceDatabase& db, const LpmSet& set,
                        std::size_t state_budget = kDefaultStateBudget,
                        Mode mode = Mode::multi_threaded);

/// Repeatedly picks the candidate whose addition maximizes the F-score of
/// the selected set, while it strictly improves on the best F-score so far
/// (ties: earlier position). Output in pick order.
LpmSet greedy_fscore_selection(const SequenceDatabase& db, const LpmSet& set,
                               std::size_t state_budget = kDefaultStateBudget,
                               Mode mode = Mode::multi_threaded);

/// Selects the first model of the ranking, then every later model whose
/// minimum Jaccard distance (on activity alphabets) to all selected models
/// strictly exceeds `threshold`. Throws ArgumentError unless threshold is
/// in [0,1].
LpmSet heuristic_diversity_selection(const LpmSet& set, double threshold);

/// Replaces each model by the net the discoverer produces from the model's
/// own explained segments; models without segments are dropped. Discoverer
/// failures are reported with the offending model index.
LpmSet remine(const SequenceDatabase& db, const LpmSet& set, const Discoverer& pd,
              std::size_t state_budget = kDefaultStateBudget,
              Mode mode = Mode::multi_threaded);

/// Builds an LPM set from mined sequential patterns: patterns are scanned in
/// ranked order, skipped when their instance events add nothing new, and
/// otherwise clustered by single-linkage Jaccard distance between
/// instance-event sets (joining below `min_dist`); each cluster's pattern
/// sequences are handed to the discoverer to form one model. Throws
/// ArgumentError unless min_dist is in [0,1].
LpmSet merge_clogsgrow(const SequenceDatabase& db,
                       const std::vector<SequentialPattern>& patterns, double min_dist,
                       const Discoverer& pd);

/// Built-in discoverer. Up to 32 distinct trace variants: a prefix-tree net
/// accepting exactly the observed variants. Beyond that: a directly-follows
/// net accepting a superset of the traces. Throws ArgumentError on empty
/// input.
AcceptingPetriNet discover_simple(const std::vector<Sequence>& traces);

}  // namespace lpmkit
