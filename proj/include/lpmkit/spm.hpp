#pragma once

#include <utility>
#include <vector>

#include "lpmkit/parallel.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/seqdb.hpp"

namespace lpmkit {

/// A gapped sequential pattern together with the realized maximum family of
/// non-overlapping instances. Instances within a sequence may share an event
/// only across different pattern positions; at any fixed pattern position all
/// instances use distinct events.
struct SequentialPattern {
  Sequence pattern;
  std::vector<std::vector<EventRef>> instances;
  int support = 0;  ///< total instance count, summed over sequences
};

/// Maximum number of non-overlapping gapped occurrences of `pattern` summed
/// over all database sequences, with witness instances (earliest-match
/// greedy). Throws ArgumentError on an empty pattern.
std::pair<int, std::vector<std::vector<EventRef>>> repetitive_support(
    const SequenceDatabase& db, const Sequence& pattern);

/// All closed patterns with repetitive support >= min_sup, ordered by support
/// descending, then shorter pattern, then lexicographic. A multi-activity
/// pattern is closed when no single-activity insertion at any position keeps
/// its support; single-activity patterns are always kept.
std::vector<SequentialPattern> mine_clogsgrow(const SequenceDatabase& db, int min_sup,
                                              Mode mode = Mode::multi_threaded);

/// Strictly sequential accepting net for the pattern: a transition chain
/// p0 -> [a1] -> p1 -> ... -> [an] -> pn with initial {p0} and final {pn}.
AcceptingPetriNet pattern_to_net(const SequentialPattern& sp);

}  // namespace lpmkit
