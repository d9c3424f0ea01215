#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lpmkit/align.hpp"
#include "lpmkit/parallel.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/seqdb.hpp"

namespace lpmkit {

/// Default cap on reachability-graph nodes for cyclomatic complexity.
inline constexpr std::size_t kDefaultReachabilityBudget = 100000;

/// Fraction of database events explained by the model set: the size of the
/// explained-event union of segment_set over the total event count.
/// Empty model list or empty database yield 0.
double coverage(const SequenceDatabase& db, const std::vector<AcceptingPetriNet>& lpms,
                std::size_t state_budget = kDefaultStateBudget,
                Mode mode = Mode::multi_threaded);

/// Coverage from a precomputed segmentation of `db`.
double coverage(const SequenceDatabase& db, const Segmentation& seg);

/// Escaping-edges precision of the merged global model against the replayed
/// corpus. Every sequence's optimal alignment is replayed; at each marking
/// from which a synchronous move fires (and at each terminal marking) the
/// visit is weighted and the next activity recorded. Per distinct marking,
/// taken = activities observed next anywhere in the corpus, enabled =
/// visible activities reachable through zero or more silent firings.
/// Returns sum(w*|taken|) / sum(w*|enabled|); 1 when the enabled sum is
/// empty or the model list is empty.
double non_redundancy(const SequenceDatabase& db,
                      const std::vector<AcceptingPetriNet>& lpms,
                      std::size_t state_budget = kDefaultStateBudget,
                      Mode mode = Mode::multi_threaded);

/// Harmonic mean of coverage and non-redundancy; 0 when both are 0.
double fscore_value(double coverage, double non_redundancy);

double fscore(const SequenceDatabase& db, const std::vector<AcceptingPetriNet>& lpms,
              std::size_t state_budget = kDefaultStateBudget,
              Mode mode = Mode::multi_threaded);

/// Control-flow complexity from split structure: the sum over places of the
/// number of distinct output-place sets among the transitions consuming from
/// that place.
long long cardoso(const LabeledPetriNet& net);

/// Cyclomatic number |arcs| - |nodes| + 2 of the reachability graph explored
/// from the initial marking (continuing past the final marking). Returns
/// nullopt when the net completes improperly: a deadlocked non-final marking
/// or a marking strictly covering the final marking is reachable.
/// Throws ResourceError when more than `node_budget` markings are reached.
std::optional<long long> cyclomatic(const AcceptingPetriNet& apn,
                                    std::size_t node_budget = kDefaultReachabilityBudget);

/// Behavioral variability of the database: the exponentiated per-transition
/// entropy of a maximum-likelihood first-order Markov model fitted on the
/// database itself, with artificial start/end symbols around each sequence.
/// Throws ArgumentError on an empty database.
double perplexity(const SequenceDatabase& db);

struct LpmSetReport {
  double coverage = 0.0;
  double non_redundancy = 1.0;
  double fscore = 0.0;
  int pattern_count = 0;
  int transition_count = 0;                ///< transitions summed over member nets
  long long cardoso = 0;                   ///< cardoso summed over member nets
  std::optional<long long> cyclomatic;     ///< summed; absent on improper completion
};

LpmSetReport evaluate(const SequenceDatabase& db,
                      const std::vector<AcceptingPetriNet>& lpms,
                      std::size_t state_budget = kDefaultStateBudget,
                      Mode mode = Mode::multi_threaded);

}  // namespace lpmkit
