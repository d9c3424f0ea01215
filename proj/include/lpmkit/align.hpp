#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "lpmkit/parallel.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/seqdb.hpp"

namespace lpmkit {

/// Default cap on the number of search states an alignment may expand.
inline constexpr std::size_t kDefaultStateBudget = 1000000;

enum class MoveKind { sync, log, silent_model };

/// One step of an alignment. `transition` indexes the aligned net's
/// transitions (sync and silent_model moves); `log_position` is the 1-based
/// position of the consumed event in the aligned sequence (sync and log
/// moves). Unused fields hold -1 / 0.
struct Move {
  MoveKind kind;
  int transition = -1;
  int log_position = 0;
};

struct Alignment {
  std::vector<Move> moves;
  int cost = 0;  ///< number of log moves
};

/// Minimum-cost alignment of `seq` against `apn` where log moves cost 1 and
/// sync / silent-model moves cost 0; model moves on labeled transitions are
/// not allowed. Deterministic: ties are broken by a fixed successor order
/// (sync, then silent, then log; transitions in index order).
///
/// Throws InfeasibleError if no alignment reaches the final marking and
/// ResourceError if more than `state_budget` states are expanded.
Alignment align(const Sequence& seq, const AcceptingPetriNet& apn,
                std::size_t state_budget = kDefaultStateBudget);

enum class SegmentKind { gamma, lambda };

/// A maximal run of explained events belonging to one model occurrence
/// (gamma) or of unexplained events (lambda). Events carry their positions in
/// the original, unprojected database sequence.
struct Segment {
  SegmentKind kind;
  int lpm_index = -1;  ///< owning model for gamma segments; -1 for lambda
  std::vector<EventRef> events;
};

struct Segmentation {
  /// Segments per database sequence, ordered by first event position.
  std::vector<std::vector<Segment>> sequences;
  /// Number of models the segmentation was computed against.
  int lpm_count = 0;
};

/// Segments every database sequence against a single model: each sequence is
/// projected onto the model's visible labels, aligned against the global
/// wrapper of the model, and cut into gamma segments (one per completed model
/// occurrence) and lambda segments (maximal runs of unexplained projected
/// events). Events outside the model's alphabet appear in no segment.
Segmentation segment_lpm(const SequenceDatabase& db, const AcceptingPetriNet& lpm,
                         std::size_t state_budget = kDefaultStateBudget,
                         Mode mode = Mode::multi_threaded);

/// Segments every full (unprojected) database sequence against the global
/// merge of `lpms`. Gamma segments are attributed to the model whose
/// transitions fired in the corresponding pass.
Segmentation segment_set(const SequenceDatabase& db,
                         const std::vector<AcceptingPetriNet>& lpms,
                         std::size_t state_budget = kDefaultStateBudget,
                         Mode mode = Mode::multi_threaded);

/// All events covered by gamma segments.
std::set<EventRef> explained_events(const Segmentation& seg);

/// Events covered by gamma segments owned by model `j`.
/// Throws ArgumentError if `j` is out of range.
std::set<EventRef> explained_events_of(const Segmentation& seg, int j);

}  // namespace lpmkit
