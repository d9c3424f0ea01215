#include "lpmkit/align.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

namespace {

struct SearchNode {
  int pos;          // events consumed so far (0-based count)
  Marking marking;
  int parent;       // arena index, -1 for the root
  MoveKind kind;    // move that produced this node (unset for the root)
  int transition;   // transition fired, -1 for log moves / root
  int g;            // log moves so far
};

struct QueueEntry {
  int f;
  std::uint64_t order;
  int node;
  bool operator>(const QueueEntry& other) const {
    return std::tie(f, order) > std::tie(other.f, other.order);
  }
};

bool transition_enabled(const Transition& t, const Marking& m) {
  for (int p : t.pre) {
    if (m[static_cast<std::size_t>(p)] <= 0) return false;
  }
  return true;
}

Marking fire_marking(const Transition& t, const Marking& m) {
  Marking out = m;
  for (int p : t.pre) --out[static_cast<std::size_t>(p)];
  for (int p : t.post) ++out[static_cast<std::size_t>(p)];
  return out;
}

}  // namespace

Alignment align(const Sequence& seq, const AcceptingPetriNet& apn,
                std::size_t state_budget) {
  const int n = static_cast<int>(seq.size());
  const auto& transitions = apn.net.transitions;

  std::set<std::string> net_labels;
  for (const Transition& t : transitions) {
    if (!t.silent()) net_labels.insert(t.label);
  }
  // Admissible heuristic: events whose activity labels no transition can
  // never synchronize and must each incur one log move.
  std::vector<int> unsync_suffix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    unsync_suffix[static_cast<std::size_t>(i)] =
        unsync_suffix[static_cast<std::size_t>(i) + 1] +
        (net_labels.count(seq[static_cast<std::size_t>(i)]) ? 0 : 1);
  }

  std::vector<SearchNode> arena;
  arena.push_back({0, apn.initial_marking, -1, MoveKind::log, -1, 0});

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;
  std::uint64_t order = 0;
  queue.push({unsync_suffix[0], order++, 0});

  std::set<std::pair<int, Marking>> closed;
  std::size_t expanded = 0;

  while (!queue.empty()) {
    const QueueEntry entry = queue.top();
    queue.pop();
    const int node_index = entry.node;
    const SearchNode node = arena[static_cast<std::size_t>(node_index)];

    if (!closed.insert({node.pos, node.marking}).second) continue;
    if (++expanded > state_budget) {
      throw ResourceError("alignment search exceeded the state budget of " +
                          std::to_string(state_budget));
    }

    if (node.pos == n && node.marking == apn.final_marking) {
      Alignment result;
      result.cost = node.g;
      for (int i = node_index; arena[static_cast<std::size_t>(i)].parent != -1;
           i = arena[static_cast<std::size_t>(i)].parent) {
        const SearchNode& s = arena[static_cast<std::size_t>(i)];
        Move move;
        move.kind = s.kind;
        move.transition = s.transition;
        move.log_position = (s.kind == MoveKind::silent_model) ? 0 : s.pos;
        result.moves.push_back(move);
      }
      std::reverse(result.moves.begin(), result.moves.end());
      return result;
    }

    auto push_child = [&](int pos, Marking marking, MoveKind kind, int transition, int g) {
      if (closed.count({pos, marking})) return;
      const int f = g + unsync_suffix[static_cast<std::size_t>(pos)];
      arena.push_back({pos, std::move(marking), node_index, kind, transition, g});
      queue.push({f, order++, static_cast<int>(arena.size()) - 1});
    };

    if (node.pos < n) {
      const Activity& next = seq[static_cast<std::size_t>(node.pos)];
      for (std::size_t t = 0; t < transitions.size(); ++t) {
        const Transition& tr = transitions[t];
        if (tr.label != next || !transition_enabled(tr, node.marking)) continue;
        push_child(node.pos + 1, fire_marking(tr, node.marking), MoveKind::sync,
                   static_cast<int>(t), node.g);
      }
    }
    for (std::size_t t = 0; t < transitions.size(); ++t) {
      const Transition& tr = transitions[t];
      if (!tr.silent() || !transition_enabled(tr, node.marking)) continue;
      push_child(node.pos, fire_marking(tr, node.marking), MoveKind::silent_model,
                 static_cast<int>(t), node.g);
    }
    if (node.pos < n) {
      push_child(node.pos + 1, node.marking, MoveKind::log, -1, node.g + 1);
    }
  }

  throw InfeasibleError("no alignment reaches the final marking");
}

namespace {

/// Builds the segment list for one sequence from its alignment against a
/// merged global model. `position_of[i]` maps the 1-based aligned position to
/// the event's position in the original sequence.
std::vector<Segment> build_segments(const Alignment& alignment,
                                    const AcceptingPetriNet& merged, int back_loop,
                                    int seq_index, const std::vector<int>& position_of) {
  std::vector<Segment> out;
  std::vector<EventRef> gamma;
  std::vector<EventRef> lambda;
  int owner = -1;

  auto event_at = [&](int log_position) {
    return EventRef{seq_index, position_of[static_cast<std::size_t>(log_position)]};
  };
  auto flush_lambda = [&] {
    if (!lambda.empty()) {
      out.push_back({SegmentKind::lambda, -1, std::move(lambda)});
      lambda.clear();
    }
  };
  auto flush_gamma = [&] {
    if (!gamma.empty()) {
      out.push_back({SegmentKind::gamma, owner, std::move(gamma)});
      gamma.clear();
    }
  };

  for (const Move& move : alignment.moves) {
    switch (move.kind) {
      case MoveKind::sync:
        flush_lambda();
        owner = merged.net.transitions[static_cast<std::size_t>(move.transition)].lpm_index;
        gamma.push_back(event_at(move.log_position));
        break;
      case MoveKind::silent_model:
        if (move.transition == back_loop) flush_gamma();
        break;
      case MoveKind::log:
        lambda.push_back(event_at(move.log_position));
        break;
    }
  }
  flush_lambda();
  flush_gamma();

  std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
    return a.events.front().position < b.events.front().position;
  });
  return out;
}

}  // namespace

Segmentation segment_lpm(const SequenceDatabase& db, const AcceptingPetriNet& lpm,
                         std::size_t state_budget, Mode mode) {
  const AcceptingPetriNet merged = merge_global({lpm});
  const int back_loop = find_back_loop(merged);
  const std::vector<std::string> labels = merged.net.visible_labels();
  const std::set<Activity> keep(labels.begin(), labels.end());

  Segmentation seg;
  seg.lpm_count = 1;
  seg.sequences.resize(db.size());
  parallel::for_index(db.size(), mode, [&](std::size_t i) {
    const Sequence& original = db.sequence(i);
    Sequence projected;
    std::vector<int> position_of(1, 0);  // 1-based aligned position -> original position
    for (std::size_t k = 0; k < original.size(); ++k) {
      if (keep.count(original[k])) {
        projected.push_back(original[k]);
        position_of.push_back(static_cast<int>(k) + 1);
      }
    }
    const Alignment alignment = align(projected, merged, state_budget);
    seg.sequences[i] = build_segments(alignment, merged, back_loop,
                                      static_cast<int>(i), position_of);
  });
  return seg;
}

Segmentation segment_set(const SequenceDatabase& db,
                         const std::vector<AcceptingPetriNet>& lpms,
                         std::size_t state_budget, Mode mode) {
  const AcceptingPetriNet merged = merge_global(lpms);
  const int back_loop = find_back_loop(merged);

  Segmentation seg;
  seg.lpm_count = static_cast<int>(lpms.size());
  seg.sequences.resize(db.size());
  parallel::for_index(db.size(), mode, [&](std::size_t i) {
    const Sequence& original = db.sequence(i);
    std::vector<int> position_of(original.size() + 1);
    for (std::size_t k = 0; k <= original.size(); ++k) {
      position_of[k] = static_cast<int>(k);
    }
    const Alignment alignment = align(original, merged, state_budget);
    seg.sequences[i] = build_segments(alignment, merged, back_loop,
                                      static_cast<int>(i), position_of);
  });
  return seg;
}

std::set<EventRef> explained_events(const Segmentation& seg) {
  std::set<EventRef> out;
  for (const auto& segments : seg.sequences) {
    for (const Segment& segment : segments) {
      if (segment.kind != SegmentKind::gamma) continue;
      out.insert(segment.events.begin(), segment.events.end());
    }
  }
  return out;
}

std::set<EventRef> explained_events_of(const Segmentation& seg, int j) {
  if (j < 0 || j >= seg.lpm_count) {
    throw ArgumentError("model index " + std::to_string(j) + " is out of range");
  }
  std::set<EventRef> out;
  for (const auto& segments : seg.sequences) {
    for (const Segment& segment : segments) {
      if (segment.kind != SegmentKind::gamma || segment.lpm_index != j) continue;
      out.insert(segment.events.begin(), segment.events.end());
    }
  }
  return out;
}

}  // namespace lpmkit
