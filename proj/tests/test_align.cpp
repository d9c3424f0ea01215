#include <random>
#include <set>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "lpmkit/align.hpp"
#include "lpmkit/errors.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/process_tree.hpp"
#include "support/fixtures.hpp"

using namespace lpmkit;

namespace {

/// Replays an alignment move by move and checks that it is well formed:
/// sync moves consume the next event through an equally-labeled enabled
/// transition, silent moves fire enabled silent transitions, log moves skip
/// one event, and the run ends in the final marking with the full sequence
/// consumed and cost equal to the number of log moves.
void check_alignment(const Sequence& seq, const AcceptingPetriNet& apn,
                     const Alignment& alignment) {
  Marking marking = apn.initial_marking;
  std::size_t pos = 0;
  int log_moves = 0;
  for (const Move& move : alignment.moves) {
    switch (move.kind) {
      case MoveKind::sync: {
        const Transition& t =
            apn.net.transitions.at(static_cast<std::size_t>(move.transition));
        REQUIRE(pos < seq.size());
        REQUIRE(t.label == seq[pos]);
        REQUIRE(move.log_position == static_cast<int>(pos) + 1);
        marking = fire(apn, marking, move.transition);
        ++pos;
        break;
      }
      case MoveKind::silent_model: {
        const Transition& t =
            apn.net.transitions.at(static_cast<std::size_t>(move.transition));
        REQUIRE(t.silent());
        marking = fire(apn, marking, move.transition);
        break;
      }
      case MoveKind::log:
        REQUIRE(pos < seq.size());
        REQUIRE(move.log_position == static_cast<int>(pos) + 1);
        ++pos;
        ++log_moves;
        break;
    }
  }
  REQUIRE(pos == seq.size());
  REQUIRE(marking == apn.final_marking);
  REQUIRE(log_moves == alignment.cost);
}

}  // namespace

TEST_CASE("perfectly fitting sequences align at cost zero") {
  const AcceptingPetriNet merged = merge_global({tree_to_net(fixtures::tree_a())});
  const Sequence seq{"A", "C", "D", "B"};
  const Alignment alignment = align(seq, merged);
  REQUIRE(alignment.cost == 0);
  int syncs = 0;
  for (const Move& move : alignment.moves) {
    if (move.kind == MoveKind::sync) ++syncs;
    REQUIRE(move.kind != MoveKind::log);
  }
  REQUIRE(syncs == 4);
  check_alignment(seq, merged, alignment);
}

TEST_CASE("unmatched events become log moves") {
  const AcceptingPetriNet merged = merge_global({tree_to_net(fixtures::tree_b())});
  const Sequence seq{"E", "B", "B", "A", "F"};
  const Alignment alignment = align(seq, merged);
  REQUIRE(alignment.cost == 1);
  check_alignment(seq, merged, alignment);
}

TEST_CASE("the empty sequence aligns iff the final marking is silently reachable") {
  const AcceptingPetriNet merged = merge_global({tree_to_net(fixtures::tree_a())});
  const Alignment alignment = align(Sequence{}, merged);
  REQUIRE(alignment.cost == 0);
  REQUIRE(alignment.moves.empty());

  REQUIRE_THROWS_AS(align(Sequence{}, tree_to_net(parse_tree("A"))), InfeasibleError);
}

TEST_CASE("alignment search reports infeasibility and budget exhaustion") {
  AcceptingPetriNet dead;
  dead.net.places = {Place{"p0"}, Place{"p1"}};
  Transition loop_back;
  loop_back.id = "t0";
  loop_back.label = "a";
  loop_back.pre = {0};
  loop_back.post = {0};
  dead.net.transitions = {loop_back};
  dead.initial_marking = {1, 0};
  dead.final_marking = {0, 1};
  REQUIRE_THROWS_AS(align(Sequence{"a"}, dead), InfeasibleError);

  const AcceptingPetriNet merged = merge_global({tree_to_net(fixtures::tree_b())});
  REQUIRE_THROWS_AS(align(Sequence{"E", "B", "A", "F"}, merged, 1), ResourceError);
}

TEST_CASE("alignments are deterministic") {
  const AcceptingPetriNet merged = merge_global({tree_to_net(fixtures::tree_b()),
                                                 tree_to_net(fixtures::tree_c())});
  const Sequence seq{"E", "B", "D", "A", "F", "D", "B", "E"};
  const Alignment first = align(seq, merged);
  const Alignment second = align(seq, merged);
  REQUIRE(first.cost == second.cost);
  REQUIRE(first.moves.size() == second.moves.size());
  for (std::size_t i = 0; i < first.moves.size(); ++i) {
    REQUIRE(first.moves[i].kind == second.moves[i].kind);
    REQUIRE(first.moves[i].transition == second.moves[i].transition);
    REQUIRE(first.moves[i].log_position == second.moves[i].log_position);
  }
}

TEST_CASE("alignment cost matches a brute-force search on random inputs") {
  std::mt19937 rng(411);
  const std::vector<Activity> alphabet{"a", "b", "c"};
  const std::vector<Activity> log_alphabet{"a", "b", "c", "d"};
  for (int round = 0; round < 40; ++round) {
    const ProcessTree tree = fixtures::random_tree(rng, alphabet, 1 + round % 4);
    const AcceptingPetriNet merged = merge_global({tree_to_net(tree)});
    const Sequence seq = fixtures::random_sequence(rng, log_alphabet, 6);
    CAPTURE(to_text(tree), seq);
    const Alignment alignment = align(seq, merged);
    REQUIRE(alignment.cost == fixtures::brute_align_cost(seq, merged));
    check_alignment(seq, merged, alignment);
  }
}

TEST_CASE("segmenting one model yields one gamma segment per occurrence") {
  const SequenceDatabase db = parse_lines("E B A F\nE F\nX E F\n");
  const Segmentation seg = segment_lpm(db, tree_to_net(fixtures::tree_b()));
  REQUIRE(seg.lpm_count == 1);
  REQUIRE(seg.sequences.size() == 3);

  REQUIRE(seg.sequences[0].size() == 1);
  REQUIRE(seg.sequences[0][0].kind == SegmentKind::gamma);
  REQUIRE(seg.sequences[0][0].lpm_index == 0);
  REQUIRE(seg.sequences[0][0].events ==
          std::vector<EventRef>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});

  REQUIRE(seg.sequences[1].size() == 1);
  REQUIRE(seg.sequences[1][0].events == std::vector<EventRef>{{1, 1}, {1, 2}});

  // "X" is outside the model alphabet: it is projected away and appears in no
  // segment; the surviving events keep their original positions.
  REQUIRE(seg.sequences[2].size() == 1);
  REQUIRE(seg.sequences[2][0].kind == SegmentKind::gamma);
  REQUIRE(seg.sequences[2][0].events == std::vector<EventRef>{{2, 2}, {2, 3}});

  REQUIRE(explained_events(seg).size() == 8);
}

TEST_CASE("events that fit no occurrence form lambda segments") {
  const SequenceDatabase db = parse_lines("E B Q B A Q F\n");
  const Segmentation seg = segment_lpm(db, tree_to_net(fixtures::tree_b()));
  const std::vector<Segment>& segments = seg.sequences[0];

  // Projection removes the two Q events entirely; one of the B events cannot
  // be part of the single occurrence and forms a lambda segment.
  int gamma_events = 0;
  int lambda_events = 0;
  for (const Segment& segment : segments) {
    if (segment.kind == SegmentKind::gamma) {
      REQUIRE(segment.lpm_index == 0);
      gamma_events += static_cast<int>(segment.events.size());
    } else {
      REQUIRE(segment.lpm_index == -1);
      lambda_events += static_cast<int>(segment.events.size());
    }
    for (const EventRef& e : segment.events) {
      REQUIRE(db.label(e) != "Q");
    }
  }
  REQUIRE(gamma_events == 4);
  REQUIRE(lambda_events == 1);
}

TEST_CASE("segmenting a set attributes occurrences to their models") {
  const SequenceDatabase db = parse_lines("A C D B E E B A F\n");
  const std::vector<AcceptingPetriNet> nets{tree_to_net(fixtures::tree_a()),
                                            tree_to_net(fixtures::tree_b()),
                                            tree_to_net(fixtures::tree_c())};
  const Segmentation seg = segment_set(db, nets);
  REQUIRE(seg.lpm_count == 3);
  const std::vector<Segment>& segments = seg.sequences[0];

  std::vector<const Segment*> gammas;
  std::vector<const Segment*> lambdas;
  for (const Segment& segment : segments) {
    (segment.kind == SegmentKind::gamma ? gammas : lambdas).push_back(&segment);
  }
  REQUIRE(gammas.size() == 2);
  REQUIRE(gammas[0]->lpm_index == 0);
  REQUIRE(gammas[0]->events ==
          std::vector<EventRef>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  REQUIRE(gammas[1]->lpm_index == 1);
  REQUIRE(gammas[1]->events.size() == 4);
  REQUIRE(gammas[1]->events.back() == EventRef{0, 9});
  REQUIRE(lambdas.size() == 1);
  REQUIRE(lambdas[0]->events.size() == 1);
  REQUIRE(db.label(lambdas[0]->events[0]) == "E");

  // Segments are ordered by their first event position.
  for (std::size_t i = 1; i < segments.size(); ++i) {
    REQUIRE(segments[i - 1].events.front().position <
            segments[i].events.front().position);
  }
}

TEST_CASE("explained event extraction validates the model index") {
  const SequenceDatabase db = parse_lines("E F\n");
  const Segmentation seg = segment_set(db, {tree_to_net(fixtures::tree_b())});
  REQUIRE(explained_events_of(seg, 0) ==
          std::set<EventRef>{{0, 1}, {0, 2}});
  REQUIRE_THROWS_AS(explained_events_of(seg, 1), ArgumentError);
  REQUIRE_THROWS_AS(explained_events_of(seg, -1), ArgumentError);
}

TEST_CASE("serial and multi-threaded segmentation agree") {
  const SequenceDatabase db = fixtures::fixture_db();
  const std::vector<AcceptingPetriNet> nets{tree_to_net(fixtures::tree_a()),
                                            tree_to_net(fixtures::tree_b())};
  const Segmentation serial = segment_set(db, nets, kDefaultStateBudget, Mode::serial);
  const Segmentation parallel =
      segment_set(db, nets, kDefaultStateBudget, Mode::multi_threaded);
  REQUIRE(explained_events(serial) == explained_events(parallel));
  REQUIRE(serial.sequences.size() == parallel.sequences.size());
  for (std::size_t i = 0; i < serial.sequences.size(); ++i) {
    REQUIRE(serial.sequences[i].size() == parallel.sequences[i].size());
  }
}
