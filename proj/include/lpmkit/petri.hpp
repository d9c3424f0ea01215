#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lpmkit/process_tree.hpp"
#include "lpmkit/seqdb.hpp"

namespace lpmkit {

struct Place {
  std::string id;
};

struct Transition {
  std::string id;
  std::string label;     // empty = silent (τ)
  int lpm_index = -1;    // source model index in a merged net, -1 otherwise
  std::vector<int> pre;  // input place indices, sorted
  std::vector<int> post; // output place indices, sorted

  bool silent() const { return label.empty(); }
};

struct LabeledPetriNet {
  std::vector<Place> places;
  std::vector<Transition> transitions;

  // Sorted distinct labels of the labeled (non-silent) transitions.
  std::vector<std::string> visible_labels() const;
  std::size_t arc_count() const;
  std::size_t silent_count() const;
};

// Token count per place index.
using Marking = std::vector<std::int32_t>;

struct AcceptingPetriNet {
  LabeledPetriNet net;
  Marking initial_marking;
  Marking final_marking;
};

// Index of the only place holding exactly one token, or -1 if the marking is
// not of that shape.
int single_marked_place(const Marking& m);

// Indices of transitions whose input places all hold at least one token.
std::vector<int> enabled(const AcceptingPetriNet& apn, const Marking& m);

// Fires transition t; throws StateError if t is not enabled in m.
Marking fire(const AcceptingPetriNet& apn, const Marking& m, int t);

// Compiles a process tree into an accepting net with single-place initial and
// final markings whose language equals the tree language (loops accept zero
// or more executions of their child). Redundant silent split transitions are
// reduced away where that preserves the language.
AcceptingPetriNet tree_to_net(const ProcessTree& tree);

// All visible-label traces of length <= max_len from the initial to the final
// marking. Throws ResourceError when the exploration exceeds node_budget.
std::set<Sequence> language(const AcceptingPetriNet& apn, std::size_t max_len,
                            std::size_t node_budget = 1000000);

// Fuses the nets' initial places into one shared place mi and their final
// places into one shared place mf, then adds a silent back-loop transition
// t_bl from mf to mi. Initial and final marking of the result are both {mi},
// so the merged model accepts any concatenation of member traces, including
// the empty one. Transitions remember their source net via lpm_index.
AcceptingPetriNet merge_global(const std::vector<AcceptingPetriNet>& lpms);

// Index of the silent back-loop transition of a merged model, -1 if absent.
int find_back_loop(const AcceptingPetriNet& merged);

// Graphviz rendering: places as circles (token dot on initially marked
// places, hatching on final-marking places), transitions as boxes, silent
// transitions filled gray.
std::string to_dot(const AcceptingPetriNet& apn);

// PNML rendering: standard place/transition/arc elements, labels in <name>,
// initial marking via <initialMarking>, final marking in a toolspecific
// element.
std::string to_pnml(const AcceptingPetriNet& apn, const std::string& net_id = "net0");

}  // namespace lpmkit
