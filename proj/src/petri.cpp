#include "lpmkit/petri.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

std::vector<std::string> LabeledPetriNet::visible_labels() const {
  std::set<std::string> labels;
  for (const Transition& t : transitions) {
    if (!t.silent()) labels.insert(t.label);
  }
  return {labels.begin(), labels.end()};
}

std::size_t LabeledPetriNet::arc_count() const {
  std::size_t n = 0;
  for (const Transition& t : transitions) n += t.pre.size() + t.post.size();
  return n;
}

std::size_t LabeledPetriNet::silent_count() const {
  std::size_t n = 0;
  for (const Transition& t : transitions) {
    if (t.silent()) ++n;
  }
  return n;
}

int single_marked_place(const Marking& m) {
  int found = -1;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p] == 0) continue;
    if (m[p] != 1 || found != -1) return -1;
    found = static_cast<int>(p);
  }
  return found;
}

namespace {

bool is_enabled(const Transition& t, const Marking& m) {
  for (int p : t.pre) {
    if (m[static_cast<std::size_t>(p)] <= 0) return false;
  }
  return true;
}

}  // namespace

std::vector<int> enabled(const AcceptingPetriNet& apn, const Marking& m) {
  std::vector<int> out;
  for (std::size_t t = 0; t < apn.net.transitions.size(); ++t) {
    if (is_enabled(apn.net.transitions[t], m)) out.push_back(static_cast<int>(t));
  }
  return out;
}

Marking fire(const AcceptingPetriNet& apn, const Marking& m, int t) {
  const Transition& tr = apn.net.transitions.at(static_cast<std::size_t>(t));
  if (!is_enabled(tr, m)) {
    throw StateError("transition '" + tr.id + "' is not enabled");
  }
  Marking out = m;
  for (int p : tr.pre) --out[static_cast<std::size_t>(p)];
  for (int p : tr.post) ++out[static_cast<std::size_t>(p)];
  return out;
}

namespace {

class NetBuilder {
 public:
  int add_place() {
    places_.push_back(Place{"p" + std::to_string(places_.size())});
    return static_cast<int>(places_.size()) - 1;
  }

  void add_transition(std::string label, std::vector<int> pre, std::vector<int> post) {
    Transition t;
    t.id = (label.empty() ? "tau" : "t") + std::to_string(transitions_.size());
    t.label = std::move(label);
    std::sort(pre.begin(), pre.end());
    std::sort(post.begin(), post.end());
    t.pre = std::move(pre);
    t.post = std::move(post);
    transitions_.push_back(std::move(t));
  }

  void compile(const ProcessTree& tree, int pin, int pout) {
    switch (tree.op) {
      case TreeOp::leaf:
        add_transition(tree.activity, {pin}, {pout});
        return;
      case TreeOp::seq: {
        int current = pin;
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
          const bool last = i + 1 == tree.children.size();
          const int next = last ? pout : add_place();
          compile(tree.children[i], current, next);
          current = next;
        }
        return;
      }
      case TreeOp::alt:
        for (const ProcessTree& child : tree.children) compile(child, pin, pout);
        return;
      case TreeOp::par: {
        std::vector<int> entries;
        std::vector<int> exits;
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
          entries.push_back(add_place());
          exits.push_back(add_place());
        }
        add_transition("", {pin}, entries);
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
          compile(tree.children[i], entries[i], exits[i]);
        }
        add_transition("", exits, {pout});
        return;
      }
      case TreeOp::loop: {
        const int body_in = add_place();
        const int body_out = add_place();
        add_transition("", {pin}, {body_in});    // enter
        compile(tree.children.front(), body_in, body_out);
        add_transition("", {body_out}, {body_in});  // repeat
        add_transition("", {body_out}, {pout});     // exit
        add_transition("", {pin}, {pout});          // skip (zero executions)
        return;
      }
    }
    throw ArgumentError("invalid process tree node");
  }

  // Removes silent transitions t with a single input place p when p has t as
  // its only consumer and a single producing transition u: u then produces
  // t's outputs directly. Preserves the language; keeps initial/final places.
  void reduce_silent_splits(int initial, int final_place) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t ti = 0; ti < transitions_.size(); ++ti) {
        Transition& t = transitions_[ti];
        if (!t.label.empty() || t.pre.size() != 1) continue;
        const int p = t.pre.front();
        if (p == initial || p == final_place) continue;
        if (std::find(t.post.begin(), t.post.end(), p) != t.post.end()) continue;
        int producer = -1;
        bool eligible = true;
        for (std::size_t ui = 0; ui < transitions_.size() && eligible; ++ui) {
          const Transition& u = transitions_[ui];
          const bool consumes = std::find(u.pre.begin(), u.pre.end(), p) != u.pre.end();
          const bool produces = std::find(u.post.begin(), u.post.end(), p) != u.post.end();
          if (consumes && ui != ti) eligible = false;
          if (produces) {
            if (producer != -1 || ui == ti) {
              eligible = false;
            } else {
              producer = static_cast<int>(ui);
            }
          }
        }
        if (!eligible || producer == -1) continue;
        Transition& u = transitions_[static_cast<std::size_t>(producer)];
        std::vector<int> merged;
        for (int q : u.post) {
          if (q != p) merged.push_back(q);
        }
        bool overlap = false;
        for (int q : t.post) {
          if (std::find(merged.begin(), merged.end(), q) != merged.end()) overlap = true;
        }
        if (overlap) continue;
        merged.insert(merged.end(), t.post.begin(), t.post.end());
        std::sort(merged.begin(), merged.end());
        u.post = std::move(merged);
        transitions_.erase(transitions_.begin() + static_cast<std::ptrdiff_t>(ti));
        dead_places_.insert(p);
        changed = true;
        break;
      }
    }
  }

  AcceptingPetriNet finish(int initial, int final_place) {
    reduce_silent_splits(initial, final_place);

    std::vector<int> remap(places_.size(), -1);
    LabeledPetriNet net;
    for (std::size_t p = 0; p < places_.size(); ++p) {
      if (dead_places_.count(static_cast<int>(p))) continue;
      remap[p] = static_cast<int>(net.places.size());
      net.places.push_back(places_[p]);
    }
    net.transitions = std::move(transitions_);
    for (Transition& t : net.transitions) {
      for (int& p : t.pre) p = remap[static_cast<std::size_t>(p)];
      for (int& p : t.post) p = remap[static_cast<std::size_t>(p)];
    }

    AcceptingPetriNet apn;
    apn.net = std::move(net);
    apn.initial_marking.assign(apn.net.places.size(), 0);
    apn.final_marking.assign(apn.net.places.size(), 0);
    apn.initial_marking[static_cast<std::size_t>(remap[static_cast<std::size_t>(initial)])] = 1;
    apn.final_marking[static_cast<std::size_t>(remap[static_cast<std::size_t>(final_place)])] = 1;
    return apn;
  }

 private:
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  std::set<int> dead_places_;
};

}  // namespace

AcceptingPetriNet tree_to_net(const ProcessTree& tree) {
  NetBuilder builder;
  const int initial = builder.add_place();
  const int final_place = builder.add_place();
  builder.compile(tree, initial, final_place);
  return builder.finish(initial, final_place);
}

namespace {

class LanguageExplorer {
 public:
  LanguageExplorer(const AcceptingPetriNet& apn, std::size_t max_len, std::size_t budget)
      : apn_(apn), max_len_(max_len), budget_(budget) {}

  std::set<Sequence> run() {
    seen_.insert(state_key(apn_.initial_marking));
    visit(apn_.initial_marking);
    return std::move(out_);
  }

 private:
  // Injective encoding of (emitted trace, marking); labels carry a length
  // prefix so distinct states can never collide.
  std::string state_key(const Marking& m) const {
    std::string key;
    key.reserve(4 * (m.size() + trace_.size() + trace_.size()) + 16);
    for (int tokens : m) {
      auto u = static_cast<std::uint32_t>(tokens);
      key.append(reinterpret_cast<const char*>(&u), sizeof(u));
    }
    for (const std::string& label : trace_) {
      auto len = static_cast<std::uint32_t>(label.size());
      key.append(reinterpret_cast<const char*>(&len), sizeof(len));
      key.append(label);
    }
    return key;
  }

  // Depth-first search over (emitted trace, marking) states. Deduplicating on
  // the full state (rather than per firing path) keeps concurrent loops from
  // exploding into one branch per interleaving; the future of a state depends
  // only on its marking and on how much trace budget is left.
  void visit(const Marking& m) {
    if (nodes_++ >= budget_) {
      throw ResourceError("language exploration exceeded the node budget of " +
                          std::to_string(budget_));
    }
    if (m == apn_.final_marking) out_.insert(trace_);
    for (std::size_t t = 0; t < apn_.net.transitions.size(); ++t) {
      const Transition& tr = apn_.net.transitions[t];
      if (!is_enabled(tr, m)) continue;
      Marking next = m;
      for (int p : tr.pre) --next[static_cast<std::size_t>(p)];
      for (int p : tr.post) ++next[static_cast<std::size_t>(p)];
      if (tr.silent()) {
        if (seen_.insert(state_key(next)).second) visit(next);
      } else {
        if (trace_.size() >= max_len_) continue;
        trace_.push_back(tr.label);
        if (seen_.insert(state_key(next)).second) visit(next);
        trace_.pop_back();
      }
    }
  }

  const AcceptingPetriNet& apn_;
  std::size_t max_len_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::unordered_set<std::string> seen_;
  Sequence trace_;
  std::set<Sequence> out_;
};

}  // namespace

std::set<Sequence> language(const AcceptingPetriNet& apn, std::size_t max_len,
                            std::size_t node_budget) {
  if (max_len < 1) throw ArgumentError("max_len must be positive");
  return LanguageExplorer(apn, max_len, node_budget).run();
}

AcceptingPetriNet merge_global(const std::vector<AcceptingPetriNet>& lpms) {
  if (lpms.empty()) throw ArgumentError("merge_global requires a non-empty model list");

  AcceptingPetriNet merged;
  merged.net.places.push_back(Place{"mi"});
  merged.net.places.push_back(Place{"mf"});

  for (std::size_t j = 0; j < lpms.size(); ++j) {
    const AcceptingPetriNet& lpm = lpms[j];
    const int init = single_marked_place(lpm.initial_marking);
    const int fin = single_marked_place(lpm.final_marking);
    if (init < 0 || fin < 0 || init == fin) {
      throw ArgumentError("merge_global requires single-place initial and final markings "
                          "(model " + std::to_string(j) + ")");
    }
    const std::string prefix = "L" + std::to_string(j) + ".";
    std::vector<int> remap(lpm.net.places.size(), -1);
    for (std::size_t p = 0; p < lpm.net.places.size(); ++p) {
      if (static_cast<int>(p) == init) {
        remap[p] = 0;
      } else if (static_cast<int>(p) == fin) {
        remap[p] = 1;
      } else {
        remap[p] = static_cast<int>(merged.net.places.size());
        merged.net.places.push_back(Place{prefix + lpm.net.places[p].id});
      }
    }
    for (const Transition& t : lpm.net.transitions) {
      Transition copy = t;
      copy.id = prefix + t.id;
      copy.lpm_index = static_cast<int>(j);
      for (int& p : copy.pre) p = remap[static_cast<std::size_t>(p)];
      for (int& p : copy.post) p = remap[static_cast<std::size_t>(p)];
      std::sort(copy.pre.begin(), copy.pre.end());
      std::sort(copy.post.begin(), copy.post.end());
      merged.net.transitions.push_back(std::move(copy));
    }
  }

  Transition back_loop;
  back_loop.id = "t_bl";
  back_loop.label = "";
  back_loop.lpm_index = -1;
  back_loop.pre = {1};
  back_loop.post = {0};
  merged.net.transitions.push_back(std::move(back_loop));

  merged.initial_marking.assign(merged.net.places.size(), 0);
  merged.initial_marking[0] = 1;
  merged.final_marking = merged.initial_marking;
  return merged;
}

int find_back_loop(const AcceptingPetriNet& merged) {
  for (std::size_t t = merged.net.transitions.size(); t-- > 0;) {
    if (merged.net.transitions[t].id == "t_bl" && merged.net.transitions[t].silent()) {
      return static_cast<int>(t);
    }
  }
  return -1;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_dot(const AcceptingPetriNet& apn) {
  std::ostringstream out;
  out << "digraph net {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t p = 0; p < apn.net.places.size(); ++p) {
    const std::string id = dot_escape(apn.net.places[p].id);
    std::string label;
    for (int k = 0; k < apn.initial_marking[p]; ++k) label += "●";
    out << "  \"" << id << "\" [shape=circle, label=\"" << label << "\"";
    if (apn.final_marking[p] > 0) out << ", style=diagonals";
    out << "];\n";
  }
  for (const Transition& t : apn.net.transitions) {
    const std::string id = dot_escape(t.id);
    if (t.silent()) {
      out << "  \"" << id << "\" [shape=box, label=\"\", style=filled, fillcolor=gray];\n";
    } else {
      out << "  \"" << id << "\" [shape=box, label=\"" << dot_escape(t.label) << "\"];\n";
    }
  }
  for (const Transition& t : apn.net.transitions) {
    for (int p : t.pre) {
      out << "  \"" << dot_escape(apn.net.places[static_cast<std::size_t>(p)].id) << "\" -> \""
          << dot_escape(t.id) << "\";\n";
    }
    for (int p : t.post) {
      out << "  \"" << dot_escape(t.id) << "\" -> \""
          << dot_escape(apn.net.places[static_cast<std::size_t>(p)].id) << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_pnml(const AcceptingPetriNet& apn, const std::string& net_id) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
  out << "  <net id=\"" << xml_escape(net_id)
      << "\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
  out << "    <page id=\"page0\">\n";
  for (std::size_t p = 0; p < apn.net.places.size(); ++p) {
    const std::string id = xml_escape(apn.net.places[p].id);
    out << "      <place id=\"" << id << "\">\n";
    out << "        <name><text>" << id << "</text></name>\n";
    if (apn.initial_marking[p] > 0) {
      out << "        <initialMarking><text>" << apn.initial_marking[p]
          << "</text></initialMarking>\n";
    }
    out << "      </place>\n";
  }
  for (const Transition& t : apn.net.transitions) {
    out << "      <transition id=\"" << xml_escape(t.id) << "\">\n";
    out << "        <name><text>" << xml_escape(t.label) << "</text></name>\n";
    out << "      </transition>\n";
  }
  std::size_t arc = 0;
  for (const Transition& t : apn.net.transitions) {
    for (int p : t.pre) {
      out << "      <arc id=\"a" << arc++ << "\" source=\""
          << xml_escape(apn.net.places[static_cast<std::size_t>(p)].id) << "\" target=\""
          << xml_escape(t.id) << "\"/>\n";
    }
    for (int p : t.post) {
      out << "      <arc id=\"a" << arc++ << "\" source=\"" << xml_escape(t.id)
          << "\" target=\"" << xml_escape(apn.net.places[static_cast<std::size_t>(p)].id)
          << "\"/>\n";
    }
  }
  out << "    </page>\n";
  out << "    <toolspecific tool=\"lpmkit\" version=\"1.0\">\n";
  out << "      <finalMarking>\n";
  for (std::size_t p = 0; p < apn.net.places.size(); ++p) {
    if (apn.final_marking[p] > 0) {
      out << "        <place idref=\"" << xml_escape(apn.net.places[p].id) << "\"><text>"
          << apn.final_marking[p] << "</text></place>\n";
    }
  }
  out << "      </finalMarking>\n";
  out << "    </toolspecific>\n";
  out << "  </net>\n";
  out << "</pnml>\n";
  return out.str();
}

}  // namespace lpmkit
