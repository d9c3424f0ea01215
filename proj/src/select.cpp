#include "lpmkit/select.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

std::vector<AcceptingPetriNet> LpmSet::nets() const {
  std::vector<AcceptingPetriNet> out;
  out.reserve(lpms_.size());
  for (const Lpm& lpm : lpms_) out.push_back(lpm.net);
  return out;
}

const AcceptingPetriNet& LpmSet::global() const {
  if (lpms_.empty()) throw ArgumentError("the model set is empty");
  if (!global_) global_ = merge_global(nets());
  return *global_;
}

LpmSetReport LpmSet::evaluate_against(const SequenceDatabase& db,
                                      std::size_t state_budget, Mode mode) const {
  return evaluate(db, nets(), state_budget, mode);
}

namespace {

template <typename T>
double jaccard_distance(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t intersection = 0;
  for (const T& x : a) {
    if (b.count(x)) ++intersection;
  }
  const std::size_t union_size = a.size() + b.size() - intersection;
  return 1.0 - static_cast<double>(intersection) / static_cast<double>(union_size);
}

/// Confidence of a model described by its explained events: the minimum over
/// its activities of the explained / total event-count ratio.
double confidence_from_events(const SequenceDatabase& db,
                              const std::vector<Activity>& activities,
                              const std::set<EventRef>& events) {
  std::map<Activity, long long> explained;
  for (const EventRef& event : events) ++explained[db.label(event)];
  std::map<Activity, long long> totals;
  for (const Sequence& seq : db.sequences()) {
    for (const Activity& a : seq) ++totals[a];
  }
  double confidence = 1.0;
  for (const Activity& a : activities) {
    const long long total = totals.count(a) ? totals[a] : 0;
    const double ratio = total == 0 ? 0.0
                                    : static_cast<double>(explained.count(a) ? explained[a] : 0) /
                                          static_cast<double>(total);
    confidence = std::min(confidence, ratio);
  }
  return confidence;
}

}  // namespace

LpmSet alignment_based_selection(const SequenceDatabase& db, const LpmSet& set,
                                 std::size_t state_budget, Mode mode) {
  if (set.empty()) return {};
  const Segmentation seg = segment_set(db, set.nets(), state_budget, mode);
  std::vector<Lpm> kept;
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (!explained_events_of(seg, static_cast<int>(j)).empty()) {
      kept.push_back(set.lpms()[j]);
    }
  }
  return LpmSet(std::move(kept));
}

LpmSet greedy_selection(const SequenceDatabase& db, const LpmSet& set,
                        std::size_t state_budget, Mode mode) {
  // Residual database: per sequence the surviving events with their original
  // positions.
  std::vector<std::vector<std::pair<int, Activity>>> residual(db.size());
  for (std::size_t s = 0; s < db.size(); ++s) {
    const Sequence& seq = db.sequence(s);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      residual[s].emplace_back(static_cast<int>(i) + 1, seq[i]);
    }
  }

  std::vector<int> candidates(set.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = static_cast<int>(i);

  std::vector<Lpm> picked;
  while (!candidates.empty()) {
    std::vector<Sequence> sequences(db.size());
    std::vector<std::vector<int>> original_position(db.size());
    for (std::size_t s = 0; s < db.size(); ++s) {
      for (const auto& [pos, activity] : residual[s]) {
        sequences[s].push_back(activity);
        original_position[s].push_back(pos);
      }
    }
    const SequenceDatabase residual_db(sequences);

    std::vector<long long> gains(candidates.size());
    parallel::for_index(candidates.size(), mode, [&](std::size_t i) {
      const Lpm& candidate = set.lpms()[static_cast<std::size_t>(candidates[i])];
      gains[i] = static_cast<long long>(
          explained_events(segment_lpm(residual_db, candidate.net, state_budget,
                                       Mode::serial))
              .size());
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < gains.size(); ++i) {
      if (gains[i] > gains[best]) best = i;
    }
    if (gains.empty() || gains[best] <= 0) break;

    const int winner_index = candidates[best];
    const Lpm& winner = set.lpms()[static_cast<std::size_t>(winner_index)];
    const Segmentation seg =
        segment_lpm(residual_db, winner.net, state_budget, mode);
    std::set<std::pair<int, int>> consumed;  // (sequence, original position)
    for (const EventRef& event : explained_events(seg)) {
      consumed.insert(
          {event.seq_index,
           original_position[static_cast<std::size_t>(event.seq_index)]
                            [static_cast<std::size_t>(event.position) - 1]});
    }
    for (std::size_t s = 0; s < residual.size(); ++s) {
      std::vector<std::pair<int, Activity>> survivors;
      for (const auto& entry : residual[s]) {
        if (!consumed.count({static_cast<int>(s), entry.first})) {
          survivors.push_back(entry);
        }
      }
      residual[s] = std::move(survivors);
    }

    picked.push_back(winner);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return LpmSet(std::move(picked));
}

LpmSet greedy_fscore_selection(const SequenceDatabase& db, const LpmSet& set,
                               std::size_t state_budget, Mode mode) {
  std::vector<int> candidates(set.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = static_cast<int>(i);

  std::vector<Lpm> picked;
  std::vector<AcceptingPetriNet> picked_nets;
  double best_fscore = 0.0;
  while (!candidates.empty()) {
    std::vector<double> scores(candidates.size());
    parallel::for_index(candidates.size(), mode, [&](std::size_t i) {
      std::vector<AcceptingPetriNet> nets = picked_nets;
      nets.push_back(set.lpms()[static_cast<std::size_t>(candidates[i])].net);
      scores[i] = fscore(db, nets, state_budget, Mode::serial);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
      if (scores[i] > scores[best]) best = i;
    }
    if (scores[best] <= best_fscore) break;

    best_fscore = scores[best];
    const Lpm& winner = set.lpms()[static_cast<std::size_t>(candidates[best])];
    picked.push_back(winner);
    picked_nets.push_back(winner.net);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return LpmSet(std::move(picked));
}

LpmSet heuristic_diversity_selection(const LpmSet& set, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw ArgumentError("diversity threshold must lie within [0,1]");
  }
  if (set.empty()) return {};

  std::vector<std::set<Activity>> alphabets;
  for (const Lpm& lpm : set.lpms()) {
    alphabets.emplace_back(lpm.activities.begin(), lpm.activities.end());
  }

  std::vector<Lpm> picked{set.lpms().front()};
  std::vector<std::size_t> picked_indices{0};
  for (std::size_t i = 1; i < set.size(); ++i) {
    double min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t s : picked_indices) {
      min_distance = std::min(min_distance, jaccard_distance(alphabets[i], alphabets[s]));
    }
    if (min_distance > threshold) {
      picked.push_back(set.lpms()[i]);
      picked_indices.push_back(i);
    }
  }
  return LpmSet(std::move(picked));
}

LpmSet remine(const SequenceDatabase& db, const LpmSet& set, const Discoverer& pd,
              std::size_t state_budget, Mode mode) {
  if (set.empty()) return {};
  const Segmentation seg = segment_set(db, set.nets(), state_budget, mode);

  std::vector<Lpm> out;
  for (std::size_t j = 0; j < set.size(); ++j) {
    std::vector<Sequence> traces;
    std::set<EventRef> events;
    long long instances = 0;
    for (const auto& segments : seg.sequences) {
      for (const Segment& segment : segments) {
        if (segment.kind != SegmentKind::gamma ||
            segment.lpm_index != static_cast<int>(j)) {
          continue;
        }
        Sequence trace;
        for (const EventRef& event : segment.events) {
          trace.push_back(db.label(event));
          events.insert(event);
        }
        traces.push_back(std::move(trace));
        ++instances;
      }
    }
    if (traces.empty()) continue;

    Lpm lpm;
    try {
      lpm.net = pd(traces);
    } catch (const std::exception& e) {
      throw Error("re-mining failed for model at index " + std::to_string(j) + ": " +
                  e.what());
    }
    lpm.activities = lpm.net.net.visible_labels();
    lpm.support = static_cast<long long>(events.size());
    lpm.instance_count = instances;
    lpm.confidence = confidence_from_events(db, lpm.activities, events);
    out.push_back(std::move(lpm));
  }
  return LpmSet(std::move(out));
}

LpmSet merge_clogsgrow(const SequenceDatabase& db,
                       const std::vector<SequentialPattern>& patterns, double min_dist,
                       const Discoverer& pd) {
  if (min_dist < 0.0 || min_dist > 1.0) {
    throw ArgumentError("min_dist must lie within [0,1]");
  }

  struct Member {
    const SequentialPattern* pattern;
    std::set<EventRef> events;
  };
  std::set<EventRef> explained;
  std::vector<std::vector<Member>> clusters;

  for (const SequentialPattern& sp : patterns) {
    std::set<EventRef> events;
    for (const auto& instance : sp.instances) {
      events.insert(instance.begin(), instance.end());
    }
    if (std::includes(explained.begin(), explained.end(), events.begin(),
                      events.end())) {
      continue;  // adds no new event
    }
    explained.insert(events.begin(), events.end());

    int best_cluster = -1;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (const Member& member : clusters[c]) {
        const double d = jaccard_distance(events, member.events);
        if (d < best_distance) {
          best_distance = d;
          best_cluster = static_cast<int>(c);
        }
      }
    }
    Member member{&sp, std::move(events)};
    if (best_cluster != -1 && best_distance < min_dist) {
      clusters[static_cast<std::size_t>(best_cluster)].push_back(std::move(member));
    } else {
      clusters.push_back({std::move(member)});
    }
  }

  std::vector<Lpm> out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::vector<Sequence> traces;
    std::set<EventRef> events;
    long long instances = 0;
    for (const Member& member : clusters[c]) {
      traces.push_back(member.pattern->pattern);
      events.insert(member.events.begin(), member.events.end());
      instances += static_cast<long long>(member.pattern->instances.size());
    }
    Lpm lpm;
    try {
      lpm.net = pd(traces);
    } catch (const std::exception& e) {
      throw Error("discovery failed for cluster " + std::to_string(c) + ": " + e.what());
    }
    lpm.activities = lpm.net.net.visible_labels();
    lpm.support = static_cast<long long>(events.size());
    lpm.instance_count = instances;
    lpm.confidence = confidence_from_events(db, lpm.activities, events);
    out.push_back(std::move(lpm));
  }
  return LpmSet(std::move(out));
}

namespace {

constexpr std::size_t kMaxExactVariants = 32;

struct TrieNode {
  std::map<Activity, int> children;
  bool terminal = false;
};

AcceptingPetriNet prefix_tree_net(const std::set<Sequence>& variants) {
  std::vector<TrieNode> trie(1);
  for (const Sequence& variant : variants) {
    int node = 0;
    for (const Activity& a : variant) {
      auto it = trie[static_cast<std::size_t>(node)].children.find(a);
      if (it == trie[static_cast<std::size_t>(node)].children.end()) {
        trie.push_back(TrieNode{});
        it = trie[static_cast<std::size_t>(node)]
                 .children.emplace(a, static_cast<int>(trie.size()) - 1)
                 .first;
      }
      node = it->second;
    }
    trie[static_cast<std::size_t>(node)].terminal = true;
  }

  AcceptingPetriNet apn;
  auto add_place = [&apn] {
    apn.net.places.push_back(Place{"p" + std::to_string(apn.net.places.size())});
    return static_cast<int>(apn.net.places.size()) - 1;
  };
  auto add_transition = [&apn](const std::string& label, int pre, int post) {
    Transition t;
    t.id = (label.empty() ? "tau" : "t") + std::to_string(apn.net.transitions.size());
    t.label = label;
    t.pre = {pre};
    t.post = {post};
    apn.net.transitions.push_back(std::move(t));
  };

  const int initial = add_place();
  const int final_place = add_place();

  // Leaves connect straight to the shared final place; terminal inner nodes
  // get a silent shortcut to it.
  auto emit = [&](auto&& self, int node, int place) -> void {
    for (const auto& [activity, child] : trie[static_cast<std::size_t>(node)].children) {
      if (trie[static_cast<std::size_t>(child)].children.empty()) {
        add_transition(activity, place, final_place);
      } else {
        const int child_place = add_place();
        add_transition(activity, place, child_place);
        if (trie[static_cast<std::size_t>(child)].terminal) {
          add_transition("", child_place, final_place);
        }
        self(self, child, child_place);
      }
    }
  };
  if (trie[0].terminal) add_transition("", initial, final_place);
  emit(emit, 0, initial);

  apn.initial_marking.assign(apn.net.places.size(), 0);
  apn.final_marking.assign(apn.net.places.size(), 0);
  apn.initial_marking[static_cast<std::size_t>(initial)] = 1;
  apn.final_marking[static_cast<std::size_t>(final_place)] = 1;
  return apn;
}

AcceptingPetriNet directly_follows_net(const std::set<Sequence>& variants) {
  std::set<Activity> starters;
  std::set<Activity> enders;
  std::set<std::pair<Activity, Activity>> pairs;
  std::set<Activity> activities;
  bool has_empty = false;
  for (const Sequence& variant : variants) {
    if (variant.empty()) {
      has_empty = true;
      continue;
    }
    starters.insert(variant.front());
    enders.insert(variant.back());
    activities.insert(variant.begin(), variant.end());
    for (std::size_t i = 0; i + 1 < variant.size(); ++i) {
      pairs.insert({variant[i], variant[i + 1]});
    }
  }

  AcceptingPetriNet apn;
  apn.net.places.push_back(Place{"p_start"});
  apn.net.places.push_back(Place{"p_end"});
  std::map<std::pair<Activity, Activity>, int> pair_place;
  for (const auto& pair : pairs) {
    pair_place[pair] = static_cast<int>(apn.net.places.size());
    apn.net.places.push_back(Place{"p_" + pair.first + "_" + pair.second});
  }

  for (const Activity& x : activities) {
    std::vector<int> inputs;
    if (starters.count(x)) inputs.push_back(0);
    for (const auto& [pair, place] : pair_place) {
      if (pair.second == x) inputs.push_back(place);
    }
    std::vector<int> outputs;
    for (const auto& [pair, place] : pair_place) {
      if (pair.first == x) outputs.push_back(place);
    }
    if (enders.count(x)) outputs.push_back(1);
    for (int in : inputs) {
      for (int out : outputs) {
        Transition t;
        t.id = "t" + std::to_string(apn.net.transitions.size());
        t.label = x;
        t.pre = {in};
        t.post = {out};
        apn.net.transitions.push_back(std::move(t));
      }
    }
  }
  if (has_empty) {
    Transition t;
    t.id = "tau" + std::to_string(apn.net.transitions.size());
    t.pre = {0};
    t.post = {1};
    apn.net.transitions.push_back(std::move(t));
  }

  apn.initial_marking.assign(apn.net.places.size(), 0);
  apn.final_marking.assign(apn.net.places.size(), 0);
  apn.initial_marking[0] = 1;
  apn.final_marking[1] = 1;
  return apn;
}

}  // namespace

AcceptingPetriNet discover_simple(const std::vector<Sequence>& traces) {
  if (traces.empty()) throw ArgumentError("discovery requires at least one trace");
  const std::set<Sequence> variants(traces.begin(), traces.end());
  if (variants.size() <= kMaxExactVariants) return prefix_tree_net(variants);
  return directly_follows_net(variants);
}

}  // namespace lpmkit
