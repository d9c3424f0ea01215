#include "lpmkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

double coverage(const SequenceDatabase& db, const Segmentation& seg) {
  if (db.total_events() == 0) return 0.0;
  return static_cast<double>(explained_events(seg).size()) /
         static_cast<double>(db.total_events());
}

double coverage(const SequenceDatabase& db, const std::vector<AcceptingPetriNet>& lpms,
                std::size_t state_budget, Mode mode) {
  if (lpms.empty() || db.total_events() == 0) return 0.0;
  return coverage(db, segment_set(db, lpms, state_budget, mode));
}

namespace {

/// Visible labels fireable from `m` after zero or more silent firings.
std::set<std::string> reachable_visible_labels(const AcceptingPetriNet& apn,
                                               const Marking& m) {
  std::set<std::string> labels;
  std::set<Marking> seen{m};
  std::deque<Marking> frontier{m};
  while (!frontier.empty()) {
    const Marking current = frontier.front();
    frontier.pop_front();
    for (int t : enabled(apn, current)) {
      const Transition& tr = apn.net.transitions[static_cast<std::size_t>(t)];
      if (tr.silent()) {
        Marking next = fire(apn, current, t);
        if (seen.insert(next).second) frontier.push_back(std::move(next));
      } else {
        labels.insert(tr.label);
      }
    }
  }
  return labels;
}

}  // namespace

double non_redundancy(const SequenceDatabase& db,
                      const std::vector<AcceptingPetriNet>& lpms,
                      std::size_t state_budget, Mode mode) {
  if (lpms.empty()) return 1.0;
  const AcceptingPetriNet merged = merge_global(lpms);

  struct Visit {
    Marking marking;
    std::string next;  // activity synchronized next; empty for terminal visits
  };
  std::vector<std::vector<Visit>> visits(db.size());
  parallel::for_index(db.size(), mode, [&](std::size_t i) {
    const Alignment alignment = align(db.sequence(i), merged, state_budget);
    Marking m = merged.initial_marking;
    for (const Move& move : alignment.moves) {
      if (move.kind == MoveKind::log) continue;
      const Transition& t =
          merged.net.transitions[static_cast<std::size_t>(move.transition)];
      if (move.kind == MoveKind::sync) visits[i].push_back({m, t.label});
      for (int p : t.pre) --m[static_cast<std::size_t>(p)];
      for (int p : t.post) ++m[static_cast<std::size_t>(p)];
    }
    visits[i].push_back({std::move(m), ""});
  });

  struct StateStats {
    long long weight = 0;
    std::set<std::string> taken;
  };
  std::map<Marking, StateStats> states;
  for (const auto& sequence_visits : visits) {
    for (const Visit& visit : sequence_visits) {
      StateStats& stats = states[visit.marking];
      ++stats.weight;
      if (!visit.next.empty()) stats.taken.insert(visit.next);
    }
  }

  double taken_sum = 0.0;
  double enabled_sum = 0.0;
  for (const auto& [marking, stats] : states) {
    const std::set<std::string> allowed = reachable_visible_labels(merged, marking);
    taken_sum += static_cast<double>(stats.weight) * static_cast<double>(stats.taken.size());
    enabled_sum +=
        static_cast<double>(stats.weight) * static_cast<double>(allowed.size());
  }
  if (enabled_sum == 0.0) return 1.0;
  return taken_sum / enabled_sum;
}

double fscore_value(double coverage, double non_redundancy) {
  const double sum = coverage + non_redundancy;
  if (sum == 0.0) return 0.0;
  return 2.0 * coverage * non_redundancy / sum;
}

double fscore(const SequenceDatabase& db, const std::vector<AcceptingPetriNet>& lpms,
              std::size_t state_budget, Mode mode) {
  return fscore_value(coverage(db, lpms, state_budget, mode),
                      non_redundancy(db, lpms, state_budget, mode));
}

long long cardoso(const LabeledPetriNet& net) {
  long long total = 0;
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    std::set<std::vector<int>> postsets;
    for (const Transition& t : net.transitions) {
      if (std::find(t.pre.begin(), t.pre.end(), static_cast<int>(p)) != t.pre.end()) {
        std::vector<int> post = t.post;
        std::sort(post.begin(), post.end());
        postsets.insert(std::move(post));
      }
    }
    total += static_cast<long long>(postsets.size());
  }
  return total;
}

namespace {

bool strictly_covers(const Marking& m, const Marking& final_marking) {
  bool strict = false;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p] < final_marking[p]) return false;
    if (m[p] > final_marking[p]) strict = true;
  }
  return strict;
}

}  // namespace

std::optional<long long> cyclomatic(const AcceptingPetriNet& apn,
                                    std::size_t node_budget) {
  std::set<Marking> seen{apn.initial_marking};
  std::deque<Marking> frontier{apn.initial_marking};
  long long arcs = 0;
  while (!frontier.empty()) {
    const Marking m = frontier.front();
    frontier.pop_front();
    const std::vector<int> fireable = enabled(apn, m);
    if (fireable.empty() && m != apn.final_marking) return std::nullopt;
    if (strictly_covers(m, apn.final_marking)) return std::nullopt;
    for (int t : fireable) {
      ++arcs;
      Marking next = fire(apn, m, t);
      if (seen.insert(next).second) {
        if (seen.size() > node_budget) {
          throw ResourceError("reachability graph exceeded the node budget of " +
                              std::to_string(node_budget));
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return arcs - static_cast<long long>(seen.size()) + 2;
}

double perplexity(const SequenceDatabase& db) {
  if (db.size() == 0) throw ArgumentError("perplexity requires a non-empty database");

  // Intern activities; -1 and -2 are the artificial start / end symbols.
  std::map<std::string, int> ids;
  auto id_of = [&](const std::string& a) {
    return ids.emplace(a, static_cast<int>(ids.size())).first->second;
  };
  constexpr int kStart = -1;
  constexpr int kEnd = -2;

  std::map<std::pair<int, int>, long long> transition_counts;
  std::map<int, long long> row_totals;
  for (const Sequence& seq : db.sequences()) {
    int previous = kStart;
    for (const Activity& a : seq) {
      const int current = id_of(a);
      ++transition_counts[{previous, current}];
      ++row_totals[previous];
      previous = current;
    }
    ++transition_counts[{previous, kEnd}];
    ++row_totals[previous];
  }

  long long n = 0;
  double entropy_sum = 0.0;
  for (const auto& [pair, count] : transition_counts) {
    const double p = static_cast<double>(count) / static_cast<double>(row_totals[pair.first]);
    entropy_sum -= static_cast<double>(count) * std::log(p);
    n += count;
  }
  return std::exp(entropy_sum / static_cast<double>(n));
}

LpmSetReport evaluate(const SequenceDatabase& db,
                      const std::vector<AcceptingPetriNet>& lpms,
                      std::size_t state_budget, Mode mode) {
  LpmSetReport report;
  report.coverage = coverage(db, lpms, state_budget, mode);
  report.non_redundancy = non_redundancy(db, lpms, state_budget, mode);
  report.fscore = fscore_value(report.coverage, report.non_redundancy);
  report.pattern_count = static_cast<int>(lpms.size());
  long long cyclomatic_sum = 0;
  bool proper = true;
  for (const AcceptingPetriNet& lpm : lpms) {
    report.transition_count += static_cast<int>(lpm.net.transitions.size());
    report.cardoso += cardoso(lpm.net);
    const std::optional<long long> cy = cyclomatic(lpm, state_budget);
    if (cy) {
      cyclomatic_sum += *cy;
    } else {
      proper = false;
    }
  }
  if (proper) report.cyclomatic = cyclomatic_sum;
  return report;
}

}  // namespace lpmkit
