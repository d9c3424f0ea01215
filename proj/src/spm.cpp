#include "lpmkit/spm.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "lpmkit/errors.hpp"

namespace lpmkit {

namespace {

/// Earliest-match greedy instance extraction for one sequence: each event
/// extends the oldest partial instance at the deepest matching pattern
/// position, and additionally opens a fresh partial when it matches the first
/// position. This realizes the maximum family of non-overlapping occurrences
/// under position-wise disjointness.
std::vector<std::vector<EventRef>> sequence_instances(const Sequence& seq,
                                                      const Sequence& pattern,
                                                      int seq_index) {
  const std::size_t m = pattern.size();
  std::vector<std::deque<std::vector<EventRef>>> partial(m + 1);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const EventRef event{seq_index, static_cast<int>(i) + 1};
    for (std::size_t j = m; j >= 1; --j) {
      if (pattern[j - 1] != seq[i]) continue;
      if (j == 1) {
        partial[1].push_back({event});
      } else if (!partial[j - 1].empty()) {
        std::vector<EventRef> instance = std::move(partial[j - 1].front());
        partial[j - 1].pop_front();
        instance.push_back(event);
        partial[j].push_back(std::move(instance));
      }
    }
  }
  return {partial[m].begin(), partial[m].end()};
}

}  // namespace

std::pair<int, std::vector<std::vector<EventRef>>> repetitive_support(
    const SequenceDatabase& db, const Sequence& pattern) {
  if (pattern.empty()) throw ArgumentError("pattern must be non-empty");
  std::vector<std::vector<EventRef>> instances;
  for (std::size_t s = 0; s < db.size(); ++s) {
    auto found = sequence_instances(db.sequence(s), pattern, static_cast<int>(s));
    instances.insert(instances.end(), std::make_move_iterator(found.begin()),
                     std::make_move_iterator(found.end()));
  }
  return {static_cast<int>(instances.size()), std::move(instances)};
}

namespace {

int support_only(const SequenceDatabase& db, const Sequence& pattern) {
  // Counting-only variant of the greedy matcher.
  const std::size_t m = pattern.size();
  int total = 0;
  std::vector<int> counts(m + 1);
  for (const Sequence& seq : db.sequences()) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const Activity& event : seq) {
      for (std::size_t j = m; j >= 1; --j) {
        if (pattern[j - 1] != event) continue;
        if (j == 1) {
          ++counts[1];
        } else if (counts[j - 1] > 0) {
          --counts[j - 1];
          ++counts[j];
        }
      }
    }
    total += counts[m];
  }
  return total;
}

}  // namespace

std::vector<SequentialPattern> mine_clogsgrow(const SequenceDatabase& db, int min_sup,
                                              Mode mode) {
  if (min_sup < 1) throw ArgumentError("min_sup must be positive");
  const std::vector<Activity> alphabet = db.alphabet();
  std::size_t max_len = 0;
  for (const Sequence& seq : db.sequences()) max_len = std::max(max_len, seq.size());

  // Level-synchronous growth by appending one activity. Support is monotone
  // non-increasing under insertion, so every frequent pattern's prefix is
  // frequent and append-growth is complete.
  std::map<Sequence, int> frequent;
  std::vector<Sequence> level;
  for (const Activity& a : alphabet) level.push_back({a});
  while (!level.empty() && level.front().size() <= max_len) {
    std::vector<int> supports(level.size());
    parallel::for_index(level.size(), mode,
                        [&](std::size_t i) { supports[i] = support_only(db, level[i]); });
    std::vector<Sequence> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (supports[i] < min_sup) continue;
      frequent.emplace(level[i], supports[i]);
      for (const Activity& a : alphabet) {
        Sequence grown = level[i];
        grown.push_back(a);
        next.push_back(std::move(grown));
      }
    }
    level = std::move(next);
  }

  // Closedness: drop multi-activity patterns absorbed by a single-activity
  // insertion of equal support. Insertions not in the frequent map have
  // support < min_sup <= support(pattern) and cannot absorb it.
  std::vector<SequentialPattern> closed;
  for (const auto& [pattern, support] : frequent) {
    bool is_closed = true;
    if (pattern.size() > 1) {
      for (std::size_t pos = 0; pos <= pattern.size() && is_closed; ++pos) {
        for (const Activity& a : alphabet) {
          Sequence super = pattern;
          super.insert(super.begin() + static_cast<std::ptrdiff_t>(pos), a);
          auto it = frequent.find(super);
          if (it != frequent.end() && it->second == support) {
            is_closed = false;
            break;
          }
        }
      }
    }
    if (!is_closed) continue;
    SequentialPattern sp;
    sp.pattern = pattern;
    sp.support = support;
    sp.instances = repetitive_support(db, pattern).second;
    closed.push_back(std::move(sp));
  }

  std::sort(closed.begin(), closed.end(),
            [](const SequentialPattern& a, const SequentialPattern& b) {
              if (a.support != b.support) return a.support > b.support;
              if (a.pattern.size() != b.pattern.size())
                return a.pattern.size() < b.pattern.size();
              return a.pattern < b.pattern;
            });
  return closed;
}

AcceptingPetriNet pattern_to_net(const SequentialPattern& sp) {
  if (sp.pattern.empty()) throw ArgumentError("pattern must be non-empty");
  AcceptingPetriNet apn;
  for (std::size_t p = 0; p <= sp.pattern.size(); ++p) {
    apn.net.places.push_back(Place{"p" + std::to_string(p)});
  }
  for (std::size_t i = 0; i < sp.pattern.size(); ++i) {
    Transition t;
    t.id = "t" + std::to_string(i);
    t.label = sp.pattern[i];
    t.pre = {static_cast<int>(i)};
    t.post = {static_cast<int>(i) + 1};
    apn.net.transitions.push_back(std::move(t));
  }
  apn.initial_marking.assign(apn.net.places.size(), 0);
  apn.final_marking.assign(apn.net.places.size(), 0);
  apn.initial_marking.front() = 1;
  apn.final_marking.back() = 1;
  return apn;
}

}  // namespace lpmkit
