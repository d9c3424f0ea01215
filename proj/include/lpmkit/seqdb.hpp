#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace lpmkit {

// An activity label; compared by exact string equality.
using Activity = std::string;

// A sequence of activities. Positions are 1-based in the public API
// (EventRef::position); the underlying vector is 0-based as usual.
using Sequence = std::vector<Activity>;

// Stable identity of one event: index of its sequence in the database
// (0-based) and its position within the sequence (1-based).
struct EventRef {
  int seq_index = 0;
  int position = 0;

  auto operator<=>(const EventRef&) const = default;
};

// An ordered multiset of sequences. Order (and hence event identity) is
// preserved; duplicates are kept as separate entries. Immutable after
// construction.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  explicit SequenceDatabase(std::vector<Sequence> sequences);

  const std::vector<Sequence>& sequences() const { return sequences_; }
  const Sequence& sequence(int i) const { return sequences_.at(static_cast<std::size_t>(i)); }
  std::size_t size() const { return sequences_.size(); }
  std::size_t total_events() const { return total_events_; }

  // Sorted set of distinct activities occurring in the database.
  const std::vector<Activity>& alphabet() const { return alphabet_; }

  const Activity& label(const EventRef& e) const;

 private:
  std::vector<Sequence> sequences_;
  std::vector<Activity> alphabet_;
  std::size_t total_events_ = 0;
};

// Subsequence of events whose activity is in `keep`, order preserved.
Sequence project(const Sequence& seq, const std::set<Activity>& keep);

// Subsequence with all events whose activity is in `drop` removed.
Sequence filter_out(const Sequence& seq, const std::set<Activity>& drop);

// First k events; throws RangeError unless 1 <= k <= |seq|.
Sequence prefix(const Sequence& seq, std::size_t k);

enum class DbFormat { lines, csv };

// Parses database text. `source` names the input in error messages.
SequenceDatabase parse_lines(const std::string& text, const std::string& source = "<string>");
SequenceDatabase parse_csv(const std::string& text, const std::string& source = "<string>");

// Loads a database file; throws ParseError (with file and line) on malformed
// input and Error if the file cannot be read. An empty file yields an empty
// database.
SequenceDatabase load(const std::string& path, DbFormat format);

}  // namespace lpmkit
