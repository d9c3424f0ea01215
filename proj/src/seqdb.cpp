#include "lpmkit/seqdb.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "lpmkit/errors.hpp"

namespace lpmkit {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

}  // namespace

SequenceDatabase::SequenceDatabase(std::vector<Sequence> sequences)
    : sequences_(std::move(sequences)) {
  std::set<Activity> alphabet;
  for (const Sequence& seq : sequences_) {
    total_events_ += seq.size();
    alphabet.insert(seq.begin(), seq.end());
  }
  alphabet_.assign(alphabet.begin(), alphabet.end());
}

const Activity& SequenceDatabase::label(const EventRef& e) const {
  const Sequence& seq = sequence(e.seq_index);
  return seq.at(static_cast<std::size_t>(e.position - 1));
}

Sequence project(const Sequence& seq, const std::set<Activity>& keep) {
  Sequence out;
  for (const Activity& a : seq) {
    if (keep.count(a)) out.push_back(a);
  }
  return out;
}

Sequence filter_out(const Sequence& seq, const std::set<Activity>& drop) {
  Sequence out;
  for (const Activity& a : seq) {
    if (!drop.count(a)) out.push_back(a);
  }
  return out;
}

Sequence prefix(const Sequence& seq, std::size_t k) {
  if (k < 1 || k > seq.size()) {
    throw RangeError("prefix length " + std::to_string(k) + " out of range [1, " +
                     std::to_string(seq.size()) + "]");
  }
  return Sequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k));
}

SequenceDatabase parse_lines(const std::string& text, const std::string& source) {
  (void)source;
  std::vector<Sequence> sequences;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Sequence seq;
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) seq.push_back(trim(token));
    if (!seq.empty()) sequences.push_back(std::move(seq));
  }
  return SequenceDatabase(std::move(sequences));
}

SequenceDatabase parse_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) return SequenceDatabase();
  ++line_no;
  std::vector<std::string> header = split(line, ',');
  for (std::string& h : header) h = trim(h);
  bool has_order = false;
  if (header.size() == 3 && header[2] == "order") {
    has_order = true;
  } else if (header.size() != 2) {
    throw ParseError(source, line_no, "expected header 'case,activity' or 'case,activity,order'");
  }
  if (header[0] != "case" || header[1] != "activity") {
    throw ParseError(source, line_no, "expected header 'case,activity' or 'case,activity,order'");
  }

  struct Row {
    std::string activity;
    long order;
    long file_pos;
  };
  std::vector<std::string> case_order;
  std::vector<std::vector<Row>> rows_per_case;
  std::vector<std::pair<std::string, std::size_t>> case_index;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(fields.size()));
    }
    std::string case_id = trim(fields[0]);
    std::string activity = trim(fields[1]);
    if (activity.empty()) throw ParseError(source, line_no, "empty activity label");
    long order = 0;
    if (has_order) {
      const std::string order_text = trim(fields[2]);
      try {
        std::size_t used = 0;
        order = std::stol(order_text, &used);
        if (used != order_text.size()) throw std::invalid_argument(order_text);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "order column must be an integer, found '" +
                                              order_text + "'");
      }
    }
    auto it = std::find_if(case_index.begin(), case_index.end(),
                           [&](const auto& p) { return p.first == case_id; });
    std::size_t idx;
    if (it == case_index.end()) {
      idx = rows_per_case.size();
      case_index.emplace_back(case_id, idx);
      rows_per_case.emplace_back();
    } else {
      idx = it->second;
    }
    rows_per_case[idx].push_back(Row{activity, order, line_no});
  }

  std::vector<Sequence> sequences;
  sequences.reserve(rows_per_case.size());
  for (std::vector<Row>& rows : rows_per_case) {
    if (has_order) {
      std::stable_sort(rows.begin(), rows.end(),
                       [](const Row& a, const Row& b) { return a.order < b.order; });
    }
    Sequence seq;
    seq.reserve(rows.size());
    for (const Row& r : rows) seq.push_back(r.activity);
    sequences.push_back(std::move(seq));
  }
  return SequenceDatabase(std::move(sequences));
}

SequenceDatabase load(const std::string& path, DbFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return format == DbFormat::lines ? parse_lines(text, path) : parse_csv(text, path);
}

}  // namespace lpmkit
