#include "lpmkit/json_io.hpp"

#include <fstream>
#include <sstream>

#include "lpmkit/errors.hpp"
#include "lpmkit/process_tree.hpp"

namespace lpmkit {

ordered_json net_to_json(const AcceptingPetriNet& apn) {
  ordered_json j;
  j["places"] = ordered_json::array();
  for (const Place& p : apn.net.places) j["places"].push_back(p.id);
  j["transitions"] = ordered_json::array();
  for (const Transition& t : apn.net.transitions) {
    ordered_json tj;
    tj["id"] = t.id;
    tj["label"] = t.label;
    tj["pre"] = t.pre;
    tj["post"] = t.post;
    j["transitions"].push_back(std::move(tj));
  }
  j["initial_marking"] = apn.initial_marking;
  j["final_marking"] = apn.final_marking;
  return j;
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw ParseError("json", 0, what);
}

}  // namespace

AcceptingPetriNet net_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("places") || !j.contains("transitions")) {
    malformed("net object requires 'places' and 'transitions'");
  }
  AcceptingPetriNet apn;
  for (const auto& p : j.at("places")) {
    apn.net.places.push_back(Place{p.get<std::string>()});
  }
  const int place_count = static_cast<int>(apn.net.places.size());
  for (const auto& tj : j.at("transitions")) {
    Transition t;
    t.id = tj.at("id").get<std::string>();
    t.label = tj.value("label", std::string{});
    t.pre = tj.at("pre").get<std::vector<int>>();
    t.post = tj.at("post").get<std::vector<int>>();
    for (int p : t.pre) {
      if (p < 0 || p >= place_count) malformed("transition arc references unknown place");
    }
    for (int p : t.post) {
      if (p < 0 || p >= place_count) malformed("transition arc references unknown place");
    }
    apn.net.transitions.push_back(std::move(t));
  }
  apn.initial_marking = j.at("initial_marking").get<Marking>();
  apn.final_marking = j.at("final_marking").get<Marking>();
  if (apn.initial_marking.size() != apn.net.places.size() ||
      apn.final_marking.size() != apn.net.places.size()) {
    malformed("marking length does not match place count");
  }
  return apn;
}

ordered_json lpm_to_json(const Lpm& lpm, bool include_net) {
  ordered_json j;
  if (lpm.tree) {
    j["tree"] = to_text(*lpm.tree);
  } else {
    j["tree"] = nullptr;
  }
  j["support"] = lpm.support;
  j["instance_count"] = lpm.instance_count;
  j["confidence"] = lpm.confidence;
  j["activities"] = lpm.activities;
  if (include_net || !lpm.tree) j["net"] = net_to_json(lpm.net);
  return j;
}

ordered_json lpms_to_json(const std::vector<Lpm>& lpms, bool include_net) {
  ordered_json j = ordered_json::array();
  for (const Lpm& lpm : lpms) j.push_back(lpm_to_json(lpm, include_net));
  return j;
}

std::vector<Lpm> lpms_from_json(const ordered_json& j) {
  if (!j.is_array()) malformed("model file must contain an array");
  std::vector<Lpm> out;
  for (const auto& entry : j) {
    Lpm lpm;
    if (entry.contains("tree") && entry.at("tree").is_string()) {
      lpm.tree = parse_tree(entry.at("tree").get<std::string>(), "tree");
      lpm.net = tree_to_net(*lpm.tree);
    }
    if (entry.contains("net") && entry.at("net").is_object()) {
      lpm.net = net_from_json(entry.at("net"));
    } else if (!lpm.tree) {
      malformed("model entry requires a 'tree' string or a 'net' object");
    }
    lpm.support = entry.value("support", 0LL);
    lpm.instance_count = entry.value("instance_count", 0LL);
    lpm.confidence = entry.value("confidence", 0.0);
    if (entry.contains("activities")) {
      lpm.activities = entry.at("activities").get<std::vector<Activity>>();
    } else if (lpm.tree) {
      lpm.activities = tree_activities(*lpm.tree);
    } else {
      lpm.activities = lpm.net.net.visible_labels();
    }
    out.push_back(std::move(lpm));
  }
  return out;
}

ordered_json patterns_to_json(const std::vector<SequentialPattern>& patterns) {
  ordered_json j = ordered_json::array();
  for (const SequentialPattern& sp : patterns) {
    ordered_json pj;
    pj["pattern"] = sp.pattern;
    pj["support"] = sp.support;
    pj["instances"] = ordered_json::array();
    for (const auto& instance : sp.instances) {
      ordered_json ij = ordered_json::array();
      for (const EventRef& event : instance) {
        ij.push_back({{"seq", event.seq_index}, {"pos", event.position}});
      }
      pj["instances"].push_back(std::move(ij));
    }
    j.push_back(std::move(pj));
  }
  return j;
}

std::vector<SequentialPattern> patterns_from_json(const ordered_json& j) {
  if (!j.is_array()) malformed("pattern file must contain an array");
  std::vector<SequentialPattern> out;
  for (const auto& entry : j) {
    SequentialPattern sp;
    sp.pattern = entry.at("pattern").get<Sequence>();
    sp.support = entry.value("support", 0);
    if (entry.contains("instances")) {
      for (const auto& ij : entry.at("instances")) {
        std::vector<EventRef> instance;
        for (const auto& ej : ij) {
          instance.push_back(EventRef{ej.at("seq").get<int>(), ej.at("pos").get<int>()});
        }
        sp.instances.push_back(std::move(instance));
      }
    }
    out.push_back(std::move(sp));
  }
  return out;
}

ordered_json segmentation_to_json(const Segmentation& seg) {
  ordered_json j = ordered_json::array();
  for (const auto& segments : seg.sequences) {
    ordered_json sj = ordered_json::array();
    for (const Segment& segment : segments) {
      ordered_json entry;
      entry["type"] = segment.kind == SegmentKind::gamma ? "gamma" : "lambda";
      if (segment.kind == SegmentKind::gamma) {
        entry["lpm"] = segment.lpm_index;
      } else {
        entry["lpm"] = nullptr;
      }
      ordered_json events = ordered_json::array();
      for (const EventRef& event : segment.events) events.push_back(event.position);
      entry["events"] = std::move(events);
      sj.push_back(std::move(entry));
    }
    j.push_back(std::move(sj));
  }
  return j;
}

ordered_json report_to_json(const LpmSetReport& report) {
  ordered_json j;
  j["coverage"] = report.coverage;
  j["non_redundancy"] = report.non_redundancy;
  j["fscore"] = report.fscore;
  j["pattern_count"] = report.pattern_count;
  j["transition_count"] = report.transition_count;
  j["cardoso"] = report.cardoso;
  if (report.cyclomatic) {
    j["cyclomatic"] = *report.cyclomatic;
  } else {
    j["cyclomatic"] = nullptr;
  }
  return j;
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ordered_json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw Error("failed to write file: " + path);
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace lpmkit
