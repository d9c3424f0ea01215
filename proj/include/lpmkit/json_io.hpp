#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lpmkit/align.hpp"
#include "lpmkit/lpm_mine.hpp"
#include "lpmkit/metrics.hpp"
#include "lpmkit/petri.hpp"
#include "lpmkit/spm.hpp"

namespace lpmkit {

using ordered_json = nlohmann::ordered_json;

/// Net serialization: {places, transitions: [{id,label,pre,post}],
/// initial_marking, final_marking} with markings as per-place token counts.
ordered_json net_to_json(const AcceptingPetriNet& apn);
AcceptingPetriNet net_from_json(const ordered_json& j);

/// Model serialization: {tree, support, instance_count, confidence,
/// activities}, plus the compiled "net" object when `include_net` is set
/// (required for models that carry no tree).
ordered_json lpm_to_json(const Lpm& lpm, bool include_net = false);
ordered_json lpms_to_json(const std::vector<Lpm>& lpms, bool include_net = false);
std::vector<Lpm> lpms_from_json(const ordered_json& j);

/// Pattern serialization: {pattern, support, instances: [[{seq,pos},...],...]}.
ordered_json patterns_to_json(const std::vector<SequentialPattern>& patterns);
std::vector<SequentialPattern> patterns_from_json(const ordered_json& j);

/// Per sequence, a list of {type: "gamma"|"lambda", lpm: index|null,
/// events: [positions]}.
ordered_json segmentation_to_json(const Segmentation& seg);

ordered_json report_to_json(const LpmSetReport& report);

/// Reads and parses a JSON file; throws ParseError on malformed content and
/// Error when the file cannot be read.
ordered_json load_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

/// Canonical textual form used for all JSON artifacts (2-space indent,
/// trailing newline) so identical runs produce identical bytes.
std::string dump_json(const ordered_json& j);

}  // namespace lpmkit
