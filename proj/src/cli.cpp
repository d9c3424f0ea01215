#include "lpmkit/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lpmkit/errors.hpp"
#include "lpmkit/json_io.hpp"
#include "lpmkit/lpm_mine.hpp"
#include "lpmkit/metrics.hpp"
#include "lpmkit/select.hpp"
#include "lpmkit/spm.hpp"

namespace lpmkit::cli {

namespace {

/// The running-example database bundled with the tool.
constexpr const char* kDemoFixture =
    "E B A B A F A C B D\n"
    "E B A F E B A B A F\n"
    "A B C D A C D B E F\n"
    "A C D B E E B A F\n";

/// Behavioral patterns used by the demo: a send-and-join fragment, a retry
/// loop, and a choice fragment over the fixture's activities.
constexpr const char* kDemoTrees[] = {
    "→(A,∧(B,→(C,D)))",
    "→(E,↻(→(B,A)),F)",
    "→(D,×(A,→(B,E)))",
};

SequenceDatabase load_db(const std::string& path, const std::string& format) {
  return load(path, format == "csv" ? DbFormat::csv : DbFormat::lines);
}

std::set<TreeOp> parse_operators(const std::string& csv) {
  std::set<TreeOp> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item == "seq") {
      out.insert(TreeOp::seq);
    } else if (item == "xor") {
      out.insert(TreeOp::alt);
    } else if (item == "and") {
      out.insert(TreeOp::par);
    } else if (item == "loop") {
      out.insert(TreeOp::loop);
    } else if (!item.empty()) {
      throw ArgumentError("unknown operator '" + item +
                          "' (expected seq, xor, and, loop)");
    }
  }
  if (out.empty()) throw ArgumentError("--operators must enable at least one operator");
  return out;
}

std::string format_ratio(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

std::string summary_line(const LpmSetReport& report) {
  std::ostringstream out;
  out << "coverage=" << format_ratio(report.coverage)
      << " non_redundancy=" << format_ratio(report.non_redundancy)
      << " fscore=" << format_ratio(report.fscore) << " lpms=" << report.pattern_count;
  return out.str();
}

struct MineArgs {
  std::string input;
  std::string format = "lines";
  int min_sup = 3;
  int exp_max = 4;
  std::string operators = "seq,xor,and,loop";
  int top_k = 250;
  std::size_t max_candidates = 250000;
  std::string out = "lpms.json";
};

int run_mine(const MineArgs& args, std::size_t state_budget) {
  const SequenceDatabase db = load_db(args.input, args.format);
  MineConfig cfg;
  cfg.min_sup = args.min_sup;
  cfg.exp_max = args.exp_max;
  cfg.operators = parse_operators(args.operators);
  cfg.max_candidates_evaluated = args.max_candidates;
  cfg.state_budget = state_budget;
  MineResult result = mine(db, cfg);
  const std::size_t total = result.lpms.size();
  if (args.top_k >= 0 && result.lpms.size() > static_cast<std::size_t>(args.top_k)) {
    result.lpms.resize(static_cast<std::size_t>(args.top_k));
  }
  write_text_file(args.out, dump_json(lpms_to_json(result.lpms)));
  std::cout << "mined " << total << " models from " << result.candidates_evaluated
            << " candidates" << (result.truncated ? " (budget exhausted)" : "")
            << "; wrote " << result.lpms.size() << " to " << args.out << "\n";
  return 0;
}

struct SpmArgs {
  std::string input;
  std::string format = "lines";
  int min_sup = 3;
  std::string out = "patterns.json";
};

int run_spm(const SpmArgs& args) {
  const SequenceDatabase db = load_db(args.input, args.format);
  const std::vector<SequentialPattern> patterns = mine_clogsgrow(db, args.min_sup);
  write_text_file(args.out, dump_json(patterns_to_json(patterns)));
  std::cout << "mined " << patterns.size() << " closed patterns; wrote " << args.out
            << "\n";
  return 0;
}

struct SelectArgs {
  std::string method;
  std::string input;
  std::string format = "lines";
  std::string lpms_path;
  std::string patterns_path;
  bool remine_flag = false;
  double min_dist = 0.5;
  double diversity = 0.5;
  std::string out = "selected.json";
};

int run_select(const SelectArgs& args, std::size_t state_budget) {
  const SequenceDatabase db = load_db(args.input, args.format);
  LpmSet result;
  if (args.method == "clogsgrow-merge") {
    if (args.patterns_path.empty()) {
      throw ArgumentError("--patterns is required for method clogsgrow-merge");
    }
    const auto patterns = patterns_from_json(load_json_file(args.patterns_path));
    result = merge_clogsgrow(db, patterns, args.min_dist, discover_simple);
  } else {
    if (args.lpms_path.empty()) {
      throw ArgumentError("--lpms is required for method " + args.method);
    }
    const LpmSet set(lpms_from_json(load_json_file(args.lpms_path)));
    if (args.method == "align") {
      result = alignment_based_selection(db, set, state_budget);
    } else if (args.method == "greedy") {
      result = greedy_selection(db, set, state_budget);
    } else if (args.method == "greedy-fscore") {
      result = greedy_fscore_selection(db, set, state_budget);
    } else {
      result = heuristic_diversity_selection(set, args.diversity);
    }
  }
  if (args.remine_flag) {
    result = remine(db, result, discover_simple, state_budget);
  }
  write_text_file(args.out, dump_json(lpms_to_json(result.lpms(), true)));
  const LpmSetReport report = result.evaluate_against(db, state_budget);
  std::cout << summary_line(report) << "; wrote " << args.out << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string input;
  std::string format = "lines";
  std::string lpms_path;
  std::string out = "report.json";
};

int run_evaluate(const EvaluateArgs& args, std::size_t state_budget) {
  const SequenceDatabase db = load_db(args.input, args.format);
  const LpmSet set(lpms_from_json(load_json_file(args.lpms_path)));
  const LpmSetReport report = set.evaluate_against(db, state_budget);
  write_text_file(args.out, dump_json(report_to_json(report)));
  std::cout << summary_line(report) << "; wrote " << args.out << "\n";
  return 0;
}

struct ExportArgs {
  std::string lpms_path;
  int index = 0;
  bool global = false;
  std::string dot_path;
  std::string pnml_path;
};

int run_export(const ExportArgs& args) {
  if (args.dot_path.empty() && args.pnml_path.empty()) {
    throw ArgumentError("export requires --dot and/or --pnml");
  }
  const std::vector<Lpm> lpms = lpms_from_json(load_json_file(args.lpms_path));
  if (lpms.empty()) throw ArgumentError("model file contains no models");

  AcceptingPetriNet net;
  if (args.global) {
    std::vector<AcceptingPetriNet> nets;
    for (const Lpm& lpm : lpms) nets.push_back(lpm.net);
    net = merge_global(nets);
  } else {
    if (args.index < 0 || static_cast<std::size_t>(args.index) >= lpms.size()) {
      throw RangeError("--index " + std::to_string(args.index) +
                       " is out of range for " + std::to_string(lpms.size()) +
                       " models");
    }
    net = lpms[static_cast<std::size_t>(args.index)].net;
  }
  if (!args.dot_path.empty()) {
    write_text_file(args.dot_path, to_dot(net));
    std::cout << "wrote " << args.dot_path << "\n";
  }
  if (!args.pnml_path.empty()) {
    write_text_file(args.pnml_path, to_pnml(net));
    std::cout << "wrote " << args.pnml_path << "\n";
  }
  return 0;
}

int run_demo(const std::string& out_dir, std::size_t state_budget) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  const SequenceDatabase db = parse_lines(kDemoFixture, "demo");
  std::cout << "demo database: " << db.size() << " sequences, " << db.total_events()
            << " events, alphabet of " << db.alphabet().size() << "\n";

  const auto patterns = mine_clogsgrow(db, 3);
  write_text_file(path("patterns.json"), dump_json(patterns_to_json(patterns)));
  std::cout << "closed patterns (min support 3): " << patterns.size() << "\n";

  MineConfig cfg;
  cfg.min_sup = 3;
  cfg.exp_max = 3;
  cfg.state_budget = state_budget;
  const MineResult mined = mine(db, cfg);
  write_text_file(path("lpms.json"), dump_json(lpms_to_json(mined.lpms)));
  std::cout << "mined models (3 expansions): " << mined.lpms.size() << " from "
            << mined.candidates_evaluated << " candidates\n";

  std::vector<Lpm> trio;
  for (const char* text : kDemoTrees) {
    trio.push_back(evaluate_tree(db, parse_tree(text, "demo"), state_budget));
    const Lpm& lpm = trio.back();
    std::cout << "model " << to_text(*lpm.tree) << ": support " << lpm.support
              << ", instances " << lpm.instance_count << "\n";
  }

  const LpmSet selected = alignment_based_selection(db, LpmSet(trio), state_budget);
  write_text_file(path("selected.json"), dump_json(lpms_to_json(selected.lpms(), true)));

  const Segmentation seg = segment_set(db, selected.nets(), state_budget);
  write_text_file(path("segmentation.json"), dump_json(segmentation_to_json(seg)));

  const LpmSetReport report = selected.evaluate_against(db, state_budget);
  write_text_file(path("report.json"), dump_json(report_to_json(report)));
  std::cout << "selected " << selected.size() << " of " << trio.size()
            << " models: coverage " << explained_events(seg).size() << "/"
            << db.total_events() << ", " << summary_line(report) << "\n";

  write_text_file(path("global.dot"), to_dot(selected.global()));
  write_text_file(path("global.pnml"), to_pnml(selected.global()));
  std::cout << "wrote artifacts to " << out_dir << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"lpmkit: local process model mining over sequence databases"};
  app.require_subcommand(1);

  int threads = 0;
  std::size_t state_budget = kDefaultStateBudget;
  app.add_option("--threads", threads, "worker threads (0 = all hardware threads)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--state-budget", state_budget,
                 "state cap for alignment and reachability searches");

  MineArgs mine_args;
  CLI::App* mine_cmd = app.add_subcommand("mine", "mine local process models");
  mine_cmd->add_option("--input", mine_args.input, "sequence database file")->required();
  mine_cmd->add_option("--format", mine_args.format, "input format")
      ->check(CLI::IsMember({"lines", "csv"}));
  mine_cmd->add_option("--min-sup", mine_args.min_sup, "minimum explained events");
  mine_cmd->add_option("--exp-max", mine_args.exp_max, "maximum expansions");
  mine_cmd->add_option("--operators", mine_args.operators,
                       "enabled operators (comma-separated: seq,xor,and,loop)");
  mine_cmd->add_option("--top-k", mine_args.top_k, "models to keep in the output");
  mine_cmd->add_option("--max-candidates", mine_args.max_candidates,
                       "candidate evaluation budget");
  mine_cmd->add_option("--out", mine_args.out, "output JSON path");

  SpmArgs spm_args;
  CLI::App* spm_cmd = app.add_subcommand("spm", "mine closed sequential patterns");
  spm_cmd->add_option("--input", spm_args.input, "sequence database file")->required();
  spm_cmd->add_option("--format", spm_args.format, "input format")
      ->check(CLI::IsMember({"lines", "csv"}));
  spm_cmd->add_option("--min-sup", spm_args.min_sup, "minimum instance count");
  spm_cmd->add_option("--out", spm_args.out, "output JSON path");

  SelectArgs select_args;
  CLI::App* select_cmd = app.add_subcommand("select", "post-process a model set");
  select_cmd->add_option("--method", select_args.method, "selection method")
      ->required()
      ->check(CLI::IsMember(
          {"align", "greedy", "greedy-fscore", "heuristic", "clogsgrow-merge"}));
  select_cmd->add_option("--input", select_args.input, "sequence database file")
      ->required();
  select_cmd->add_option("--format", select_args.format, "input format")
      ->check(CLI::IsMember({"lines", "csv"}));
  select_cmd->add_option("--lpms", select_args.lpms_path, "model JSON file");
  select_cmd->add_option("--patterns", select_args.patterns_path,
                         "sequential-pattern JSON file");
  select_cmd->add_flag("--remine", select_args.remine_flag,
                       "rediscover each kept model from its own segments");
  select_cmd->add_option("--min-dist", select_args.min_dist,
                         "cluster-joining distance for clogsgrow-merge");
  select_cmd->add_option("--diversity", select_args.diversity,
                         "alphabet diversity threshold for heuristic selection");
  select_cmd->add_option("--out", select_args.out, "output JSON path");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score a model set");
  evaluate_cmd->add_option("--input", evaluate_args.input, "sequence database file")
      ->required();
  evaluate_cmd->add_option("--format", evaluate_args.format, "input format")
      ->check(CLI::IsMember({"lines", "csv"}));
  evaluate_cmd->add_option("--lpms", evaluate_args.lpms_path, "model JSON file")
      ->required();
  evaluate_cmd->add_option("--out", evaluate_args.out, "output JSON path");

  ExportArgs export_args;
  CLI::App* export_cmd = app.add_subcommand("export", "render nets to DOT / PNML");
  export_cmd->add_option("--lpms", export_args.lpms_path, "model JSON file")->required();
  export_cmd->add_option("--index", export_args.index, "model index to export");
  export_cmd->add_flag("--global", export_args.global,
                       "export the merged global model instead of one member");
  export_cmd->add_option("--dot", export_args.dot_path, "DOT output path");
  export_cmd->add_option("--pnml", export_args.pnml_path, "PNML output path");

  std::string demo_dir = "demo_out";
  CLI::App* demo_cmd =
      app.add_subcommand("demo", "run the bundled fixture end to end");
  demo_cmd->add_option("--out-dir", demo_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    parallel::set_threads(threads);
    if (*mine_cmd) return run_mine(mine_args, state_budget);
    if (*spm_cmd) return run_spm(spm_args);
    if (*select_cmd) return run_select(select_args, state_budget);
    if (*evaluate_cmd) return run_evaluate(evaluate_args, state_budget);
    if (*export_cmd) return run_export(export_args);
    if (*demo_cmd) return run_demo(demo_dir, state_budget);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("lpmkit");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lpmkit::cli
