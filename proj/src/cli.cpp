#include "ctxminer/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctxminer/compile.hpp"
#include "ctxminer/grpo.hpp"
#include "ctxminer/harness.hpp"
#include "ctxminer/jsonl.hpp"
#include "ctxminer/simenv.hpp"
#include "ctxminer/types.hpp"

namespace ctxminer::cli {

namespace {

using nlohmann::json;

// Flag combinations that cannot be dispatched at all (exit 2), as opposed
// to bad input data (exit 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WindowConfig window_config(int window, int slide) {
  WindowConfig cfg;
  cfg.window_size = window;
  cfg.slide_step = slide;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << bytes;
  if (!out) throw ValidationError("failed while writing " + path);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                           std::uint64_t config_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("CTXMINER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CTXMINER_SEED is not an integer: ") + env);
    }
  }
  return config_seed;
}

int run_compile(const std::string& input, int window, int slide,
                const std::string& out_path) {
  const WindowConfig cfg = window_config(window, slide);
  const auto trajectories = read_trajectory_file(input);
  std::ostringstream out;
  for (const auto& t : trajectories) {
    for (const auto& seq : compile_sequences(t, cfg)) {
      out << serialize_sequence(seq) << '\n';
    }
  }
  write_file(out_path, out.str());
  return 0;
}

int run_advantage(const std::string& input, int window, int slide,
                  const std::string& out_path) {
  const WindowConfig cfg = window_config(window, slide);
  const auto trajectories = read_trajectory_file(input);
  const auto groups = build_groups(trajectories);
  std::ostringstream out;
  for (const auto& group : groups) {
    for (const auto& seq : propagate(group, cfg)) {
      out << serialize_sequence(seq) << '\n';
    }
  }
  write_file(out_path, out.str());
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& csv_path,
                 const std::optional<std::uint64_t>& seed_flag) {
  ExperimentConfig config = default_experiment_config();
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ValidationError(config_path + ": " + e.what());
    }
    config = parse_experiment_config(j);
  }
  const std::uint64_t seed = resolve_seed(seed_flag, config.seed);
  const std::string csv =
      context_growth_csv(config.profiles, config.window, config.budget, seed);
  write_file(csv_path, csv);
  return 0;
}

int run_tool(const std::string& corpus_dir, ToolKind kind, const json& args) {
  const Corpus corpus = Corpus::load(corpus_dir);
  std::cout << execute_tool(corpus, kind, args).dump() << '\n';
  return 0;
}

int run_stats(const std::string& input) {
  const auto trajectories = read_trajectory_file(input);
  for (const auto& t : trajectories) {
    const CompositionStats stats = composition_stats(t, TokenizerSpec{});
    json row = composition_stats_to_json(stats);
    row["id"] = t.id;
    std::cout << row.dump() << '\n';
  }
  return 0;
}

int run_replay(const std::string& input, const std::string& corpus_dir) {
  const auto trajectories = read_trajectory_file(input);
  const Corpus corpus = Corpus::load(corpus_dir);
  for (const auto& t : trajectories) {
    const ReplayResult r = replay_agent(t, corpus);
    json row = json::object();
    row["divergence"] = r.divergence ? json(*r.divergence) : json(nullptr);
    row["id"] = t.id;
    row["verified"] = r.verified;
    std::cout << row.dump() << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("ctxminer");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Sliding-window context engine for multi-turn tool agents"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand(
      "compile", "Decompose trajectories into loss-masked training sequences");
  std::string compile_input, compile_out;
  int compile_window = 5, compile_slide = 3;
  compile->add_option("--input", compile_input, "trajectory JSONL")->required();
  compile->add_option("--window", compile_window, "window size W");
  compile->add_option("--slide", compile_slide, "slide step S");
  compile->add_option("--out", compile_out, "output sequence JSONL")->required();

  // advantage
  auto* advantage = app.add_subcommand(
      "advantage", "Judge rollout groups and emit advantaged sequences");
  std::string adv_input, adv_out;
  int adv_window = 5, adv_slide = 3;
  advantage->add_option("--input", adv_input, "grouped trajectory JSONL")->required();
  advantage->add_option("--window", adv_window, "window size W");
  advantage->add_option("--slide", adv_slide, "slide step S");
  advantage->add_option("--out", adv_out, "output sequence JSONL")->required();

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Run scripted context-growth experiments to CSV");
  std::string sim_config, sim_csv;
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--config", sim_config, "experiment config JSON");
  simulate->add_option("--csv", sim_csv, "output CSV path")->required();
  simulate->add_option("--seed", sim_seed, "filler generator seed");

  // tool
  auto* tool = app.add_subcommand("tool", "Invoke a simulated tool");
  tool->require_subcommand(1);
  std::string tool_corpus, tool_url, tool_query;
  std::vector<std::string> tool_queries;
  int tool_page = 1;
  auto* tool_search = tool->add_subcommand("search", "Ranked search");
  tool_search->add_option("--corpus", tool_corpus, "corpus directory")->required();
  tool_search->add_option("--query", tool_queries, "query (repeatable)")->required();
  auto* tool_fetch = tool->add_subcommand("fetch", "Paginated page fetch");
  tool_fetch->add_option("--corpus", tool_corpus, "corpus directory")->required();
  tool_fetch->add_option("--url", tool_url, "document url")->required();
  tool_fetch->add_option("--page", tool_page, "page number");
  auto* tool_find = tool->add_subcommand("find", "In-page search");
  tool_find->add_option("--corpus", tool_corpus, "corpus directory")->required();
  tool_find->add_option("--url", tool_url, "document url")->required();
  tool_find->add_option("--query", tool_query, "substring to locate")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Context composition statistics");
  std::string stats_input;
  stats->add_option("--input", stats_input, "trajectory JSONL")->required();

  // replay
  auto* replay = app.add_subcommand("replay", "Verify recorded tool transcripts");
  std::string replay_input, replay_corpus;
  replay->add_option("--input", replay_input, "trajectory JSONL")->required();
  replay->add_option("--corpus", replay_corpus, "corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compile) {
      return run_compile(compile_input, compile_window, compile_slide, compile_out);
    }
    if (*advantage) {
      return run_advantage(adv_input, adv_window, adv_slide, adv_out);
    }
    if (*simulate) {
      return run_simulate(sim_config, sim_csv, sim_seed);
    }
    if (*tool_search) {
      json args = json::object();
      args["queries"] = tool_queries;
      return run_tool(tool_corpus, ToolKind::web_search, args);
    }
    if (*tool_fetch) {
      json args = json::object();
      args["url"] = tool_url;
      args["page"] = tool_page;
      return run_tool(tool_corpus, ToolKind::fetch, args);
    }
    if (*tool_find) {
      json args = json::object();
      args["url"] = tool_url;
      args["query"] = tool_query;
      return run_tool(tool_corpus, ToolKind::find, args);
    }
    if (*stats) {
      return run_stats(stats_input);
    }
    if (*replay) {
      return run_replay(replay_input, replay_corpus);
    }
    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ctxminer::cli
