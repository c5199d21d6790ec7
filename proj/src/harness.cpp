#include "ctxminer/harness.hpp"

#include <sstream>

#include "ctxminer/filler.hpp"
#include "ctxminer/tokenizer.hpp"
#include "ctxminer/window.hpp"

namespace ctxminer {

namespace {

using nlohmann::json;

}  // namespace

std::string_view to_string(RunMode m) {
  return m == RunMode::windowed ? "windowed" : "vanilla";
}

RunMode run_mode_from_string(std::string_view s) {
  if (s == "windowed") return RunMode::windowed;
  if (s == "vanilla") return RunMode::vanilla;
  throw ValidationError("unknown run mode \"" + std::string(s) + "\"");
}

std::string_view to_string(StopReason r) {
  return r == StopReason::target_reached ? "target_reached" : "budget_exhausted";
}

ScriptedRun run_scripted(const PolicyProfile& profile, const WindowConfig& cfg,
                         std::int64_t budget, std::uint64_t seed) {
  cfg.validate();
  if (profile.assistant_tokens < 1 || profile.tool_tokens < 1) {
    throw ValidationError("profile message sizes must be positive");
  }
  FillerGen gen(seed);
  const std::string question = gen.exact_tokens(kScriptedQuestionTokens);
  const std::int64_t question_tokens = count_tokens(question, cfg.tokenizer);
  if (budget <= question_tokens) {
    throw ValidationError("budget must exceed the question size");
  }
  const std::int64_t placeholder_unit = count_tokens(cfg.placeholder, cfg.tokenizer);

  LiveWindow window(cfg);
  window.append(user_message(question));

  ScriptedRun run;
  run.stop_reason = StopReason::target_reached;

  std::int64_t assistant_cum = 0;
  int turn = 0;
  while (turn < profile.n_turns_target) {
    // Pre-turn budget check: the whole (assistant, tool) pair plus any
    // slide it triggers either fits or the run stops here.
    const int next_tools = window.state().tool_count + 1;
    const int hidden =
        profile.mode == RunMode::windowed
            ? hidden_tool_count(next_tools, cfg.window_size, cfg.slide_step)
            : 0;
    const std::int64_t visible_tool_tokens =
        static_cast<std::int64_t>(next_tools - hidden) * profile.tool_tokens;
    const std::int64_t placeholder_tokens = hidden * placeholder_unit;
    const std::int64_t total = question_tokens + assistant_cum +
                               profile.assistant_tokens + visible_tool_tokens +
                               placeholder_tokens;
    if (total > budget) {
      run.stop_reason = StopReason::budget_exhausted;
      break;
    }

    window.append(assistant_message(gen.exact_tokens(profile.assistant_tokens)));
    window.append(tool_message(ToolKind::web_search,
                               gen.exact_tokens(profile.tool_tokens)));
    assistant_cum += profile.assistant_tokens;
    ++turn;

    run.records.push_back({turn, total, assistant_cum, visible_tool_tokens,
                           placeholder_tokens});
  }
  run.turns_completed = turn;

  Trajectory& t = run.trajectory;
  t.id = std::string(to_string(profile.mode)) + "-scripted-" + std::to_string(seed);
  t.question = question;
  t.messages.assign(window.log().begin(), window.log().end());
  t.messages.push_back(assistant_message(""));  // empty terminal stub
  return run;
}

std::string context_growth_csv(const std::vector<PolicyProfile>& profiles,
                               const WindowConfig& cfg, std::int64_t budget,
                               std::uint64_t seed) {
  if (profiles.empty()) {
    throw ValidationError("context growth experiment needs at least one profile");
  }
  std::ostringstream csv;
  csv << kExperimentCsvHeader << '\n';
  for (const auto& profile : profiles) {
    const ScriptedRun run = run_scripted(profile, cfg, budget, seed);
    for (const auto& r : run.records) {
      csv << to_string(profile.mode) << ',' << r.turn << ',' << r.total_tokens
          << ',' << r.assistant_tokens_cum << ',' << r.visible_tool_tokens
          << ',' << r.placeholder_tokens << '\n';
    }
  }
  return csv.str();
}

CompositionStats composition_stats(const Trajectory& t, const TokenizerSpec& tok) {
  validate_trajectory(t);
  CompositionStats stats;
  std::int64_t assistant_total = 0;
  std::int64_t tool_total = 0;
  int turn = 0;
  for (std::size_t i = 1; i < t.messages.size(); i += 2) {
    ++turn;
    TurnComposition row;
    row.turn = turn;
    row.assistant_tokens = count_tokens(t.messages[i].content, tok);
    if (i + 1 < t.messages.size()) {
      row.tool_tokens = count_tokens(t.messages[i + 1].content, tok);
    }
    assistant_total += row.assistant_tokens;
    tool_total += row.tool_tokens;
    stats.per_turn.push_back(row);
  }
  if (assistant_total == 0) {
    throw ValidationError("trajectory \"" + t.id +
                          "\" has zero assistant tokens; ratio undefined");
  }
  stats.tool_to_assistant_ratio =
      static_cast<double>(tool_total) / static_cast<double>(assistant_total);
  return stats;
}

json composition_stats_to_json(const CompositionStats& s) {
  json rows = json::array();
  for (const auto& r : s.per_turn) {
    json row = json::object();
    row["assistant_tokens"] = r.assistant_tokens;
    row["tool_tokens"] = r.tool_tokens;
    row["turn"] = r.turn;
    rows.push_back(std::move(row));
  }
  json out = json::object();
  out["per_turn"] = std::move(rows);
  out["tool_to_assistant_ratio"] = s.tool_to_assistant_ratio;
  return out;
}

ReplayResult replay_agent(const Trajectory& t, const Corpus& env) {
  validate_trajectory(t);
  ReplayResult result;
  int turn = 0;
  for (std::size_t i = 2; i < t.messages.size(); i += 2) {
    const Message& call = t.messages[i - 1];
    const Message& recorded = t.messages[i];
    ++turn;
    if (!call.tool_args) {
      throw ValidationError("turn " + std::to_string(turn) +
                            ": assistant message has no tool_args to replay");
    }
    json response;
    try {
      response = execute_tool(env, *recorded.tool_name, *call.tool_args);
    } catch (const Error& e) {
      throw ValidationError("turn " + std::to_string(turn) + ": " + e.what());
    }
    if (response.dump() != recorded.content) {
      result.verified = false;
      result.divergence = turn;
      return result;
    }
  }
  return result;
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  PolicyProfile windowed;
  PolicyProfile vanilla;
  vanilla.mode = RunMode::vanilla;
  cfg.profiles = {windowed, vanilla};
  return cfg;
}

ExperimentConfig parse_experiment_config(const json& j) {
  if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
  ExperimentConfig cfg = default_experiment_config();
  if (auto it = j.find("profiles"); it != j.end()) {
    if (!it->is_array() || it->empty()) {
      throw ValidationError("config profiles must be a non-empty array");
    }
    cfg.profiles.clear();
    for (const auto& p : *it) {
      if (!p.is_object()) throw ValidationError("profile must be a JSON object");
      PolicyProfile profile;
      if (auto f = p.find("assistant_tokens"); f != p.end()) {
        profile.assistant_tokens = f->get<std::int64_t>();
      }
      if (auto f = p.find("tool_tokens"); f != p.end()) {
        profile.tool_tokens = f->get<std::int64_t>();
      }
      if (auto f = p.find("n_turns_target"); f != p.end()) {
        profile.n_turns_target = f->get<int>();
      }
      if (auto f = p.find("mode"); f != p.end()) {
        profile.mode = run_mode_from_string(f->get<std::string>());
      }
      cfg.profiles.push_back(profile);
    }
  }
  if (auto it = j.find("window"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("config window must be a JSON object");
    if (auto f = it->find("W"); f != it->end()) cfg.window.window_size = f->get<int>();
    if (auto f = it->find("S"); f != it->end()) cfg.window.slide_step = f->get<int>();
  }
  if (auto it = j.find("budget"); it != j.end()) cfg.budget = it->get<std::int64_t>();
  if (auto it = j.find("seed"); it != j.end()) cfg.seed = it->get<std::uint64_t>();
  cfg.window.validate();
  return cfg;
}

}  // namespace ctxminer
