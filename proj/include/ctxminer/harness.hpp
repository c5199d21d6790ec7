#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctxminer/simenv.hpp"
#include "ctxminer/types.hpp"

namespace ctxminer {

enum class RunMode { windowed, vanilla };
enum class StopReason { target_reached, budget_exhausted };

std::string_view to_string(RunMode m);
RunMode run_mode_from_string(std::string_view s);  // ValidationError
std::string_view to_string(StopReason r);

// Message sizes for a scripted agent loop. The 1200/150 default mirrors
// the observed tool:assistant length ratio band.
struct PolicyProfile {
  std::int64_t assistant_tokens = 150;
  std::int64_t tool_tokens = 1200;
  int n_turns_target = 100;
  RunMode mode = RunMode::windowed;
};

// Context composition after one committed turn. The accounting identity
// total = question + assistant_cum + visible_tool + placeholder holds
// exactly under the default tokenizer.
struct TurnRecord {
  int turn = 0;
  std::int64_t total_tokens = 0;
  std::int64_t assistant_tokens_cum = 0;
  std::int64_t visible_tool_tokens = 0;
  std::int64_t placeholder_tokens = 0;
};

struct ScriptedRun {
  Trajectory trajectory;
  std::vector<TurnRecord> records;
  int turns_completed = 0;
  StopReason stop_reason = StopReason::target_reached;
};

// Scripted question size, fixed so capacity oracles stay closed-form.
inline constexpr std::int64_t kScriptedQuestionTokens = 25;

// Drives one scripted loop: each turn appends an assistant message and a
// tool response of the profile's exact sizes (seeded deterministic filler),
// sliding in windowed mode. A turn either fully fits in the budget or the
// run stops before it. The returned trajectory ends with an empty terminal
// assistant stub so it validates.
ScriptedRun run_scripted(const PolicyProfile& profile, const WindowConfig& cfg,
                         std::int64_t budget, std::uint64_t seed = 0);

inline constexpr std::string_view kExperimentCsvHeader =
    "mode,turn,total_tokens,assistant_tokens_cum,visible_tool_tokens,placeholder_tokens";

// One CSV row per (profile, turn), header exactly kExperimentCsvHeader.
std::string context_growth_csv(const std::vector<PolicyProfile>& profiles,
                               const WindowConfig& cfg, std::int64_t budget,
                               std::uint64_t seed = 0);

struct TurnComposition {
  int turn = 0;
  std::int64_t assistant_tokens = 0;
  std::int64_t tool_tokens = 0;  // 0 for the final answer turn
};

struct CompositionStats {
  double tool_to_assistant_ratio = 0.0;
  std::vector<TurnComposition> per_turn;
};

// ratio = total tool tokens / total assistant tokens over the full,
// un-slid trajectory. ValidationError when assistant tokens total zero.
CompositionStats composition_stats(const Trajectory& t, const TokenizerSpec& tok);

nlohmann::json composition_stats_to_json(const CompositionStats& s);

struct ReplayResult {
  bool verified = true;
  std::optional<int> divergence;  // first divergent turn (1-based tools)
};

// Re-executes every recorded tool call against the corpus and compares the
// canonical response to the recorded tool content. ValidationError (with
// the turn index) when a call cannot be re-executed at all.
ReplayResult replay_agent(const Trajectory& t, const Corpus& env);

// Experiment config file: {"profiles":[...], "window":{"W":..,"S":..},
// "budget":.., "seed":..}.
struct ExperimentConfig {
  std::vector<PolicyProfile> profiles;
  WindowConfig window;
  std::int64_t budget = 32768;
  std::uint64_t seed = 0;
};

ExperimentConfig default_experiment_config();
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

}  // namespace ctxminer
