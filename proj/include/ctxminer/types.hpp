#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctxminer/errors.hpp"

namespace ctxminer {

enum class Role { user, assistant, tool };

enum class ToolKind { web_search, fetch, find };

std::string_view to_string(Role role);
std::string_view to_string(ToolKind kind);
Role role_from_string(std::string_view s);          // SchemaError on unknown
ToolKind tool_kind_from_string(std::string_view s); // SchemaError on unknown

// One chat message. Tool messages carry the tool that produced them;
// assistant messages that issue a call carry the call arguments.
struct Message {
  Role role = Role::user;
  std::string content;
  std::optional<ToolKind> tool_name;          // role == tool only
  std::optional<nlohmann::json> tool_args;    // role == assistant only, object

  bool operator==(const Message&) const = default;
};

Message user_message(std::string content);
Message assistant_message(std::string content,
                          std::optional<nlohmann::json> tool_args = std::nullopt);
Message tool_message(ToolKind kind, std::string content);

// A complete interaction: user query, then strictly alternating
// assistant/tool messages, ending with an assistant message. With M
// assistant messages there are exactly M-1 tool messages.
struct Trajectory {
  std::string id;
  std::string question;
  std::vector<Message> messages;
  std::optional<std::string> gold_answer;
  std::optional<int> reward;  // binary; absent means un-judged
  std::optional<std::string> group_id;

  int assistant_count() const;
  int tool_count() const;
  const Message& final_assistant() const;

  bool operator==(const Trajectory&) const = default;
};

// Throws SchemaError naming the offending message index.
void validate_trajectory(const Trajectory& t);

enum class TokenizerKind { byte_quarter, pluggable };

// byte_quarter counts ceil(bytes/4): deterministic, platform-independent
// proxy for subword tokenizers. pluggable resolves the identifier against
// the registry in tokenizer.hpp.
struct TokenizerSpec {
  TokenizerKind kind = TokenizerKind::byte_quarter;
  std::string identifier = "byte_quarter";

  bool operator==(const TokenizerSpec&) const = default;
};

inline constexpr std::string_view kDefaultPlaceholder =
    "[Previous tool output skipped. Re-run tool if needed.]";

struct WindowConfig {
  int window_size = 5;  // W: tool responses kept verbatim
  int slide_step = 3;   // S: additional tools hidden per slide
  std::string placeholder = std::string(kDefaultPlaceholder);
  TokenizerSpec tokenizer;
  std::int64_t max_trajectory_tokens = 40000;
  int max_turns = 60;  // tool-call limit; evaluation runs use 100

  void validate() const;  // ConfigError unless 1 <= S <= W, placeholder set
};

enum class LimitVerdict { ok, over_tokens, over_turns };

std::string_view to_string(LimitVerdict v);

// over_turns wins when both limits are exceeded; both limits are inclusive.
LimitVerdict check_limits(const Trajectory& t, const WindowConfig& cfg);

}  // namespace ctxminer
