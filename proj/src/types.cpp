#include "ctxminer/types.hpp"

#include <string>

#include "ctxminer/tokenizer.hpp"

namespace ctxminer {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    case Role::tool: return "tool";
  }
  return "user";
}

std::string_view to_string(ToolKind kind) {
  switch (kind) {
    case ToolKind::web_search: return "web_search";
    case ToolKind::fetch: return "fetch";
    case ToolKind::find: return "find";
  }
  return "web_search";
}

Role role_from_string(std::string_view s) {
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  if (s == "tool") return Role::tool;
  throw SchemaError("unknown role \"" + std::string(s) + "\"");
}

ToolKind tool_kind_from_string(std::string_view s) {
  if (s == "web_search") return ToolKind::web_search;
  if (s == "fetch") return ToolKind::fetch;
  if (s == "find") return ToolKind::find;
  throw SchemaError("unknown tool_name \"" + std::string(s) + "\"");
}

Message user_message(std::string content) {
  Message m;
  m.role = Role::user;
  m.content = std::move(content);
  return m;
}

Message assistant_message(std::string content,
                          std::optional<nlohmann::json> tool_args) {
  Message m;
  m.role = Role::assistant;
  m.content = std::move(content);
  m.tool_args = std::move(tool_args);
  return m;
}

Message tool_message(ToolKind kind, std::string content) {
  Message m;
  m.role = Role::tool;
  m.content = std::move(content);
  m.tool_name = kind;
  return m;
}

int Trajectory::assistant_count() const {
  int n = 0;
  for (const auto& m : messages) n += m.role == Role::assistant ? 1 : 0;
  return n;
}

int Trajectory::tool_count() const {
  int n = 0;
  for (const auto& m : messages) n += m.role == Role::tool ? 1 : 0;
  return n;
}

const Message& Trajectory::final_assistant() const {
  if (messages.empty() || messages.back().role != Role::assistant) {
    throw SchemaError("trajectory \"" + id + "\" has no final assistant message");
  }
  return messages.back();
}

namespace {

[[noreturn]] void schema_fail(const Trajectory& t, std::size_t index,
                              const std::string& what) {
  throw SchemaError("trajectory \"" + t.id + "\" message " +
                    std::to_string(index) + ": " + what);
}

void validate_message(const Trajectory& t, std::size_t index, const Message& m) {
  switch (m.role) {
    case Role::user:
      if (m.tool_name || m.tool_args) {
        schema_fail(t, index, "user messages carry no tool fields");
      }
      if (m.content.empty()) schema_fail(t, index, "user content is empty");
      break;
    case Role::assistant:
      if (m.tool_name) {
        schema_fail(t, index, "tool_name is only valid on tool messages");
      }
      if (m.tool_args && !m.tool_args->is_object()) {
        schema_fail(t, index, "tool_args must be a JSON object");
      }
      break;
    case Role::tool:
      if (!m.tool_name) schema_fail(t, index, "tool message lacks tool_name");
      if (m.tool_args) {
        schema_fail(t, index, "tool_args is only valid on assistant messages");
      }
      if (m.content.empty()) schema_fail(t, index, "tool content is empty");
      break;
  }
}

}  // namespace

void validate_trajectory(const Trajectory& t) {
  if (t.messages.empty()) {
    throw SchemaError("trajectory \"" + t.id + "\" has no messages");
  }
  if (t.messages.front().role != Role::user) {
    schema_fail(t, 0, "first message must have role user");
  }
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const Message& m = t.messages[i];
    validate_message(t, i, m);
    if (i == 0) continue;
    // After the query: assistant at odd offsets, tool at even offsets.
    const Role expected = (i % 2 == 1) ? Role::assistant : Role::tool;
    if (m.role != expected) {
      schema_fail(t, i,
                  std::string("expected role ") + std::string(to_string(expected)) +
                      ", got " + std::string(to_string(m.role)));
    }
  }
  if (t.messages.back().role != Role::assistant) {
    schema_fail(t, t.messages.size() - 1, "last message must be an assistant response");
  }
  if (t.reward && *t.reward != 0 && *t.reward != 1) {
    throw SchemaError("trajectory \"" + t.id + "\": reward must be 0 or 1");
  }
}

void WindowConfig::validate() const {
  if (slide_step < 1 || window_size < slide_step) {
    throw ConfigError("window parameters must satisfy 1 <= S <= W (got W=" +
                      std::to_string(window_size) + ", S=" +
                      std::to_string(slide_step) + ")");
  }
  if (placeholder.empty()) {
    throw ConfigError("placeholder must be non-empty");
  }
}

std::string_view to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::ok: return "ok";
    case LimitVerdict::over_tokens: return "over_tokens";
    case LimitVerdict::over_turns: return "over_turns";
  }
  return "ok";
}

LimitVerdict check_limits(const Trajectory& t, const WindowConfig& cfg) {
  if (t.tool_count() > cfg.max_turns) return LimitVerdict::over_turns;
  std::int64_t total = 0;
  for (const auto& m : t.messages) total += count_tokens(m.content, cfg.tokenizer);
  if (total > cfg.max_trajectory_tokens) return LimitVerdict::over_tokens;
  return LimitVerdict::ok;
}

}  // namespace ctxminer
