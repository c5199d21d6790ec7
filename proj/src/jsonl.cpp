#include "ctxminer/jsonl.hpp"

#include <fstream>
#include <sstream>

namespace ctxminer {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string(where) + " lacks required key \"" + key + "\"");
  }
  return *it;
}

std::string require_string(const json& j, const char* key, const char* where) {
  const json& v = require_field(j, key, where);
  if (!v.is_string()) {
    throw SchemaError(std::string(where) + " key \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

// Accepts integer or float spellings of the binary reward.
int binary_reward(const json& v, const char* where) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == 0.0) return 0;
    if (d == 1.0) return 1;
  }
  throw SchemaError(std::string(where) + ": reward must be 0 or 1");
}

}  // namespace

json message_to_json(const Message& m) {
  json j = json::object();
  j["role"] = std::string(to_string(m.role));
  j["content"] = m.content;
  if (m.tool_name) j["tool_name"] = std::string(to_string(*m.tool_name));
  if (m.tool_args) j["tool_args"] = *m.tool_args;
  return j;
}

Message message_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("message must be a JSON object");
  Message m;
  m.role = role_from_string(require_string(j, "role", "message"));
  const json& content = require_field(j, "content", "message");
  if (!content.is_string()) throw SchemaError("message content must be a string");
  m.content = content.get<std::string>();
  if (auto it = j.find("tool_name"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError("tool_name must be a string");
    m.tool_name = tool_kind_from_string(it->get<std::string>());
  }
  if (auto it = j.find("tool_args"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw SchemaError("tool_args must be a JSON object");
    m.tool_args = *it;
  }
  return m;
}

json trajectory_to_json(const Trajectory& t) {
  json j = json::object();
  j["id"] = t.id;
  j["question"] = t.question;
  json msgs = json::array();
  for (const auto& m : t.messages) msgs.push_back(message_to_json(m));
  j["messages"] = std::move(msgs);
  if (t.gold_answer) j["gold_answer"] = *t.gold_answer;
  if (t.reward) j["reward"] = *t.reward;
  if (t.group_id) j["group_id"] = *t.group_id;
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("trajectory record must be a JSON object");
  Trajectory t;
  t.id = require_string(j, "id", "trajectory");
  t.question = require_string(j, "question", "trajectory");
  const json& msgs = require_field(j, "messages", "trajectory");
  if (!msgs.is_array()) throw SchemaError("trajectory messages must be an array");
  t.messages.reserve(msgs.size());
  for (const auto& m : msgs) t.messages.push_back(message_from_json(m));
  if (auto it = j.find("gold_answer"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError("gold_answer must be a string");
    t.gold_answer = it->get<std::string>();
  }
  if (auto it = j.find("reward"); it != j.end() && !it->is_null()) {
    t.reward = binary_reward(*it, "trajectory");
  }
  if (auto it = j.find("group_id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError("group_id must be a string");
    t.group_id = it->get<std::string>();
  }
  validate_trajectory(t);
  return t;
}

Trajectory parse_trajectory(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return trajectory_from_json(j);
}

std::string serialize_trajectory(const Trajectory& t) {
  validate_trajectory(t);
  return trajectory_to_json(t).dump();
}

std::vector<Trajectory> read_trajectory_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<Trajectory> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse_trajectory(line));
    } catch (const Error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

void write_trajectory_file(const std::filesystem::path& path,
                           const std::vector<Trajectory>& trajectories) {
  std::ostringstream buf;
  for (const auto& t : trajectories) buf << serialize_trajectory(t) << '\n';
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << buf.str();
}

}  // namespace ctxminer
