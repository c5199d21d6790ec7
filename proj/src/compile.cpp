#include "ctxminer/compile.hpp"

#include <span>

#include "ctxminer/jsonl.hpp"
#include "ctxminer/window.hpp"

namespace ctxminer {

int sequence_count(int tool_count, int window_size, int slide_step) {
  if (tool_count <= window_size) return 1;
  // Ceiling so trailing assistants after a final partial slide get their
  // own correctly-rendered sequence.
  return (tool_count - window_size + slide_step - 1) / slide_step + 1;
}

int message_mask(int seq_index, int assistant_index, int window_size,
                 int slide_step) {
  return assistant_state(assistant_index, window_size, slide_step) == seq_index
             ? 1
             : 0;
}

std::vector<TrainingSequence> compile_sequences(const Trajectory& t,
                                                const WindowConfig& cfg) {
  validate_trajectory(t);
  cfg.validate();

  const int tool_count = t.tool_count();
  const int assistant_total = t.assistant_count();
  const int k_total = sequence_count(tool_count, cfg.window_size, cfg.slide_step);

  // Last assistant trained in state k; the final state absorbs the rest.
  auto last_trained = [&](int k) {
    if (k == k_total) return assistant_total;
    return cfg.window_size + (k - 1) * cfg.slide_step + 1;
  };

  std::vector<TrainingSequence> out;
  out.reserve(static_cast<std::size_t>(k_total));
  for (int k = 1; k <= k_total; ++k) {
    // Prefix through the last state-k assistant: 2*i messages cover the
    // user query, assistants a_1..a_i and tools t_1..t_{i-1}.
    const std::size_t prefix_len = 2 * static_cast<std::size_t>(last_trained(k));
    std::span<const Message> prefix(t.messages.data(), prefix_len);
    TrainingSequence seq;
    seq.traj_id = t.id;
    seq.seq_index = k;
    seq.messages = render_context(prefix, state_cfg);
    seq.reward = t.reward;

    seq.loss_mask.reserve(seq.messages.size());
    int assistant_index = 0;
    for (const auto& m : seq.messages) {
      if (m.role == Role::assistant) {
        ++assistant_index;
        seq.loss_mask.push_back(
            message_mask(k, assistant_index, cfg.window_size, cfg.slide_step));
      } else {
        seq.loss_mask.push_back(0);
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<Trajectory> filter_cold_start(const std::vector<Trajectory>& ts,
                                          const WindowConfig& cfg) {
  for (const auto& t : ts) {
    if (!t.reward) {
      throw ValidationError("trajectory \"" + t.id +
                            "\" has no reward; judge before filtering");
    }
  }
  std::vector<Trajectory> kept;
  for (const auto& t : ts) {
    if (*t.reward == 1 && check_limits(t, cfg) == LimitVerdict::ok) {
      kept.push_back(t);
    }
  }
  return kept;
}

nlohmann::json sequence_to_json(const TrainingSequence& s) {
  nlohmann::json j = nlohmann::json::object();
  j["traj_id"] = s.traj_id;
  j["seq_index"] = s.seq_index;
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : s.messages) msgs.push_back(message_to_json(m));
  j["messages"] = std::move(msgs);
  j["loss_mask"] = s.loss_mask;
  if (s.reward) j["reward"] = *s.reward;
  if (s.advantage) j["advantage"] = *s.advantage;
  return j;
}

TrainingSequence sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("sequence record must be a JSON object");
  TrainingSequence s;
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end()) {
      throw SchemaError(std::string("sequence lacks required key \"") + key + "\"");
    }
    return *it;
  };
  const nlohmann::json& traj_id = require("traj_id");
  if (!traj_id.is_string()) throw SchemaError("traj_id must be a string");
  s.traj_id = traj_id.get<std::string>();
  const nlohmann::json& seq_index = require("seq_index");
  if (!seq_index.is_number_integer()) throw SchemaError("seq_index must be an integer");
  s.seq_index = seq_index.get<int>();
  const nlohmann::json& msgs = require("messages");
  if (!msgs.is_array()) throw SchemaError("sequence messages must be an array");
  for (const auto& m : msgs) s.messages.push_back(message_from_json(m));
  const nlohmann::json& mask = require("loss_mask");
  if (!mask.is_array()) throw SchemaError("loss_mask must be an array");
  for (const auto& v : mask) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw SchemaError("loss_mask entries must be 0 or 1");
    }
    s.loss_mask.push_back(v.get<int>());
  }
  if (s.loss_mask.size() != s.messages.size()) {
    throw SchemaError("loss_mask length must match messages length");
  }
  if (auto it = j.find("reward"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw SchemaError("reward must be a number");
    const double d = it->get<double>();
    if (d != 0.0 && d != 1.0) throw SchemaError("reward must be 0 or 1");
    s.reward = static_cast<int>(d);
  }
  if (auto it = j.find("advantage"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw SchemaError("advantage must be a number");
    s.advantage = it->get<double>();
  }
  return s;
}

std::string serialize_sequence(const TrainingSequence& s) {
  return sequence_to_json(s).dump();
}

TrainingSequence parse_sequence(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return sequence_from_json(j);
}

}  // namespace ctxminer
