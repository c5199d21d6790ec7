#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxminer/types.hpp"

namespace ctxminer {

// One context state of a trajectory, rendered exactly as the model saw it
// at inference time, with a message-level loss mask selecting the assistant
// responses generated under that state.
struct TrainingSequence {
  std::string traj_id;
  int seq_index = 1;              // k, starting at 1
  std::vector<Message> messages;  // rendered under state k, ends at the
                                  // last assistant trained here
  std::vector<int> loss_mask;     // 0/1 per message; 1 only on assistants
  std::optional<int> reward;
  std::optional<double> advantage;

  bool operator==(const TrainingSequence&) const = default;
};

// K: number of context states spanned by assistants a_1..a_{N+1}.
// 1 for N <= W, else ceil((N-W)/S) + 1; agrees with floor((N-W)/S)+1
// whenever S divides N-W.
int sequence_count(int tool_count, int window_size, int slide_step);

// 1 iff assistant i is trained in sequence k, i.e. assistant_state(i) == k.
// For k >= 2 this masks exactly i < W + (k-2)*S + 2.
int message_mask(int seq_index, int assistant_index, int window_size,
                 int slide_step);

// Decomposes a trajectory into its K training sequences. Each assistant is
// mask-1 in exactly one sequence, under the context it was generated in.
// The trajectory reward is copied onto every sequence.
std::vector<TrainingSequence> compile_sequences(const Trajectory& t,
                                                const WindowConfig& cfg);

// Cold-start filter: keep reward == 1 and check_limits == ok, preserving
// order. ValidationError when any input lacks a reward.
std::vector<Trajectory> filter_cold_start(const std::vector<Trajectory>& ts,
                                          const WindowConfig& cfg);

nlohmann::json sequence_to_json(const TrainingSequence& s);
TrainingSequence sequence_from_json(const nlohmann::json& j);
std::string serialize_sequence(const TrainingSequence& s);
TrainingSequence parse_sequence(std::string_view line);

}  // namespace ctxminer
