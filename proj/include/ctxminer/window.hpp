#pragma once

#include <span>
#include <vector>

#include "ctxminer/types.hpp"

namespace ctxminer {

// Visible-context configuration after j tool responses have been appended
// and any pending slides resolved. Tools 1..hidden_count are replaced by
// the placeholder; state_index counts distinct configurations from 1.
struct WindowState {
  int tool_count = 0;
  int hidden_count = 0;
  int state_index = 1;

  bool operator==(const WindowState&) const = default;
};

// b = max(1, t - W + S): tool responses with index < b get the placeholder.
int sliding_boundary(int tool_count_at_trigger, int window_size, int slide_step);

// Closed form of repeated boundary application. Slides resolve upon
// appending tool j for j in {W+1, W+1+S, W+1+2S, ...}, each hiding S more.
int hidden_tool_count(int tool_count, int window_size, int slide_step);

WindowState window_state(int tool_count, int window_size, int slide_step);

// Sequence index under which assistant i is generated (i-1 tools precede
// it): 1 for i <= W+1, else ceil((i-W-1)/S) + 1.
int assistant_state(int assistant_index, int window_size, int slide_step);

// Placeholder substitution over a trajectory prefix (any valid alternation
// point). User and assistant contents are untouched; idempotent.
std::vector<Message> render_context(std::span<const Message> prefix,
                                    const WindowConfig& cfg);

// Incremental form of window_state for agent loops: owns the message log
// and resolves slides as tool messages arrive.
class LiveWindow {
 public:
  explicit LiveWindow(WindowConfig cfg);

  // StateError when msg breaks the alternation.
  void append(Message msg);

  const WindowState& state() const { return state_; }
  std::span<const Message> log() const { return log_; }
  std::vector<Message> rendered() const;

 private:
  WindowConfig cfg_;
  std::vector<Message> log_;
  WindowState state_;
};

}  // namespace ctxminer
