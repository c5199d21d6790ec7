#include "ctxminer/window.hpp"

#include <string>

namespace ctxminer {

int sliding_boundary(int tool_count_at_trigger, int window_size, int slide_step) {
  return std::max(1, tool_count_at_trigger - window_size + slide_step);
}

int hidden_tool_count(int tool_count, int window_size, int slide_step) {
  if (tool_count <= window_size) return 0;
  return slide_step * ((tool_count - window_size - 1) / slide_step + 1);
}

WindowState window_state(int tool_count, int window_size, int slide_step) {
  WindowState s;
  s.tool_count = tool_count;
  s.hidden_count = hidden_tool_count(tool_count, window_size, slide_step);
  s.state_index = tool_count <= window_size
                      ? 1
                      : (tool_count - window_size - 1) / slide_step + 2;
  return s;
}

int assistant_state(int assistant_index, int window_size, int slide_step) {
  // a_i is generated with i-1 tools in context.
  return window_state(assistant_index - 1, window_size, slide_step).state_index;
}

std::vector<Message> render_context(std::span<const Message> prefix,
                                    const WindowConfig& cfg) {
  cfg.validate();
  int tool_count = 0;
  for (const auto& m : prefix) tool_count += m.role == Role::tool ? 1 : 0;
  const int hidden = hidden_tool_count(tool_count, cfg.window_size, cfg.slide_step);

  std::vector<Message> out(prefix.begin(), prefix.end());
  int tool_index = 0;
  for (auto& m : out) {
    if (m.role != Role::tool) continue;
    ++tool_index;
    if (tool_index <= hidden) m.content = cfg.placeholder;
  }
  return out;
}

LiveWindow::LiveWindow(WindowConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
}

void LiveWindow::append(Message msg) {
  const Role expected = log_.empty()
                            ? Role::user
                            : (log_.size() % 2 == 1 ? Role::assistant : Role::tool);
  if (msg.role != expected) {
    throw StateError("cannot append role " + std::string(to_string(msg.role)) +
                     " at position " + std::to_string(log_.size()) +
                     ": expected " + std::string(to_string(expected)));
  }
  log_.push_back(std::move(msg));
  if (log_.back().role != Role::tool) return;

  ++state_.tool_count;
  const int visible = state_.tool_count - state_.hidden_count;
  if (visible == cfg_.window_size + 1) {
    state_.hidden_count += cfg_.slide_step;
    ++state_.state_index;
  }
}

std::vector<Message> LiveWindow::rendered() const {
  std::vector<Message> out = log_;
  int tool_index = 0;
  for (auto& m : out) {
    if (m.role != Role::tool) continue;
    ++tool_index;
    if (tool_index <= state_.hidden_count) m.content = cfg_.placeholder;
  }
  return out;
}

}  // namespace ctxminer
