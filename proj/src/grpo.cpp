#include "ctxminer/grpo.hpp"

#include <cctype>
#include <cmath>
#include <map>

namespace ctxminer {

namespace {

constexpr std::string_view kJudgeTemplate =
    "Judge whether the following [response] to [question] is correct or not "
    "based on the precise and unambiguous [correct_answer] below.\n"
    "\n"
    "[question]: {question}\n"
    "\n"
    "[response]: {response}\n"
    "\n"
    "Your judgement must be in the format and criteria specified below:\n"
    "extracted_final_answer: The final exact answer extracted from the "
    "[response]. Put the extracted answer as 'None' if there is no exact, "
    "final answer to extract from the response.\n"
    "\n"
    "[correct_answer]: {answer}\n"
    "\n"
    "reasoning: Explain why the extracted_final_answer is correct or incorrect "
    "based on [correct_answer], focusing only on if there are meaningful "
    "differences between [correct_answer] and the extracted_final_answer. Do "
    "not comment on any background to the problem, do not attempt to solve "
    "the problem, do not argue for any answer different than [correct_answer], "
    "focus only on whether the\n"
    "answers match.\n"
    "\n"
    "correct: Answer 'yes' if extracted_final_answer matches the "
    "[correct_answer] given above, or is within a small margin of error for "
    "numerical problems. Answer 'no' otherwise, i.e. if there if there is any "
    "inconsistency, ambiguity, non-equivalency, or if the extracted answer is "
    "incorrect.";

void replace_slot(std::string& text, std::string_view slot, std::string_view value) {
  const std::size_t pos = text.find(slot);
  if (pos == std::string::npos) return;
  text.replace(pos, slot.size(), value);
}

}  // namespace

std::string normalize_answer(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (const char c : s) {
    const unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_space = !out.empty();
      continue;
    }
    if (uc < 0x80 && std::ispunct(uc)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  return out;
}

int judge_exact(std::string_view response, std::string_view gold) {
  return normalize_answer(response) == normalize_answer(gold) ? 1 : 0;
}

int exact_judge(std::string_view /*question*/, std::string_view response,
                std::string_view gold) {
  return judge_exact(response, gold);
}

std::string render_judge_prompt(std::string_view question,
                                std::string_view response,
                                std::string_view gold) {
  std::string out(kJudgeTemplate);
  replace_slot(out, "{question}", question);
  replace_slot(out, "{response}", response);
  replace_slot(out, "{answer}", gold);
  return out;
}

std::vector<double> group_advantages(const std::vector<double>& rewards) {
  const std::size_t g = rewards.size();
  if (g < 2) {
    throw ValidationError("rollout group needs at least 2 trajectories, got " +
                          std::to_string(g));
  }
  double mean = 0.0;
  for (const double r : rewards) mean += r;
  mean /= static_cast<double>(g);
  double var = 0.0;
  for (const double r : rewards) var += (r - mean) * (r - mean);
  var /= static_cast<double>(g);  // population std, no Bessel correction
  const double std_dev = std::sqrt(var);

  std::vector<double> advantages(g, 0.0);
  if (std_dev < 1e-8) return advantages;  // uniform groups carry no signal
  for (std::size_t i = 0; i < g; ++i) {
    advantages[i] = (rewards[i] - mean) / std_dev;
  }
  return advantages;
}

std::vector<RolloutGroup> build_groups(const std::vector<Trajectory>& ts,
                                       const JudgeFn& judge) {
  std::vector<RolloutGroup> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& t : ts) {
    validate_trajectory(t);
    if (!t.group_id) {
      throw ValidationError("trajectory \"" + t.id +
                            "\" has no group_id; rollout groups are keyed by it");
    }
    auto [it, inserted] = index.emplace(*t.group_id, groups.size());
    if (inserted) {
      RolloutGroup g;
      g.group_id = *t.group_id;
      g.question = t.question;
      groups.push_back(std::move(g));
    }
    RolloutGroup& g = groups[it->second];
    if (g.gold_answer.empty() && t.gold_answer) g.gold_answer = *t.gold_answer;

    double reward = 0.0;
    if (t.reward) {
      reward = static_cast<double>(*t.reward);
    } else if (t.gold_answer) {
      reward = static_cast<double>(
          judge(t.question, t.final_assistant().content, *t.gold_answer));
    } else {
      throw ValidationError("trajectory \"" + t.id +
                            "\" carries neither reward nor gold_answer");
    }
    g.trajectories.push_back(t);
    g.rewards.push_back(reward);
  }
  for (auto& g : groups) {
    if (g.trajectories.size() < 2) {
      throw ValidationError("group \"" + g.group_id + "\" has only " +
                            std::to_string(g.trajectories.size()) +
                            " trajectories; need at least 2");
    }
    g.advantages = group_advantages(g.rewards);
  }
  return groups;
}

std::vector<TrainingSequence> propagate(const RolloutGroup& group,
                                        const WindowConfig& cfg) {
  const std::size_t g = group.trajectories.size();
  if (g < 2 || group.rewards.size() != g || group.advantages.size() != g) {
    throw ValidationError("group \"" + group.group_id +
                          "\": trajectories, rewards, and advantages must share "
                          "length G >= 2");
  }
  for (const auto& t : group.trajectories) {
    if (t.group_id && *t.group_id != group.group_id) {
      throw ValidationError("trajectory \"" + t.id + "\" belongs to group \"" +
                            *t.group_id + "\", not \"" + group.group_id + "\"");
    }
  }
  std::vector<TrainingSequence> out;
  for (std::size_t i = 0; i < g; ++i) {
    auto seqs = compile_sequences(group.trajectories[i], cfg);
    for (auto& s : seqs) {
      // Same signal on every sequence regardless of its context state.
      s.advantage = group.advantages[i];
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace ctxminer
