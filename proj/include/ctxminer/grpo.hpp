#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxminer/compile.hpp"
#include "ctxminer/types.hpp"

namespace ctxminer {

// G rollouts of one question with trajectory-level rewards and their
// group-normalized advantages.
struct RolloutGroup {
  std::string group_id;
  std::string question;
  std::string gold_answer;
  std::vector<Trajectory> trajectories;
  std::vector<double> rewards;
  std::vector<double> advantages;
};

// Exact-match stand-in for the LLM judge: 1 iff the normalized strings are
// equal (lowercase, punctuation stripped, whitespace collapsed).
int judge_exact(std::string_view response, std::string_view gold);

std::string normalize_answer(std::string_view s);

// Renders the judgement prompt with the question/response/answer slots
// substituted; no other text.
std::string render_judge_prompt(std::string_view question,
                                std::string_view response,
                                std::string_view gold);

// Seam for a remote judge: anything that maps (question, response, gold)
// to a binary reward. exact_judge is the only local implementation.
using JudgeFn = std::function<int(std::string_view question,
                                  std::string_view response,
                                  std::string_view gold)>;

// judge_exact lifted to the JudgeFn seam (the question is unused).
int exact_judge(std::string_view question, std::string_view response,
                std::string_view gold);

// A_i = (R_i - mean) / population std. Zero-variance groups (std < 1e-8)
// yield all-zero advantages. ValidationError when G < 2.
std::vector<double> group_advantages(const std::vector<double>& rewards);

// Buckets trajectories by group_id (first-appearance order, input order
// within a group). Rewards are taken from the trajectory when present,
// otherwise judged from the final assistant message against gold_answer.
// ValidationError on missing group_id or unjudgeable trajectories.
std::vector<RolloutGroup> build_groups(const std::vector<Trajectory>& ts,
                                       const JudgeFn& judge = exact_judge);

// compile_sequences over every trajectory in group order, each sequence
// stamped with its trajectory's advantage.
std::vector<TrainingSequence> propagate(const RolloutGroup& group,
                                        const WindowConfig& cfg);

}  // namespace ctxminer
