#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "ctxminer/types.hpp"

namespace ctxminer {

using TokenCounter = std::function<std::int64_t(std::string_view)>;

// Registers a counter for TokenizerKind::pluggable specs. Thread-safe.
void register_tokenizer(const std::string& identifier, TokenCounter counter);

// byte_quarter: ceil(byte_length / 4). pluggable: dispatch by identifier,
// ConfigError when unregistered.
std::int64_t count_tokens(std::string_view text, const TokenizerSpec& tok);

}  // namespace ctxminer
