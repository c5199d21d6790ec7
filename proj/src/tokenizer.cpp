#include "ctxminer/tokenizer.hpp"

#include <map>
#include <mutex>

namespace ctxminer {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, TokenCounter>& registry() {
  static std::map<std::string, TokenCounter> r;
  return r;
}

}  // namespace

void register_tokenizer(const std::string& identifier, TokenCounter counter) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[identifier] = std::move(counter);
}

std::int64_t count_tokens(std::string_view text, const TokenizerSpec& tok) {
  switch (tok.kind) {
    case TokenizerKind::byte_quarter:
      return static_cast<std::int64_t>((text.size() + 3) / 4);
    case TokenizerKind::pluggable: {
      TokenCounter counter;
      {
        std::lock_guard<std::mutex> lock(registry_mutex());
        auto it = registry().find(tok.identifier);
        if (it == registry().end()) {
          throw ConfigError("unknown tokenizer identifier \"" + tok.identifier + "\"");
        }
        counter = it->second;
      }
      return counter(text);
    }
  }
  throw ConfigError("unsupported tokenizer kind");
}

}  // namespace ctxminer
