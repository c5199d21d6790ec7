#include "ctxminer/filler.hpp"

namespace ctxminer {

std::uint64_t FillerGen::draw(std::uint64_t bound) {
  return bound == 0 ? 0 : rng_() % bound;
}

std::string FillerGen::word() {
  const std::size_t len = 3 + static_cast<std::size_t>(draw(6));
  std::string w(len, 'a');
  for (char& c : w) c = static_cast<char>('a' + draw(26));
  return w;
}

std::string FillerGen::exact_tokens(std::int64_t tokens) {
  if (tokens <= 0) return {};
  const std::size_t target = static_cast<std::size_t>(tokens) * 4;
  std::string out;
  out.reserve(target + 9);
  while (out.size() < target) {
    if (!out.empty()) out.push_back(' ');
    out += word();
  }
  out.resize(target);
  if (out.back() == ' ') out.back() = 'x';
  return out;
}

}  // namespace ctxminer
