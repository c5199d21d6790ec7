#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ctxminer {

// Seeded deterministic text source for scripted runs and fixtures.
// mt19937_64 with raw-modulo draws keeps the byte stream identical across
// platforms; std::uniform_int_distribution is implementation-defined and
// deliberately avoided.
class FillerGen {
 public:
  explicit FillerGen(std::uint64_t seed) : rng_(seed) {}

  // Lowercase words padded/trimmed to exactly tokens*4 bytes, so the
  // byte_quarter count of the result is exactly `tokens`.
  std::string exact_tokens(std::int64_t tokens);

  std::string word();

  std::uint64_t draw(std::uint64_t bound);  // uniform-ish in [0, bound)

 private:
  std::mt19937_64 rng_;
};

}  // namespace ctxminer
