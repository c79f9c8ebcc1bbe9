#pragma once

#include <cstdint>

namespace contexture {

// Fixed 64-bit splitmix generator: the single entropy source of the whole
// toolkit, so every seeded stream is portable and reproducible bit for bit.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound] (bound < 2^32; modulo bias is irrelevant here and
    // keeping the mapping trivial keeps streams easy to reproduce elsewhere).
    uint64_t next_below(uint64_t bound) { return next() % (bound + 1); }

  private:
    uint64_t state_;
};

}  // namespace contexture
