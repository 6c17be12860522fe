#pragma once
// Seedable randomness handles.  Everything that samples takes an Rng& so runs
// replay exactly from a seed; HashStreamRng (primitives.hpp) plugs in here when
// a construction needs randomness derived from a PRF output.

#include <cstdint>
#include <random>

#include "prc/bitvec.hpp"

namespace prc {

struct Rng {
  virtual uint64_t next_u64() = 0;
  virtual ~Rng() = default;

  bool coin() { return next_u64() & 1; }

  // Uniform in [0, bound) via rejection, so no modulo bias.
  uint64_t below(uint64_t bound) {
    if (bound == 0) return 0;
    uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do { v = next_u64(); } while (v >= lim);
    return v % bound;
  }

  BitVector uniform_bits(size_t n) {
    BitVector v(n);
    for (auto& word : v.w) word = next_u64();
    v.clear_tail();
    return v;
  }
};

struct SeededRng final : Rng {
  std::mt19937_64 eng;
  explicit SeededRng(uint64_t seed) : eng(seed) {}
  uint64_t next_u64() override { return eng(); }
};

}  // namespace prc
