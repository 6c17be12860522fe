#pragma once
// PRG, PRF, and a random-oracle-style hash, all driven by SHA-256 in
// counter mode with one-byte domain separation: 0x01 PRG, 0x02 PRF, 0x03 RO,
// 0x04 hash-stream RNG.  Every output is a pure function of the declared
// inputs so encodings replay bit-exactly from their randomness.

#include <array>
#include <cstdint>
#include <vector>

#include "prc/bitvec.hpp"
#include "prc/rng.hpp"

namespace prc {

inline constexpr size_t kLambda = 128;
inline constexpr uint8_t kHashAlgSha256 = 1;  // registry has one entry

using Digest = std::array<uint8_t, 32>;
Digest sha256(const uint8_t* data, size_t len);

// LSB-first packing: bit i of v lands in byte i>>3 at position i&7.
std::vector<uint8_t> pack_bits(const BitVector& v);
BitVector unpack_bits(const uint8_t* bytes, size_t nbits);

struct PrfKey {
  std::array<uint8_t, 32> bytes{};
};
PrfKey random_prf_key(Rng& rng);

// Counter-mode expansion: block i = sha256(0x01 || seed || i as u64be).
BitVector prg(const BitVector& seed, size_t out_bits);

// block i = sha256(0x02 || key || bitlen(input) u64be || packed(input) || i u64be)
BitVector prf(const PrfKey& key, const BitVector& input, size_t out_bits);

struct PrfOutput {
  BitVector r1, r2;  // lambda bits each
};
PrfOutput prf_pair(const PrfKey& key, const BitVector& input);

struct RoHash {
  uint8_t algorithm = kHashAlgSha256;
  size_t out_bits = 2 * kLambda;
};
// block i = sha256(0x03 || bitlen(input) u64be || packed(input) || i u64be)
BitVector ro_hash(const RoHash& h, const BitVector& input);
PrfOutput ro_pair(const RoHash& h, const BitVector& input);  // needs out_bits >= 2 lambda

// Rng view of a sha256 counter stream keyed by a bit-string; lets a
// construction re-run its sampling from PRF-derived randomness.
struct HashStreamRng final : Rng {
  std::vector<uint8_t> prefix;  // 0x04 || bitlen u64be || packed seed || ctr slot
  uint64_t counter = 0;
  Digest buf{};
  size_t pos = 32;  // exhausted; refill on first use

  explicit HashStreamRng(const BitVector& seed);
  uint64_t next_u64() override;
};

}  // namespace prc
