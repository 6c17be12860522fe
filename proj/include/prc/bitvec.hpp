#pragma once
// Bit vectors over F2, packed 64 per word.  Bit i lives in word i>>6 at bit
// position i&63 (LSB first).  Trailing bits of the last word are kept zero so
// weight() and operator== never need masking.

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "prc/rational.hpp"

namespace prc {

struct BitVector {
  size_t n = 0;
  std::vector<uint64_t> w;

  BitVector() = default;
  explicit BitVector(size_t bits) : n(bits), w((bits + 63) / 64, 0) {}

  size_t size() const { return n; }

  bool get(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
  }
  void flip(size_t i) { w[i >> 6] ^= 1ull << (i & 63); }

  size_t weight() const {
    size_t c = 0;
    for (uint64_t x : w) c += (size_t)__builtin_popcountll(x);
    return c;
  }

  BitVector& operator^=(const BitVector& o) {
    if (o.n != n) throw std::invalid_argument("bitvec xor: length mismatch");
    for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    return *this;
  }
  BitVector operator^(const BitVector& o) const {
    BitVector r = *this;
    r ^= o;
    return r;
  }
  bool operator==(const BitVector& o) const { return n == o.n && w == o.w; }
  bool operator!=(const BitVector& o) const { return !(*this == o); }

  void clear_tail() {
    if (n & 63) w.back() &= (1ull << (n & 63)) - 1;
  }
};

// Parity of <a, b>: xor-fold the ANDed words, one popcount at the end.
inline bool dot_parity(const BitVector& a, const BitVector& b) {
  if (a.n != b.n) throw std::invalid_argument("dot_parity: length mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < a.w.size(); ++i) acc ^= a.w[i] & b.w[i];
  return __builtin_popcountll(acc) & 1;
}

inline size_t hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.n != b.n) throw std::invalid_argument("hamming_distance: length mismatch");
  size_t c = 0;
  for (size_t i = 0; i < a.w.size(); ++i)
    c += (size_t)__builtin_popcountll(a.w[i] ^ b.w[i]);
  return c;
}

// bias(z) = 1 - 2 wt(z)/n, exact.
inline Rational bias_of(const BitVector& z) {
  if (z.n == 0) throw std::invalid_argument("bias: empty vector");
  return Rational((long long)z.n - 2 * (long long)z.weight(), (long long)z.n);
}

inline BitVector concat_bits(const BitVector& a, const BitVector& b) {
  BitVector r(a.n + b.n);
  for (size_t i = 0; i < a.n; ++i) if (a.get(i)) r.set(i, true);
  for (size_t i = 0; i < b.n; ++i) if (b.get(i)) r.set(a.n + i, true);
  return r;
}

inline BitVector slice_bits(const BitVector& x, size_t from, size_t len) {
  if (from + len > x.n) throw std::out_of_range("slice_bits");
  BitVector r(len);
  for (size_t i = 0; i < len; ++i) if (x.get(from + i)) r.set(i, true);
  return r;
}

}  // namespace prc
