#pragma once
// The two core watermark codes.  Zero-bit: sk = (H, z), pk = (G, z), encode
// Gu + z + e, detect by counting satisfied checks on x + z.  Single-bit: two
// independent (H, G) pairs share one z; the message picks which generator is
// used and decode demands exactly one detector fire.

#include <optional>

#include "prc/f2.hpp"
#include "prc/params.hpp"

namespace prc {

struct ZeroBitKeys {
  SchemeParams params;
  SparseParityMatrix H;  // secret half
  DenseMatrix G;         // public half
  BitVector z;           // shared one-time pad
};

struct SingleBitKeys {
  SchemeParams params;
  SparseParityMatrix H0, H1;
  DenseMatrix G0, G1;
  BitVector z;
};

// require_kernel_dim resamples H until dim(ker H) >= d, so every generator
// column draw ranges over a space that can actually hold d dimensions.
enum class RankPolicy { none, require_kernel_dim };

ZeroBitKeys keygen_zero_bit(const SchemeParams& p, Rng& rng,
                            RankPolicy policy = RankPolicy::none);
// Single-bit keys always use require_kernel_dim: u != 0 must matter.
SingleBitKeys keygen_single_bit(const SchemeParams& p, Rng& rng);

BitVector encode_zero_bit(const ZeroBitKeys& k, Rng& rng);
BitVector encode_single_bit(const SingleBitKeys& k, int m, Rng& rng);

// true = mark detected, false = bottom.
bool decode_zero_bit(const ZeroBitKeys& k, const BitVector& x);
// 0 or 1 when exactly that detector fires, nullopt = bottom.
std::optional<int> decode_single_bit(const SingleBitKeys& k, const BitVector& x);

// Exact comparisons of an integer check-failure count against (1/2 - zeta) r.
bool weight_below_threshold(size_t wt, size_t r, const Rational& zeta);
bool weight_above_threshold(size_t wt, size_t r, const Rational& zeta);

#ifdef PRC_TEST_HOOKS
// Sealed test hook: same sampling order as the plain encodes, but the pieces
// come back out so tests can verify wt(e) and games can replay randomness.
struct EncodeParts {
  BitVector x, u, e;
};
EncodeParts encode_zero_bit_parts(const ZeroBitKeys& k, Rng& rng);
EncodeParts encode_single_bit_parts(const SingleBitKeys& k, int m, Rng& rng);
#endif

}  // namespace prc
