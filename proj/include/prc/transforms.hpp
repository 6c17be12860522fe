#pragma once
// Transforms layered over the single-bit code.  The secret-key rate scheme
// writes a lambda-bit seed r into lambda blocks, appends PRG(r) xor Enc(m),
// and bit-permutes the lot; the public-key variant protects the seed with a
// second code instead of a permutation.  The sharp and cca wrappers bind a
// codeword to a hash tag plus an exact re-encode distance check, so inputs
// farther than the flip budget from every honest codeword always map to
// bottom.

#include <optional>
#include <vector>

#include "prc/ecc.hpp"
#include "prc/ldpc.hpp"
#include "prc/primitives.hpp"

namespace prc {

struct MultiBitSkKeys {
  SingleBitKeys block;  // one inner key shared by every block
  EccSpec ecc;
  Permutation pi;  // over lambda * n1 + ecc.n_out positions
  size_t lambda = kLambda;

  size_t msg_bits() const { return ecc.k; }
  size_t total_bits() const { return lambda * block.params.n + ecc.n_out; }
};

MultiBitSkKeys keygen_multi_bit_sk(const SchemeParams& block_params,
                                   const EccSpec& ecc, Rng& rng);
BitVector sk_rate_encode(const MultiBitSkKeys& k, const BitVector& m, Rng& rng);
// bottom when the mask code cannot recover a message
std::optional<BitVector> sk_rate_decode(const MultiBitSkKeys& k, const BitVector& c);

struct MultiBitPkKeys {
  SingleBitKeys block;
  EccSpec ecc1;  // seed code: carries lambda bits, one output bit per block
  EccSpec ecc2;  // mask code: output must cover block_count * n1 bits
  size_t lambda = kLambda;

  size_t msg_bits() const { return ecc2.k; }
  size_t block_count() const { return ecc1.n_out; }
  size_t total_bits() const { return 2 * ecc2.n_out; }
};

MultiBitPkKeys keygen_multi_bit_pk(const SchemeParams& block_params,
                                   const EccSpec& ecc1, const EccSpec& ecc2,
                                   Rng& rng);
BitVector pk_rate_encode(const MultiBitPkKeys& k, const BitVector& m, Rng& rng);
std::optional<BitVector> pk_rate_decode(const MultiBitPkKeys& k, const BitVector& c);

struct SharpKeys {
  PrfKey prf_key;
  MultiBitSkKeys inner;
  Rational delta;  // accepted flip budget, copied from the block scheme

  size_t msg_bits() const { return inner.msg_bits() - 2 * kLambda; }
  size_t total_bits() const { return inner.total_bits(); }
};

SharpKeys keygen_sharp(const SchemeParams& block_params, const EccSpec& ecc,
                       Rng& rng);
// the codeword determined by (r, m): tag and block randomness both come out
// of the keyed hash of r || m, so decode can re-derive it bit for bit
BitVector sharp_canonical(const SharpKeys& k, const BitVector& r, const BitVector& m);
BitVector sharp_encode(const SharpKeys& k, const BitVector& m, Rng& rng);
std::optional<BitVector> sharp_decode(const SharpKeys& k, const BitVector& c);

struct CcaKeys {
  RoHash ro;
  MultiBitPkKeys inner;
  Rational delta;

  size_t msg_bits() const { return inner.msg_bits() - 2 * kLambda; }
  size_t total_bits() const { return inner.total_bits(); }
};

CcaKeys keygen_cca(const SchemeParams& block_params, const EccSpec& ecc1,
                   const EccSpec& ecc2, Rng& rng);
BitVector cca_canonical(const CcaKeys& k, const BitVector& r, const BitVector& m);
BitVector cca_encode(const CcaKeys& k, const BitVector& m, Rng& rng);
std::optional<BitVector> cca_decode(const CcaKeys& k, const BitVector& c);

// Decode without the key material: re-encode every hash query and compare
// against the released codewords, answering with a uniformly random match
// within the flip budget.  Games use this to check the real decoder leaks
// nothing beyond what the hash transcript already determines.
struct RoQuery {
  BitVector m, r;
};
struct IssuedCodeword {
  BitVector m, c;
};
std::optional<BitVector> alt_decode(const CcaKeys& k, const BitVector& c,
                                    const std::vector<RoQuery>& ro_log,
                                    const std::vector<IssuedCodeword>& issued,
                                    Rng& tie_break);

#ifdef PRC_TEST_HOOKS
// Sealed hooks: encode with a caller-chosen seed, and encodes whose tag field
// is deliberately wrong, for exercising the reject paths.
BitVector sk_rate_encode_with_r(const MultiBitSkKeys& k, const BitVector& m,
                                const BitVector& r, Rng& rng);
BitVector sharp_encode_corrupt_tag(const SharpKeys& k, const BitVector& m, Rng& rng);
BitVector cca_encode_corrupt_tag(const CcaKeys& k, const BitVector& m, Rng& rng);
#endif

}  // namespace prc
