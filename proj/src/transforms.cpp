#include "prc/transforms.hpp"

#include <stdexcept>

namespace prc {

namespace {

void copy_into(BitVector& dst, const BitVector& src, size_t off) {
  for (size_t i = 0; i < src.n; ++i) dst.set(off + i, src.get(i));
}

// dist <= floor(delta * n), evaluated on integers
bool within_budget(size_t dist, const Rational& delta, size_t n) {
  return (uint64_t)dist * (uint64_t)delta.den <= (uint64_t)delta.num * (uint64_t)n;
}

BitVector sk_rate_encode_seeded(const MultiBitSkKeys& k, const BitVector& m,
                                const BitVector& r, Rng& rng) {
  if (m.n != k.msg_bits())
    throw std::invalid_argument("sk_rate_encode: message length");
  size_t n1 = k.block.params.n;
  BitVector concat(k.total_bits());
  for (size_t i = 0; i < k.lambda; ++i)
    copy_into(concat, encode_single_bit(k.block, r.get(i) ? 1 : 0, rng), i * n1);
  copy_into(concat, prg(r, k.ecc.n_out) ^ ecc_encode(k.ecc, m), k.lambda * n1);
  return perm_bits(concat, k.pi);
}

BitVector pk_rate_encode_seeded(const MultiBitPkKeys& k, const BitVector& m,
                                const BitVector& r, Rng& rng) {
  if (m.n != k.msg_bits())
    throw std::invalid_argument("pk_rate_encode: message length");
  size_t n1 = k.block.params.n;
  BitVector rp = ecc_encode(k.ecc1, r);
  BitVector out(k.total_bits());
  for (size_t i = 0; i < rp.n; ++i)
    copy_into(out, encode_single_bit(k.block, rp.get(i) ? 1 : 0, rng), i * n1);
  copy_into(out, prg(r, k.ecc2.n_out) ^ ecc_encode(k.ecc2, m), rp.n * n1);
  return out;
}

BitVector build_payload(const BitVector& r, const BitVector& m, const BitVector& tag) {
  return concat_bits(concat_bits(r, m), tag);
}

}  // namespace

MultiBitSkKeys keygen_multi_bit_sk(const SchemeParams& block_params,
                                   const EccSpec& ecc, Rng& rng) {
  MultiBitSkKeys k;
  k.block = keygen_single_bit(block_params, rng);
  k.ecc = ecc;
  k.lambda = block_params.lambda;
  k.pi = Permutation::random(k.lambda * block_params.n + ecc.n_out, rng);
  return k;
}

BitVector sk_rate_encode(const MultiBitSkKeys& k, const BitVector& m, Rng& rng) {
  BitVector r = rng.uniform_bits(k.lambda);
  return sk_rate_encode_seeded(k, m, r, rng);
}

std::optional<BitVector> sk_rate_decode(const MultiBitSkKeys& k, const BitVector& c) {
  if (c.n != k.total_bits())
    throw std::invalid_argument("sk_rate_decode: length mismatch");
  BitVector w = perm_bits(c, k.pi.inverse());
  size_t n1 = k.block.params.n;
  BitVector y(k.lambda);
  for (size_t i = 0; i < k.lambda; ++i) {
    auto bit = decode_single_bit(k.block, slice_bits(w, i * n1, n1));
    y.set(i, bit.value_or(0) == 1);  // bottom reads as 0
  }
  BitVector masked = slice_bits(w, k.lambda * n1, k.ecc.n_out) ^ prg(y, k.ecc.n_out);
  return ecc_decode(k.ecc, masked);
}

MultiBitPkKeys keygen_multi_bit_pk(const SchemeParams& block_params,
                                   const EccSpec& ecc1, const EccSpec& ecc2,
                                   Rng& rng) {
  if (ecc1.k != block_params.lambda)
    throw std::invalid_argument("pk keygen: seed code must carry lambda bits");
  if (ecc2.n_out != ecc1.n_out * block_params.n)
    throw std::invalid_argument("pk keygen: mask code must match the block half");
  MultiBitPkKeys k;
  k.block = keygen_single_bit(block_params, rng);
  k.ecc1 = ecc1;
  k.ecc2 = ecc2;
  k.lambda = block_params.lambda;
  return k;
}

BitVector pk_rate_encode(const MultiBitPkKeys& k, const BitVector& m, Rng& rng) {
  BitVector r = rng.uniform_bits(k.lambda);
  return pk_rate_encode_seeded(k, m, r, rng);
}

std::optional<BitVector> pk_rate_decode(const MultiBitPkKeys& k, const BitVector& c) {
  if (c.n != k.total_bits())
    throw std::invalid_argument("pk_rate_decode: length mismatch");
  size_t n1 = k.block.params.n;
  size_t blocks = k.block_count();
  BitVector s(blocks);
  for (size_t i = 0; i < blocks; ++i) {
    auto bit = decode_single_bit(k.block, slice_bits(c, i * n1, n1));
    s.set(i, bit.value_or(0) == 1);
  }
  auto r = ecc_decode(k.ecc1, s);
  if (!r) return std::nullopt;
  BitVector masked = slice_bits(c, blocks * n1, k.ecc2.n_out) ^ prg(*r, k.ecc2.n_out);
  return ecc_decode(k.ecc2, masked);
}

SharpKeys keygen_sharp(const SchemeParams& block_params, const EccSpec& ecc,
                       Rng& rng) {
  if (ecc.k <= 2 * kLambda)
    throw std::invalid_argument("sharp keygen: code too small for seed and tag");
  SharpKeys k;
  k.prf_key = random_prf_key(rng);
  k.inner = keygen_multi_bit_sk(block_params, ecc, rng);
  k.delta = block_params.delta;
  return k;
}

BitVector sharp_canonical(const SharpKeys& k, const BitVector& r, const BitVector& m) {
  if (r.n != kLambda) throw std::invalid_argument("sharp_canonical: seed length");
  if (m.n != k.msg_bits())
    throw std::invalid_argument("sharp_canonical: message length");
  PrfOutput tag = prf_pair(k.prf_key, concat_bits(r, m));
  HashStreamRng hrng(tag.r1);
  return sk_rate_encode(k.inner, build_payload(r, m, tag.r2), hrng);
}

BitVector sharp_encode(const SharpKeys& k, const BitVector& m, Rng& rng) {
  return sharp_canonical(k, rng.uniform_bits(kLambda), m);
}

std::optional<BitVector> sharp_decode(const SharpKeys& k, const BitVector& c) {
  auto payload = sk_rate_decode(k.inner, c);
  if (!payload) return std::nullopt;
  BitVector r = slice_bits(*payload, 0, kLambda);
  BitVector m = slice_bits(*payload, kLambda, k.msg_bits());
  BitVector tag = slice_bits(*payload, kLambda + k.msg_bits(), kLambda);
  if (prf_pair(k.prf_key, concat_bits(r, m)).r2 != tag) return std::nullopt;
  if (!within_budget(hamming_distance(sharp_canonical(k, r, m), c), k.delta, c.n))
    return std::nullopt;
  return m;
}

CcaKeys keygen_cca(const SchemeParams& block_params, const EccSpec& ecc1,
                   const EccSpec& ecc2, Rng& rng) {
  if (ecc2.k <= 2 * kLambda)
    throw std::invalid_argument("cca keygen: code too small for seed and tag");
  CcaKeys k;
  k.ro = RoHash{};
  k.inner = keygen_multi_bit_pk(block_params, ecc1, ecc2, rng);
  k.delta = block_params.delta;
  return k;
}

BitVector cca_canonical(const CcaKeys& k, const BitVector& r, const BitVector& m) {
  if (r.n != kLambda) throw std::invalid_argument("cca_canonical: seed length");
  if (m.n != k.msg_bits())
    throw std::invalid_argument("cca_canonical: message length");
  PrfOutput tag = ro_pair(k.ro, concat_bits(r, m));
  HashStreamRng hrng(tag.r1);
  return pk_rate_encode(k.inner, build_payload(r, m, tag.r2), hrng);
}

BitVector cca_encode(const CcaKeys& k, const BitVector& m, Rng& rng) {
  return cca_canonical(k, rng.uniform_bits(kLambda), m);
}

std::optional<BitVector> cca_decode(const CcaKeys& k, const BitVector& c) {
  auto payload = pk_rate_decode(k.inner, c);
  if (!payload) return std::nullopt;
  BitVector r = slice_bits(*payload, 0, kLambda);
  BitVector m = slice_bits(*payload, kLambda, k.msg_bits());
  BitVector tag = slice_bits(*payload, kLambda + k.msg_bits(), kLambda);
  if (ro_pair(k.ro, concat_bits(r, m)).r2 != tag) return std::nullopt;
  if (!within_budget(hamming_distance(cca_canonical(k, r, m), c), k.delta, c.n))
    return std::nullopt;
  return m;
}

std::optional<BitVector> alt_decode(const CcaKeys& k, const BitVector& c,
                                    const std::vector<RoQuery>& ro_log,
                                    const std::vector<IssuedCodeword>& issued,
                                    Rng& tie_break) {
  if (c.n != k.total_bits())
    throw std::invalid_argument("alt_decode: length mismatch");
  std::vector<BitVector> matches;
  for (const auto& q : ro_log) {
    // hash queries that cannot parse as (seed, message) never made a codeword
    if (q.r.n != kLambda || q.m.n != k.msg_bits()) continue;
    if (within_budget(hamming_distance(cca_canonical(k, q.r, q.m), c), k.delta, c.n))
      matches.push_back(q.m);
  }
  for (const auto& e : issued) {
    if (e.c.n != c.n) continue;
    if (within_budget(hamming_distance(e.c, c), k.delta, c.n))
      matches.push_back(e.m);
  }
  if (matches.empty()) return std::nullopt;
  return matches[tie_break.below(matches.size())];
}

#ifdef PRC_TEST_HOOKS
BitVector sk_rate_encode_with_r(const MultiBitSkKeys& k, const BitVector& m,
                                const BitVector& r, Rng& rng) {
  if (r.n != k.lambda) throw std::invalid_argument("encode_with_r: seed length");
  return sk_rate_encode_seeded(k, m, r, rng);
}

BitVector sharp_encode_corrupt_tag(const SharpKeys& k, const BitVector& m, Rng& rng) {
  BitVector r = rng.uniform_bits(kLambda);
  PrfOutput tag = prf_pair(k.prf_key, concat_bits(r, m));
  tag.r2.flip(0);
  HashStreamRng hrng(tag.r1);
  return sk_rate_encode(k.inner, build_payload(r, m, tag.r2), hrng);
}

BitVector cca_encode_corrupt_tag(const CcaKeys& k, const BitVector& m, Rng& rng) {
  BitVector r = rng.uniform_bits(kLambda);
  PrfOutput tag = ro_pair(k.ro, concat_bits(r, m));
  tag.r2.flip(0);
  HashStreamRng hrng(tag.r1);
  return pk_rate_encode(k.inner, build_payload(r, m, tag.r2), hrng);
}
#endif

}  // namespace prc
