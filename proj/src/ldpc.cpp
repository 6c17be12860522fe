#include "prc/ldpc.hpp"

#include <cassert>
#include <stdexcept>

namespace prc {

namespace {

struct Pair {
  SparseParityMatrix H;
  DenseMatrix G;
};

Pair sample_pair(const SchemeParams& p, Rng& rng, RankPolicy policy) {
  for (;;) {
    SparseParityMatrix H = sample_sparse_rows(p.n, p.t, p.r, rng);
    auto basis = kernel_basis(H);
    if (policy == RankPolicy::require_kernel_dim && basis.size() < p.d) continue;
    DenseMatrix G = sample_kernel_matrix(basis, p.d, rng);
    return {std::move(H), std::move(G)};
  }
}

BitVector encode_with(const DenseMatrix& G, const BitVector& z, const BitVector& u,
                      const BitVector& e) {
  return mat_vec_dense(G, u) ^ z ^ e;
}

}  // namespace

ZeroBitKeys keygen_zero_bit(const SchemeParams& p, Rng& rng, RankPolicy policy) {
  auto [H, G] = sample_pair(p, rng, policy);
  ZeroBitKeys k;
  k.params = p;
  k.H = std::move(H);
  k.G = std::move(G);
  k.z = rng.uniform_bits(p.n);
  return k;
}

SingleBitKeys keygen_single_bit(const SchemeParams& p, Rng& rng) {
  SingleBitKeys k;
  k.params = p;
  auto p0 = sample_pair(p, rng, RankPolicy::require_kernel_dim);
  auto p1 = sample_pair(p, rng, RankPolicy::require_kernel_dim);
  k.H0 = std::move(p0.H);
  k.G0 = std::move(p0.G);
  k.H1 = std::move(p1.H);
  k.G1 = std::move(p1.G);
  k.z = rng.uniform_bits(p.n);
  return k;
}

bool weight_below_threshold(size_t wt, size_t r, const Rational& zeta) {
  // wt < (1/2 - zeta) r  <=>  2 q wt < r (q - 2p) for zeta = p/q
  long long p = zeta.num, q = zeta.den;
  return 2 * q * (long long)wt < (long long)r * (q - 2 * p);
}

bool weight_above_threshold(size_t wt, size_t r, const Rational& zeta) {
  long long p = zeta.num, q = zeta.den;
  return 2 * q * (long long)wt > (long long)r * (q - 2 * p);
}

static BitVector draw_u(size_t d, Rng& rng, bool nonzero) {
  for (;;) {
    BitVector u = rng.uniform_bits(d);
    if (!nonzero || u.weight() > 0) return u;
  }
}

BitVector encode_zero_bit(const ZeroBitKeys& k, Rng& rng) {
  BitVector u = draw_u(k.params.d, rng, false);
  BitVector e = sample_fixed_weight(k.params.n, k.params.noise_weight(), rng);
  return encode_with(k.G, k.z, u, e);
}

BitVector encode_single_bit(const SingleBitKeys& k, int m, Rng& rng) {
  if (m != 0 && m != 1) throw std::invalid_argument("encode: message bit");
  BitVector u = draw_u(k.params.d, rng, true);
  BitVector e = sample_fixed_weight(k.params.n, k.params.noise_weight(), rng);
  return encode_with(m ? k.G1 : k.G0, k.z, u, e);
}

bool decode_zero_bit(const ZeroBitKeys& k, const BitVector& x) {
  if (x.n != k.params.n) throw std::invalid_argument("decode: length mismatch");
  size_t wt = mat_vec_sparse(k.H, x ^ k.z).weight();
  return weight_below_threshold(wt, k.params.r, k.params.zeta);
}

std::optional<int> decode_single_bit(const SingleBitKeys& k, const BitVector& x) {
  if (x.n != k.params.n) throw std::invalid_argument("decode: length mismatch");
  BitVector y = x ^ k.z;
  size_t w0 = mat_vec_sparse(k.H0, y).weight();
  size_t w1 = mat_vec_sparse(k.H1, y).weight();
  const size_t r = k.params.r;
  const Rational& zeta = k.params.zeta;
  bool zero_fires = weight_below_threshold(w0, r, zeta) &&
                    weight_above_threshold(w1, r, zeta);
  bool one_fires = weight_below_threshold(w1, r, zeta) &&
                   weight_above_threshold(w0, r, zeta);
#ifdef PRC_TEST_HOOKS
  assert(!(zero_fires && one_fires));
#endif
  if (zero_fires) return 0;
  if (one_fires) return 1;
  return std::nullopt;
}

#ifdef PRC_TEST_HOOKS
EncodeParts encode_zero_bit_parts(const ZeroBitKeys& k, Rng& rng) {
  EncodeParts out;
  out.u = draw_u(k.params.d, rng, false);
  out.e = sample_fixed_weight(k.params.n, k.params.noise_weight(), rng);
  out.x = encode_with(k.G, k.z, out.u, out.e);
  return out;
}

EncodeParts encode_single_bit_parts(const SingleBitKeys& k, int m, Rng& rng) {
  EncodeParts out;
  out.u = draw_u(k.params.d, rng, true);
  out.e = sample_fixed_weight(k.params.n, k.params.noise_weight(), rng);
  out.x = encode_with(m ? k.G1 : k.G0, k.z, out.u, out.e);
  return out;
}
#endif

}  // namespace prc
