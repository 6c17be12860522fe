#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prc/ldpc.hpp"

using namespace prc;

namespace {

// rng stub that always answers zero: forces u = 0 and deterministic swaps
struct ZeroRng final : Rng {
  uint64_t next_u64() override { return 0; }
};

SchemeParams small_zero_bit() {
  SchemeParams p;
  p.n = 512; p.r = 512; p.t = 2; p.d = 8;
  p.eta = Rational(1, 5);
  p.zeta = Rational(1, 16);
  p.delta = Rational(1, 10);
  p.validate();
  return p;
}

// r strictly below n: at r = n the kernel of a random even-weight H collapses
// to unit vectors on untouched coordinates plus the all-ones vector, and the
// opposite detector annihilates those too, so single-bit decode loses its
// anti-detector margin.  Keeping r/n < 1 keeps kernel draws near-balanced.
SchemeParams small_single_bit() {
  SchemeParams p;
  p.n = 512; p.r = 384; p.t = 4; p.d = 8;
  p.eta = Rational(1, 16);
  p.zeta = Rational(1, 8);
  p.delta = Rational(1, 100);
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("threshold comparisons are exact and strict") {
  // (1/2 - 1/4) * 16 = 4: weight 4 sits exactly on the line
  Rational zeta(1, 4);
  CHECK(weight_below_threshold(3, 16, zeta));
  CHECK(!weight_below_threshold(4, 16, zeta));
  CHECK(!weight_above_threshold(4, 16, zeta));
  CHECK(weight_above_threshold(5, 16, zeta));
}

TEST_CASE("zero-bit keygen: HG = 0, row weights, z length") {
  SeededRng rng(41);
  auto p = small_zero_bit();
  for (int rep = 0; rep < 10; ++rep) {
    auto k = keygen_zero_bit(p, rng);
    CHECK(k.z.n == p.n);
    CHECK(k.H.rows == p.r);
    CHECK(k.G.cols == p.d);
    for (size_t i = 0; i < k.H.rows; ++i) CHECK(k.H.row(i).size() == p.t);
    for (const auto& col : k.G.col)
      CHECK(mat_vec_sparse(k.H, col).weight() == 0);
  }
}

TEST_CASE("zero-bit generator usually has full column rank at easy ratios") {
  SeededRng rng(42);
  SchemeParams p;
  p.n = 64; p.r = 16; p.t = 4; p.d = 4;
  p.eta = Rational(1, 8); p.zeta = Rational(1, 8); p.delta = Rational(1, 10);
  p.validate();
  int full = 0;
  for (int rep = 0; rep < 100; ++rep) {
    auto k = keygen_zero_bit(p, rng);
    if (rank_of(k.G.col) == p.d) full++;
  }
  CHECK(full >= 99);
}

TEST_CASE("encode decomposition: x = Gu + z + e with wt(e) = floor(eta n)") {
  SeededRng rng(43);
  auto p = small_zero_bit();
  auto k = keygen_zero_bit(p, rng);
  for (int rep = 0; rep < 20; ++rep) {
    auto parts = encode_zero_bit_parts(k, rng);
    CHECK(parts.e.weight() == p.noise_weight());
    CHECK(parts.e.weight() == 102);  // floor(512/5)
    CHECK(parts.x == (mat_vec_dense(k.G, parts.u) ^ k.z ^ parts.e));
  }
}

TEST_CASE("degenerate encode: eta = 0 and zeroed randomness returns z") {
  SeededRng rng(44);
  auto p = small_zero_bit();
  p.eta = Rational(0, 1);
  p.validate();
  auto k = keygen_zero_bit(p, rng);
  ZeroRng zr;
  CHECK(encode_zero_bit(k, zr) == k.z);
  CHECK(decode_zero_bit(k, k.z));  // wt(H 0) = 0
}

TEST_CASE("zero-bit round trip and robustness to delta n flips") {
  SeededRng rng(45);
  auto p = small_zero_bit();
  auto k = keygen_zero_bit(p, rng);
  int plain = 0, flipped = 0;
  const int trials = 400;
  for (int i = 0; i < trials; ++i) {
    BitVector x = encode_zero_bit(k, rng);
    if (decode_zero_bit(k, x)) plain++;
    BitVector noise = sample_fixed_weight(p.n, p.flip_budget(), rng);
    if (decode_zero_bit(k, x ^ noise)) flipped++;
  }
  CHECK(plain >= (int)(0.99 * trials));
  CHECK(flipped >= (int)(0.95 * trials));
}

TEST_CASE("zero-bit soundness: uniform inputs read as unmarked") {
  SeededRng rng(46);
  auto p = small_zero_bit();
  auto k = keygen_zero_bit(p, rng);
  int bot = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i)
    if (!decode_zero_bit(k, rng.uniform_bits(p.n))) bot++;
  CHECK(bot >= (int)(0.95 * trials));
}

TEST_CASE("one-time-pad equivariance: shifting z and x together is invisible") {
  SeededRng rng(47);
  auto p = small_zero_bit();
  auto k = keygen_zero_bit(p, rng);
  for (int rep = 0; rep < 20; ++rep) {
    BitVector x = rng.coin() ? encode_zero_bit(k, rng) : rng.uniform_bits(p.n);
    BitVector s = rng.uniform_bits(p.n);
    auto shifted = k;
    shifted.z = k.z ^ s;
    CHECK(decode_zero_bit(k, x) == decode_zero_bit(shifted, x ^ s));
  }
}

TEST_CASE("detection rate is monotone non-increasing in flip weight") {
  SeededRng rng(48);
  auto p = small_zero_bit();
  p.eta = Rational(0, 1);  // isolate the sweep variable
  p.validate();
  auto k = keygen_zero_bit(p, rng);
  const int trials = 400;
  std::vector<double> rate;
  for (size_t w = 0; w <= (size_t)(0.45 * (double)p.n); w += p.n / 20) {
    int det = 0;
    for (int i = 0; i < trials; ++i) {
      BitVector u = rng.uniform_bits(p.d);
      BitVector e = sample_fixed_weight(p.n, w, rng);
      if (decode_zero_bit(k, mat_vec_dense(k.G, u) ^ k.z ^ e)) det++;
    }
    rate.push_back((double)det / trials);
  }
  // adjacent steps may wobble by Monte-Carlo noise only
  double slack = 3.0 * std::sqrt(0.25 / trials);
  for (size_t i = 0; i + 1 < rate.size(); ++i)
    CHECK(rate[i + 1] <= rate[i] + slack);
  CHECK(rate.front() == 1.0);
  CHECK(rate.back() < 0.05);
}

TEST_CASE("single-bit keygen: both pairs valid, generators jointly independent") {
  SeededRng rng(49);
  SchemeParams p;
  p.n = 256; p.r = 64; p.t = 4; p.d = 8;
  p.eta = Rational(1, 16); p.zeta = Rational(1, 8); p.delta = Rational(1, 100);
  p.validate();
  int disjoint = 0;
  for (int rep = 0; rep < 100; ++rep) {
    auto k = keygen_single_bit(p, rng);
    CHECK(k.z.n == p.n);
    for (const auto& col : k.G0.col) CHECK(mat_vec_sparse(k.H0, col).weight() == 0);
    for (const auto& col : k.G1.col) CHECK(mat_vec_sparse(k.H1, col).weight() == 0);
    auto both = k.G0.col;
    both.insert(both.end(), k.G1.col.begin(), k.G1.col.end());
    if (rank_of(both) == 2 * p.d) disjoint++;  // span(G0) meets span(G1) in {0}
  }
  CHECK(disjoint >= 99);
}

TEST_CASE("single-bit encode never uses u = 0") {
  SeededRng rng(50);
  auto p = small_single_bit();
  auto k = keygen_single_bit(p, rng);
  for (int i = 0; i < 10000; ++i) {
    auto parts = encode_single_bit_parts(k, i & 1, rng);
    CHECK(parts.u.weight() > 0);
  }
}

TEST_CASE("single-bit round trip, with and without channel flips") {
  SeededRng rng(51);
  auto p = small_single_bit();
  auto k = keygen_single_bit(p, rng);
  const int trials = 300;
  for (int m = 0; m < 2; ++m) {
    int clean = 0, noisy = 0;
    for (int i = 0; i < trials; ++i) {
      BitVector x = encode_single_bit(k, m, rng);
      if (decode_single_bit(k, x) == m) clean++;
      BitVector fl = sample_fixed_weight(p.n, p.flip_budget(), rng);
      if (decode_single_bit(k, x ^ fl) == m) noisy++;
    }
    CHECK(clean >= (int)(0.99 * trials));
    CHECK(noisy >= (int)(0.99 * trials));
  }
}

TEST_CASE("single-bit soundness and exclusivity") {
  SeededRng rng(52);
  auto p = small_single_bit();
  auto k = keygen_single_bit(p, rng);
  int bot = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i)
    if (!decode_single_bit(k, rng.uniform_bits(p.n)).has_value()) bot++;
  CHECK(bot >= (int)(0.98 * trials));

  // x = z makes both residuals zero: both detectors fire, decode must refuse
  CHECK(!decode_single_bit(k, k.z).has_value());
}

TEST_CASE("decode rejects length mismatches") {
  SeededRng rng(53);
  auto p = small_zero_bit();
  auto k = keygen_zero_bit(p, rng);
  CHECK_THROWS(decode_zero_bit(k, BitVector(p.n + 1)));
  auto sp = small_single_bit();
  auto sk = keygen_single_bit(sp, rng);
  CHECK_THROWS(decode_single_bit(sk, BitVector(sp.n - 1)));
}
