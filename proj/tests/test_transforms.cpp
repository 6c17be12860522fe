#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "prc/fixtures.hpp"
#include "prc/transforms.hpp"

using namespace prc;

namespace {

BitVector flip_random(const BitVector& x, size_t count, Rng& rng) {
  return x ^ sample_fixed_weight(x.n, count, rng);
}

MultiBitSkKeys unit_sk_keys(Rng& rng) {
  return keygen_multi_bit_sk(fixtures::transform_block_unit(),
                             ecc_by_name(fixtures::kSharpEcc), rng);
}

MultiBitPkKeys unit_pk_keys(Rng& rng) {
  return keygen_multi_bit_pk(fixtures::cca_block(),
                             ecc_by_name(fixtures::kCcaEcc1),
                             ecc_by_name(fixtures::kCcaEcc2), rng);
}

SharpKeys unit_sharp_keys(Rng& rng) {
  return keygen_sharp(fixtures::transform_block_unit(),
                      ecc_by_name(fixtures::kSharpEcc), rng);
}

CcaKeys unit_cca_keys(Rng& rng) {
  return keygen_cca(fixtures::cca_block(), ecc_by_name(fixtures::kCcaEcc1),
                    ecc_by_name(fixtures::kCcaEcc2), rng);
}

std::vector<uint8_t> packed(const BitVector& v) { return pack_bits(v); }

}  // namespace

TEST_CASE("secret-key rate transform: geometry and length guards") {
  SeededRng rng(2001);
  auto k = unit_sk_keys(rng);
  CHECK(k.msg_bits() == 384);
  CHECK(k.total_bits() == 128 * 512 + 6912);
  CHECK(k.pi.map.size() == k.total_bits());

  BitVector m = rng.uniform_bits(k.msg_bits());
  BitVector c = sk_rate_encode(k, m, rng);
  CHECK(c.n == k.total_bits());

  CHECK_THROWS_AS(sk_rate_encode(k, BitVector(5), rng), std::invalid_argument);
  CHECK_THROWS_AS(sk_rate_decode(k, BitVector(17)), std::invalid_argument);
}

TEST_CASE("secret-key rate transform readback: blocks carry the seed, tail is PRG(r) xor Enc(m)") {
  SeededRng rng(2002);
  auto p = fixtures::transform_block_unit();
  auto ecc = ecc_by_name("rep_3_9");
  auto k = keygen_multi_bit_sk(p, ecc, rng);
  k.pi = Permutation::identity(k.total_bits());  // unscramble the layout

  for (int pass = 0; pass < 2; ++pass) {
    BitVector m = pass == 0 ? BitVector(k.msg_bits()) : rng.uniform_bits(k.msg_bits());
    BitVector r = rng.uniform_bits(k.lambda);
    BitVector c = sk_rate_encode_with_r(k, m, r, rng);

    BitVector tail = slice_bits(c, k.lambda * p.n, ecc.n_out);
    CHECK(tail == (prg(r, ecc.n_out) ^ ecc_encode(ecc, m)));

    size_t matched = 0;
    for (size_t i = 0; i < k.lambda; ++i) {
      auto bit = decode_single_bit(k.block, slice_bits(c, i * p.n, p.n));
      if (bit && *bit == (r.get(i) ? 1 : 0)) matched++;
    }
    CHECK(matched == k.lambda);
  }
}

TEST_CASE("secret-key rate transform: noiseless round trip") {
  SeededRng rng(2003);
  auto k = unit_sk_keys(rng);
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    auto back = sk_rate_decode(k, sk_rate_encode(k, m, rng));
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 99);
}

TEST_CASE("secret-key rate transform survives spread substitutions") {
  SeededRng rng(2004);
  auto k = unit_sk_keys(rng);
  size_t budget = k.total_bits() / 64;
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(sk_rate_encode(k, m, rng), budget, rng);
    auto back = sk_rate_decode(k, x);
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 99);
}

TEST_CASE("secret-key rate transform spreads a concentrated burst") {
  // flipping one contiguous run of the emitted word lands all over the
  // pre-permutation layout, so no single block eats the whole budget
  SeededRng rng(2005);
  int ok = 0;
  for (int key = 0; key < 3; ++key) {
    auto k = unit_sk_keys(rng);
    size_t burst = k.total_bits() / 64;  // more than two blocks' worth
    for (int trial = 0; trial < 10; ++trial) {
      BitVector m = rng.uniform_bits(k.msg_bits());
      BitVector x = sk_rate_encode(k, m, rng);
      for (size_t i = 0; i < burst; ++i) x.flip(i);
      auto back = sk_rate_decode(k, x);
      if (back && *back == m) ok++;
    }
  }
  CHECK(ok >= 29);
}

TEST_CASE("secret-key rate transform rejects unrelated strings") {
  SeededRng rng(2006);
  auto k = unit_sk_keys(rng);
  int bot = 0;
  for (int trial = 0; trial < 200; ++trial)
    if (!sk_rate_decode(k, rng.uniform_bits(k.total_bits()))) bot++;
  CHECK(bot >= 196);
}

TEST_CASE("public-key rate transform: halves and length are pinned by the code pair") {
  SeededRng rng(2007);
  auto k = unit_pk_keys(rng);
  size_t n1 = k.block.params.n;
  CHECK(k.msg_bits() == 384);
  CHECK(k.block_count() == 384);
  CHECK(k.block_count() * n1 == k.ecc2.n_out);       // equal halves
  CHECK(k.total_bits() == 2 * k.msg_bits() * n1);    // 2kj emitted bits

  BitVector c = pk_rate_encode(k, rng.uniform_bits(k.msg_bits()), rng);
  CHECK(c.n == 195840);

  // seed code must carry exactly lambda bits, mask code must cover the blocks
  CHECK_THROWS_AS(keygen_multi_bit_pk(fixtures::cca_block(),
                                      ecc_by_name("rsrep_96_48_9"),
                                      ecc_by_name(fixtures::kCcaEcc2), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(keygen_multi_bit_pk(fixtures::cca_block(),
                                      ecc_by_name(fixtures::kCcaEcc1),
                                      ecc_by_name("rsrep_96_48_9"), rng),
                  std::invalid_argument);
}

TEST_CASE("public-key rate transform: noiseless round trip") {
  SeededRng rng(2008);
  auto k = unit_pk_keys(rng);
  for (int trial = 0; trial < 50; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    auto back = pk_rate_decode(k, pk_rate_encode(k, m, rng));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
}

TEST_CASE("public-key rate transform corrects its flip budget") {
  SeededRng rng(2009);
  auto k = unit_pk_keys(rng);
  size_t budget = (k.total_bits() * 1) / 100;  // the block scheme's delta
  for (int trial = 0; trial < 50; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(pk_rate_encode(k, m, rng), budget, rng);
    auto back = pk_rate_decode(k, x);
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
}

TEST_CASE("public-key rate transform rejects unrelated strings") {
  SeededRng rng(2010);
  auto k = unit_pk_keys(rng);
  for (int trial = 0; trial < 100; ++trial)
    CHECK(!pk_rate_decode(k, rng.uniform_bits(k.total_bits())));
}

TEST_CASE("sharp wrapper: round trip and fresh-seed distinctness") {
  SeededRng rng(2011);
  auto k = unit_sharp_keys(rng);
  CHECK(k.msg_bits() == 128);
  CHECK(k.total_bits() == 72448);

  int ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    auto back = sharp_decode(k, sharp_encode(k, m, rng));
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 49);

  BitVector m = rng.uniform_bits(k.msg_bits());
  std::set<std::vector<uint8_t>> seen;
  for (int trial = 0; trial < 100; ++trial) seen.insert(packed(sharp_encode(k, m, rng)));
  CHECK(seen.size() == 100);
}

TEST_CASE("sharp wrapper: canonical form is deterministic, encode replays from its rng") {
  SeededRng rng(2012);
  auto k = unit_sharp_keys(rng);
  BitVector m = rng.uniform_bits(k.msg_bits());
  BitVector r = rng.uniform_bits(kLambda);
  CHECK(sharp_canonical(k, r, m) == sharp_canonical(k, r, m));

  SeededRng a(77), b(77), c(78), d(77);
  CHECK(sharp_encode(k, m, a) == sharp_encode(k, m, b));
  CHECK(sharp_encode(k, m, d) != sharp_encode(k, m, c));
}

TEST_CASE("sharp wrapper accepts at the flip budget and rejects one past it") {
  SeededRng rng(2013);
  auto k = unit_sharp_keys(rng);
  size_t budget = (size_t)k.delta.num * k.total_bits() / (size_t)k.delta.den;
  CHECK(budget == 724);

  int ok = 0;
  for (int trial = 0; trial < 25; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(sharp_encode(k, m, rng), budget, rng);
    auto back = sharp_decode(k, x);
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 24);

  // one extra flip: whenever the payload survives, the exact distance
  // comparison fails, and when it does not the decoder is already at bottom
  for (int trial = 0; trial < 25; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(sharp_encode(k, m, rng), budget + 1, rng);
    CHECK(!sharp_decode(k, x));
  }
}

TEST_CASE("sharp wrapper rejects a corrupted tag") {
  SeededRng rng(2014);
  auto k = unit_sharp_keys(rng);
  for (int trial = 0; trial < 10; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    CHECK(!sharp_decode(k, sharp_encode_corrupt_tag(k, m, rng)));
  }
}

TEST_CASE("sharp wrapper guards its sizes") {
  SeededRng rng(2015);
  auto k = unit_sharp_keys(rng);
  CHECK_THROWS_AS(sharp_encode(k, BitVector(64), rng), std::invalid_argument);
  // code too small to hold seed, message, and tag
  CHECK_THROWS_AS(keygen_sharp(fixtures::transform_block_unit(),
                               ecc_by_name("rsrep_48_16_1"), rng),
                  std::invalid_argument);
}

TEST_CASE("cca wrapper: round trip, distinctness, unrelated strings") {
  SeededRng rng(2016);
  auto k = unit_cca_keys(rng);
  CHECK(k.msg_bits() == 128);
  CHECK(k.total_bits() == 195840);

  int ok = 0;
  for (int trial = 0; trial < 30; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    auto back = cca_decode(k, cca_encode(k, m, rng));
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 29);

  BitVector m = rng.uniform_bits(k.msg_bits());
  std::set<std::vector<uint8_t>> seen;
  for (int trial = 0; trial < 50; ++trial) seen.insert(packed(cca_encode(k, m, rng)));
  CHECK(seen.size() == 50);

  for (int trial = 0; trial < 50; ++trial)
    CHECK(!cca_decode(k, rng.uniform_bits(k.total_bits())));
}

TEST_CASE("cca wrapper boundary: budget flips decode, one more rejects") {
  SeededRng rng(2017);
  auto k = unit_cca_keys(rng);
  size_t budget = (size_t)k.delta.num * k.total_bits() / (size_t)k.delta.den;
  CHECK(budget == 1958);

  int ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(cca_encode(k, m, rng), budget, rng);
    auto back = cca_decode(k, x);
    if (back && *back == m) ok++;
  }
  CHECK(ok >= 19);

  for (int trial = 0; trial < 20; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector x = flip_random(cca_encode(k, m, rng), budget + 1, rng);
    CHECK(!cca_decode(k, x));
  }
}

TEST_CASE("cca wrapper rejects a corrupted tag") {
  SeededRng rng(2018);
  auto k = unit_cca_keys(rng);
  for (int trial = 0; trial < 5; ++trial) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    CHECK(!cca_decode(k, cca_encode_corrupt_tag(k, m, rng)));
  }
}

TEST_CASE("alternative decoder: verbatim and far inputs") {
  SeededRng rng(2019);
  auto k = unit_cca_keys(rng);
  std::vector<RoQuery> log;
  std::vector<IssuedCodeword> issued;

  BitVector m0 = rng.uniform_bits(k.msg_bits());
  BitVector r0 = rng.uniform_bits(kLambda);
  BitVector c0 = cca_canonical(k, r0, m0);
  log.push_back({m0, r0});
  issued.push_back({m0, c0});

  auto got = alt_decode(k, c0, log, issued, rng);
  REQUIRE(got.has_value());
  CHECK(*got == m0);

  CHECK(!alt_decode(k, rng.uniform_bits(k.total_bits()), log, issued, rng));
  CHECK(!alt_decode(k, c0, {}, {}, rng));
}

TEST_CASE("alternative decoder mirrors the real one under fuzzing") {
  SeededRng rng(2020);
  auto k = unit_cca_keys(rng);
  size_t budget = (size_t)k.delta.num * k.total_bits() / (size_t)k.delta.den;

  std::vector<RoQuery> log;
  std::vector<IssuedCodeword> issued;
  for (int i = 0; i < 8; ++i) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector r = rng.uniform_bits(kLambda);
    log.push_back({m, r});
    issued.push_back({m, cca_canonical(k, r, m)});
  }
  for (int i = 0; i < 2; ++i) {  // hashed but never released
    log.push_back({rng.uniform_bits(k.msg_bits()), rng.uniform_bits(kLambda)});
  }

  int agree = 0;
  for (int q = 0; q < 300; ++q) {
    BitVector probe;
    switch (q % 4) {
      case 0: {  // released word, inside the budget
        const auto& e = issued[rng.below(issued.size())];
        probe = flip_random(e.c, rng.below(budget + 1), rng);
        break;
      }
      case 1: {  // released word, pushed past the budget
        const auto& e = issued[rng.below(issued.size())];
        probe = flip_random(e.c, budget + 1 + rng.below(1000), rng);
        break;
      }
      case 2: {  // hashed-only query, honestly re-encoded then dented
        const auto& h = log[8 + rng.below(2)];
        probe = flip_random(cca_canonical(k, h.r, h.m), rng.below(budget + 1), rng);
        break;
      }
      default:
        probe = rng.uniform_bits(k.total_bits());
    }
    auto real = cca_decode(k, probe);
    auto alt = alt_decode(k, probe, log, issued, rng);
    if (real == alt) agree++;
  }
  CHECK(agree == 300);
}

TEST_CASE("alternative decoder tie-break is seed-reproducible") {
  SeededRng rng(2021);
  auto k = unit_cca_keys(rng);
  std::vector<RoQuery> log;
  std::vector<IssuedCodeword> issued;
  BitVector m = rng.uniform_bits(k.msg_bits());
  BitVector r = rng.uniform_bits(kLambda);
  BitVector c = cca_canonical(k, r, m);
  log.push_back({m, r});
  issued.push_back({m, c});

  SeededRng t1(9), t2(9);
  auto a = alt_decode(k, c, log, issued, t1);
  auto b = alt_decode(k, c, log, issued, t2);
  CHECK(a == b);
}
