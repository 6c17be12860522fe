#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <set>

#include "prc/fixtures.hpp"
#include "prc/games.hpp"
#include "prc/transforms.hpp"

using namespace prc;

namespace {

// canned scheme whose behavior the test scripts: codewords are the message
// repeated, decode answers whatever the test planted
struct StubState {
  std::optional<BitVector> forced;
};

SchemeView stub_view(std::shared_ptr<StubState> st) {
  SchemeView v;
  v.n = 32;
  v.msg_bits = 4;
  v.encode = [](const BitVector& m, Rng&) {
    BitVector c(32);
    for (size_t i = 0; i < 32; ++i) c.set(i, m.get(i % 4));
    return c;
  };
  v.decode = [st](const BitVector&) { return st->forced; };
  return v;
}

BitVector msg_of(uint64_t bits, size_t n) {
  BitVector m(n);
  for (size_t i = 0; i < n; ++i) m.set(i, (bits >> i) & 1);
  return m;
}

SparseParityMatrix make_sparse(size_t cols, std::vector<std::vector<uint32_t>> rows) {
  SparseParityMatrix H;
  H.cols = cols;
  H.rows = rows.size();
  H.row_weight = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    for (uint32_t c : r) H.idx.push_back(c);
  return H;
}

struct TwoQueryAdversary final : RobustSkAdversary {
  BitVector run(EncodeOracle& oracle, size_t, size_t msg_bits, Rng&) override {
    oracle.query(msg_of(0x5, msg_bits));
    oracle.query(msg_of(0xa, msg_bits));
    return oracle.transcript->entries.front().second;  // replay the first
  }
};

struct WrongLengthAdversary final : RobustSkAdversary {
  BitVector run(EncodeOracle&, size_t, size_t, Rng&) override { return BitVector(7); }
};

struct ThrowingAdversary final : RobustSkAdversary {
  BitVector run(EncodeOracle&, size_t, size_t, Rng&) override {
    throw std::runtime_error("protocol violation");
  }
};

struct MalformedPkAdversary final : RobustPkAdversary {
  PkAttackOutput run(const SchemeView& scheme, Rng& rng) override {
    PkAttackOutput out;
    out.m = BitVector(scheme.msg_bits);
    out.replay_seed = rng.next_u64();
    out.x = BitVector(scheme.n + 1);
    return out;
  }
};

// scripted: some encodes, then decode perturbed own codewords and fresh
// uniform strings; answers land in the outcome for cross-world comparison
struct ScriptedDistinguisher final : Distinguisher {
  size_t encodes = 20, decodes = 20;
  Rational budget_rate;
  std::vector<BitVector> sent;  // messages of the last run
  size_t msg_bits = 0, n = 0;

  int run(WorldOracle& world, Rng& rng) override {
    sent.clear();
    std::vector<BitVector> words;
    for (size_t i = 0; i < encodes; ++i) {
      BitVector m = rng.uniform_bits(msg_bits);
      sent.push_back(m);
      words.push_back(world.enc(m));
    }
    size_t budget = (size_t)((budget_rate.num * (long long)n) / budget_rate.den);
    int clean = 0;
    for (size_t i = 0; i < decodes; ++i) {
      if (i % 2 == 0) {
        size_t pick = i / 2 % words.size();
        BitVector x = words[pick] ^ sample_fixed_weight(n, rng.below(budget + 1), rng);
        auto got = world.dec(x);
        if (got && *got == sent[pick]) clean++;
      } else {
        if (!world.dec(rng.uniform_bits(n))) clean++;
      }
    }
    return clean == (int)decodes ? 1 : 0;
  }
};

// counts one bits across all encode answers, makes no decode queries; the
// harness runs it once per world, so the history holds one entry per world
struct MonobitDistinguisher final : Distinguisher {
  size_t encodes = 20, msg_bits = 0;
  std::vector<std::pair<size_t, size_t>> history;  // (ones, bits) per run
  int run(WorldOracle& world, Rng& rng) override {
    size_t ones = 0, bits = 0;
    for (size_t i = 0; i < encodes; ++i) {
      BitVector c = world.enc(rng.uniform_bits(msg_bits));
      ones += c.weight();
      bits += c.n;
    }
    history.push_back({ones, bits});
    return 0;
  }
};

}  // namespace

TEST_CASE("win scan covers every transcript entry") {
  auto st = std::make_shared<StubState>();
  auto v = stub_view(st);
  TwoQueryAdversary adv;
  Rational delta(1, 8);  // budget 4 of 32, the two codewords differ on 16

  // decode answers the second message: entry one is violated at distance 0
  st->forced = msg_of(0xa, 4);
  auto g = run_robust_sk_game(v, adv, delta, 1);
  CHECK(g.adversary_wins);

  // decode answers the replayed entry's own message: no violated neighbor
  st->forced = msg_of(0x5, 4);
  g = run_robust_sk_game(v, adv, delta, 2);
  CHECK(!g.adversary_wins);

  // bottom answers violate the replayed entry too
  st->forced = std::nullopt;
  g = run_robust_sk_game(v, adv, delta, 3);
  CHECK(g.adversary_wins);
}

TEST_CASE("protocol violations abort instead of scoring") {
  auto st = std::make_shared<StubState>();
  auto v = stub_view(st);
  WrongLengthAdversary wrong;
  ThrowingAdversary thrower;
  auto g = run_robust_sk_game(v, wrong, Rational(1, 8), 4);
  CHECK(g.aborted);
  CHECK(!g.adversary_wins);
  g = run_robust_sk_game(v, thrower, Rational(1, 8), 5);
  CHECK(g.aborted);
}

TEST_CASE("replaying an honest codeword loses") {
  SeededRng rng(3001);
  auto k = keygen_zero_bit(fixtures::zb_unit(), rng);
  auto v = view_of(k);
  ReplayAdversary adv;
  for (uint64_t seed = 0; seed < 20; ++seed)
    CHECK(!run_robust_sk_game(v, adv, k.params.delta, seed).adversary_wins);
}

TEST_CASE("random flips inside the budget rarely beat the detector") {
  SeededRng rng(3002);
  auto k = keygen_zero_bit(fixtures::zb_unit(), rng);
  auto v = view_of(k);
  RandomFlipAdversary adv;
  adv.rate = k.params.delta;
  int wins = 0;
  for (uint64_t seed = 0; seed < 100; ++seed)
    if (run_robust_sk_game(v, adv, k.params.delta, seed).adversary_wins) wins++;
  CHECK(wins <= 5);
}

TEST_CASE("a string with no transcript neighbor loses by definition") {
  SeededRng rng(3003);
  auto k = keygen_zero_bit(fixtures::zb_unit(), rng);
  auto v = view_of(k);
  UniformAdversary adv;
  for (uint64_t seed = 0; seed < 50; ++seed)
    CHECK(!run_robust_sk_game(v, adv, k.params.delta, seed).adversary_wins);
}

TEST_CASE("public-key game: replay and budget flips lose, malformed output aborts") {
  SeededRng rng(3004);
  auto k = keygen_single_bit(fixtures::sb_unit(), rng);
  auto v = view_of(k);

  RandomFlipPkAdversary replay;
  replay.rate = Rational(0, 1);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto g = run_robust_pk_game(v, replay, k.params.delta, seed);
    CHECK(!g.aborted);
    CHECK(!g.adversary_wins);
  }

  RandomFlipPkAdversary flipper;
  flipper.rate = k.params.delta;
  int wins = 0;
  for (uint64_t seed = 0; seed < 30; ++seed)
    if (run_robust_pk_game(v, flipper, k.params.delta, seed).adversary_wins) wins++;
  CHECK(wins <= 1);

  MalformedPkAdversary bad;
  auto g = run_robust_pk_game(v, bad, k.params.delta, 7);
  CHECK(g.aborted);
}

TEST_CASE("gaussian elimination forces chosen checks to fail") {
  // k = 0 asks for nothing
  auto H = make_sparse(4, {{0, 1}, {2, 3}, {1, 2}});
  BitVector base(4);
  auto e0 = gaussian_elimination_attack(H, 0, base);
  REQUIRE(e0.has_value());
  CHECK(e0->weight() == 0);

  // all three checks must flip to unsatisfied
  auto e = gaussian_elimination_attack(H, 3, base);
  REQUIRE(e.has_value());
  CHECK(e->weight() <= 3);
  BitVector attacked = base ^ *e;
  BitVector checks = mat_vec_sparse(H, attacked);
  CHECK(checks.weight() == 3);

  // a single weight-two row on a satisfied check flips one of its two spots
  auto one = make_sparse(4, {{0, 1}});
  auto e1 = gaussian_elimination_attack(one, 1, base);
  REQUIRE(e1.has_value());
  CHECK(e1->weight() == 1);
  CHECK((e1->get(0) || e1->get(1)));

  // dependent rows with conflicting parities admit no solution
  auto dep = make_sparse(4, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(!gaussian_elimination_attack(dep, 3, base).has_value());
}

TEST_CASE("gaussian elimination attack: random instances satisfy the contract") {
  SeededRng rng(3005);
  int solved = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto H = sample_sparse_rows(64, 4, 32, rng);
    BitVector base = rng.uniform_bits(64);
    auto e = gaussian_elimination_attack(H, 20, base);
    if (!e) continue;
    solved++;
    CHECK(e->weight() <= 20);
    BitVector checks = mat_vec_sparse(H, base ^ *e);
    size_t front = 0;
    for (size_t i = 0; i < 20; ++i) front += checks.get(i);
    CHECK(front == 20);
  }
  CHECK(solved >= 45);
}

TEST_CASE("gaussian elimination attack defeats the detector with a legal budget") {
  SeededRng rng(3006);
  auto p = fixtures::zb_derived_speed();
  auto k = keygen_zero_bit(p, rng);
  auto v = view_of(k);
  size_t kk = (p.r * 6 + 9) / 10;  // 0.6 r, rounded up
  REQUIRE(kk <= p.flip_budget());

  GaussianPkAdversary adv;
  adv.sk = &k;
  adv.k = kk;
  int wins = 0;
  for (uint64_t seed = 0; seed < 20; ++seed)
    if (run_robust_pk_game(v, adv, p.delta, seed).adversary_wins) wins++;
  CHECK(wins >= 19);
}

TEST_CASE("quarter attack midpoint splits the disagreement set") {
  SeededRng rng(3007);
  auto k = keygen_single_bit(fixtures::sb_unit(), rng);
  auto v = view_of(k);
  for (int trial = 0; trial < 20; ++trial) {
    auto qa = quarter_attack(v, rng);
    size_t d = hamming_distance(qa.x0, qa.x1);
    CHECK(hamming_distance(qa.mid, qa.x0) == d / 2);
    CHECK(hamming_distance(qa.mid, qa.x1) == d - d / 2);
  }

  // forced equal endpoints collapse the midpoint onto them
  auto st = std::make_shared<StubState>();
  auto stub = stub_view(st);
  stub.msg_bits = 1;
  stub.encode = [](const BitVector&, Rng&) { return BitVector(32); };
  auto qa = quarter_attack(stub, rng);
  CHECK(qa.mid == qa.x0);
  CHECK(qa.mid == qa.x1);
}

TEST_CASE("opposite-bit encodings sit near half distance at demo scale") {
  SeededRng rng(3008);
  auto k = keygen_single_bit(fixtures::sb_hand(), rng);
  auto v = view_of(k);
  int inside = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto qa = quarter_attack(v, rng);
    double f = (double)hamming_distance(qa.x0, qa.x1) / k.params.n;
    if (f >= 0.45 && f <= 0.55) inside++;
  }
  CHECK(inside >= 99);
}

TEST_CASE("real and ideal worlds agree on scripted decode queries") {
  SeededRng rng(3009);
  auto keys = keygen_sharp(fixtures::transform_block_unit(),
                           ecc_by_name(fixtures::kSharpEcc), rng);
  auto v = view_of(keys);
  ScriptedDistinguisher d;
  d.msg_bits = v.msg_bits;
  d.n = v.n;
  d.budget_rate = keys.delta;
  auto g = run_real_ideal_games(v, d, keys.delta, 11);

  REQUIRE(g.answers_real.size() == d.decodes);
  REQUIRE(g.answers_ideal.size() == d.decodes);
  int agree = 0;
  for (size_t i = 0; i < d.decodes; ++i)
    if (g.answers_real[i] == g.answers_ideal[i]) agree++;
  CHECK(agree >= (int)d.decodes - 1);

  // the ideal world can only ever hand back a transcript message
  std::set<std::vector<uint8_t>> sent;
  for (const auto& m : d.sent) sent.insert(pack_bits(m));
  for (const auto& a : g.answers_ideal)
    if (a) CHECK(sent.count(pack_bits(*a)) == 1);
}

TEST_CASE("with no decode queries the worlds pass a shared monobit count") {
  SeededRng rng(3010);
  auto keys = keygen_sharp(fixtures::transform_block_unit(),
                           ecc_by_name(fixtures::kSharpEcc), rng);
  auto v = view_of(keys);
  MonobitDistinguisher d;
  d.msg_bits = v.msg_bits;
  auto g = run_real_ideal_games(v, d, keys.delta, 12);
  (void)g;
  REQUIRE(d.history.size() == 2);  // real world first, ideal second
  double p1 = (double)d.history[0].first / d.history[0].second;
  double p2 = (double)d.history[1].first / d.history[1].second;
  double pooled = (p1 + p2) / 2;
  double z = std::fabs(p1 - p2) /
             std::sqrt(pooled * (1 - pooled) * 2.0 / d.history[0].second);
  CHECK(z < 3.0);
}

TEST_CASE("cca game: honest answers in both worlds, fallback counter stays clean") {
  SeededRng rng(3011);
  auto keys = keygen_cca(fixtures::cca_block(), ecc_by_name(fixtures::kCcaEcc1),
                         ecc_by_name(fixtures::kCcaEcc2), rng);
  auto v = view_of(keys);
  size_t budget = (size_t)keys.delta.num * v.n / (size_t)keys.delta.den;

  // real world: decode own re-encoding
  struct RealProbe final : Distinguisher {
    size_t msg_bits;
    int run(WorldOracle& world, Rng& rng) override {
      BitVector m = rng.uniform_bits(msg_bits);
      auto got = world.dec(world.enc(m));
      return got && *got == m ? 1 : 0;
    }
  };
  RealProbe real_probe;
  real_probe.msg_bits = v.msg_bits;
  auto g0 = run_cca_game(v, real_probe, keys.delta, 0, 21);
  CHECK(g0.output_bit == 1);
  CHECK(g0.real_decode_calls == 1);

  // fake world: transcript neighbors resolve by lookup, never the decoder
  struct LookupProbe final : Distinguisher {
    size_t msg_bits, n, budget;
    int run(WorldOracle& world, Rng& rng) override {
      BitVector m = rng.uniform_bits(msg_bits);
      BitVector c = world.enc(m);
      auto got = world.dec(c ^ sample_fixed_weight(n, budget, rng));
      return got && *got == m ? 1 : 0;
    }
  };
  LookupProbe lookup;
  lookup.msg_bits = v.msg_bits;
  lookup.n = v.n;
  lookup.budget = budget;
  auto g1 = run_cca_game(v, lookup, keys.delta, 1, 22);
  CHECK(g1.output_bit == 1);
  CHECK(g1.real_decode_calls == 0);

  // fake world falls back to the real decoder for self-made codewords
  struct SelfEncoder final : Distinguisher {
    const CcaKeys* keys;
    int run(WorldOracle& world, Rng& rng) override {
      BitVector m = rng.uniform_bits(keys->msg_bits());
      auto got = world.dec(cca_encode(*keys, m, rng));
      return got && *got == m ? 1 : 0;
    }
  };
  SelfEncoder self;
  self.keys = &keys;
  auto g2 = run_cca_game(v, self, keys.delta, 1, 23);
  CHECK(g2.output_bit == 1);
  CHECK(g2.real_decode_calls == 1);
}

TEST_CASE("channels respect their weight bounds") {
  SeededRng rng(3012);
  BitVector x = rng.uniform_bits(400);

  Channel fw{Channel::Kind::fixed_weight_random, Rational(1, 10)};
  BitVector y = fw.apply(x, rng);
  CHECK(hamming_distance(x, y) == 40);

  Channel burst{Channel::Kind::burst, Rational(1, 10)};
  for (int i = 0; i < 10; ++i) {
    BitVector b = burst.apply(x, rng);
    BitVector diff = b ^ x;
    CHECK(diff.weight() == 40);
    // support is one contiguous run modulo the length
    size_t first_gap = 0;
    std::vector<size_t> support;
    for (size_t j = 0; j < diff.n; ++j)
      if (diff.get(j)) support.push_back(j);
    size_t runs = 0;
    for (size_t j = 0; j < support.size(); ++j)
      if (j == 0 || support[j] != support[j - 1] + 1) runs++;
    (void)first_gap;
    CHECK(runs <= 2);  // wrap-around splits into at most two pieces
  }

  Channel adv{Channel::Kind::adversary_driven, Rational(1, 2)};
  CHECK(adv.apply(x, rng) == x);
}

TEST_CASE("wilson interval brackets the observed frequency") {
  auto w = wilson_interval(50, 100, 2.0);
  CHECK(w.lo < 0.5);
  CHECK(w.hi > 0.5);
  CHECK(w.lo > 0.35);
  CHECK(w.hi < 0.65);

  auto zero = wilson_interval(0, 100, 2.0);
  CHECK(zero.lo == doctest::Approx(0.0));
  CHECK(zero.hi < 0.1);

  auto all = wilson_interval(100, 100, 2.0);
  CHECK(all.hi == doctest::Approx(1.0));
  CHECK(all.lo > 0.9);

  // more data tightens the bracket
  auto wide = wilson_interval(8, 10, 2.0);
  auto tight = wilson_interval(800, 1000, 2.0);
  CHECK(tight.hi - tight.lo < wide.hi - wide.lo);
}

TEST_CASE("identical seeds replay identical outcomes") {
  SeededRng rng(3013);
  auto k = keygen_zero_bit(fixtures::zb_unit(), rng);
  auto v = view_of(k);
  RandomFlipAdversary adv;
  adv.rate = k.params.delta;
  auto a = run_robust_sk_game(v, adv, k.params.delta, 99);
  auto b = run_robust_sk_game(v, adv, k.params.delta, 99);
  CHECK(render_outcome(a) == render_outcome(b));
  CHECK(a.adversary_wins == b.adversary_wins);
  auto c = run_robust_sk_game(v, adv, k.params.delta, 100);
  CHECK(render_outcome(a) != render_outcome(c));
}
