#include "prc/games.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prc {

namespace {

size_t scaled_budget(const Rational& delta, size_t n) {
  if (delta.num < 0) throw std::invalid_argument("game: negative budget rate");
  return (size_t)(((unsigned long long)delta.num * n) / (unsigned long long)delta.den);
}

// Worlds draw from streams decorrelated from the seed and from each other;
// any fixed derivation keeps outcomes reproducible.
uint64_t derived_seed(uint64_t seed, uint64_t salt) {
  uint64_t x = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::string opt_tag(const std::optional<BitVector>& a) {
  return a ? "wt=" + std::to_string(a->weight()) : "bot";
}

}  // namespace

SchemeView view_of(const ZeroBitKeys& k) {
  SchemeView v;
  v.n = k.params.n;
  v.msg_bits = 0;
  v.encode = [&k](const BitVector&, Rng& rng) { return encode_zero_bit(k, rng); };
  v.decode = [&k](const BitVector& x) -> std::optional<BitVector> {
    if (decode_zero_bit(k, x)) return BitVector(0);
    return std::nullopt;
  };
  return v;
}

SchemeView view_of(const SingleBitKeys& k) {
  SchemeView v;
  v.n = k.params.n;
  v.msg_bits = 1;
  v.encode = [&k](const BitVector& m, Rng& rng) {
    return encode_single_bit(k, m.get(0) ? 1 : 0, rng);
  };
  v.decode = [&k](const BitVector& x) -> std::optional<BitVector> {
    auto got = decode_single_bit(k, x);
    if (!got) return std::nullopt;
    BitVector m(1);
    m.set(0, *got == 1);
    return m;
  };
  return v;
}

SchemeView view_of(const MultiBitSkKeys& k) {
  SchemeView v;
  v.n = k.total_bits();
  v.msg_bits = k.msg_bits();
  v.encode = [&k](const BitVector& m, Rng& rng) { return sk_rate_encode(k, m, rng); };
  v.decode = [&k](const BitVector& x) { return sk_rate_decode(k, x); };
  return v;
}

SchemeView view_of(const MultiBitPkKeys& k) {
  SchemeView v;
  v.n = k.total_bits();
  v.msg_bits = k.msg_bits();
  v.encode = [&k](const BitVector& m, Rng& rng) { return pk_rate_encode(k, m, rng); };
  v.decode = [&k](const BitVector& x) { return pk_rate_decode(k, x); };
  return v;
}

SchemeView view_of(const SharpKeys& k) {
  SchemeView v;
  v.n = k.total_bits();
  v.msg_bits = k.msg_bits();
  v.encode = [&k](const BitVector& m, Rng& rng) { return sharp_encode(k, m, rng); };
  v.decode = [&k](const BitVector& x) { return sharp_decode(k, x); };
  return v;
}

SchemeView view_of(const CcaKeys& k) {
  SchemeView v;
  v.n = k.total_bits();
  v.msg_bits = k.msg_bits();
  v.encode = [&k](const BitVector& m, Rng& rng) { return cca_encode(k, m, rng); };
  v.decode = [&k](const BitVector& x) { return cca_decode(k, x); };
  return v;
}

std::string render_outcome(const GameOutcome& g) {
  std::ostringstream out;
  out << "seed=" << g.seed << "\n";
  for (const auto& line : g.log) out << line << "\n";
  out << "outcome win=" << (g.adversary_wins ? 1 : 0)
      << " aborted=" << (g.aborted ? 1 : 0) << " bit_real=" << g.bit_real
      << " bit_ideal=" << g.bit_ideal << " output_bit=" << g.output_bit
      << " real_decode_calls=" << g.real_decode_calls << "\n";
  return out.str();
}

BitVector Channel::apply(const BitVector& x, Rng& rng) const {
  size_t w = scaled_budget(rate, x.n);
  switch (kind) {
    case Kind::fixed_weight_random:
      return x ^ sample_fixed_weight(x.n, w, rng);
    case Kind::burst: {
      BitVector y = x;
      if (w == 0 || x.n == 0) return y;
      size_t start = rng.below(x.n);
      for (size_t i = 0; i < w; ++i) {
        size_t pos = (start + i) % x.n;
        y.set(pos, !y.get(pos));
      }
      return y;
    }
    case Kind::adversary_driven:
      return x;
  }
  return x;
}

BitVector EncodeOracle::query(const BitVector& m) {
  if (m.n != scheme->msg_bits)
    throw std::invalid_argument("encode oracle: message length");
  BitVector c = scheme->encode(m, *rng);
  transcript->entries.push_back({m, c});
  if (log)
    log->push_back("enc i=" + std::to_string(transcript->entries.size() - 1) +
                   " m_wt=" + std::to_string(m.weight()) +
                   " c_wt=" + std::to_string(c.weight()));
  return c;
}

GameOutcome run_robust_sk_game(const SchemeView& scheme, RobustSkAdversary& adv,
                               const Rational& delta, uint64_t seed) {
  GameOutcome g;
  g.seed = seed;
  SeededRng rng(seed);
  Transcript tr;
  EncodeOracle oracle{&scheme, &tr, &rng, &g.log};
  BitVector x;
  try {
    x = adv.run(oracle, scheme.n, scheme.msg_bits, rng);
  } catch (const std::exception& e) {
    g.aborted = true;
    g.log.push_back(std::string("abort reason=exception what=") + e.what());
    return g;
  }
  if (x.n != scheme.n) {
    g.aborted = true;
    g.log.push_back("abort reason=output_length got=" + std::to_string(x.n));
    return g;
  }
  size_t budget = scaled_budget(delta, scheme.n);
  auto got = scheme.decode(x);
  g.log.push_back("final x_wt=" + std::to_string(x.weight()) + " decode=" + opt_tag(got));
  // the win scan walks every transcript entry, not just the last
  for (size_t i = 0; i < tr.entries.size(); ++i) {
    const auto& [m, c] = tr.entries[i];
    size_t dist = hamming_distance(x, c);
    bool near = dist <= budget;
    bool misdecoded = !(got && *got == m);
    if (near && misdecoded) {
      g.adversary_wins = true;
      g.log.push_back("win entry=" + std::to_string(i) + " dist=" + std::to_string(dist));
    }
  }
  return g;
}

GameOutcome run_robust_pk_game(const SchemeView& scheme, RobustPkAdversary& adv,
                               const Rational& delta, uint64_t seed) {
  GameOutcome g;
  g.seed = seed;
  SeededRng rng(seed);
  PkAttackOutput out;
  try {
    out = adv.run(scheme, rng);
  } catch (const std::exception& e) {
    g.aborted = true;
    g.log.push_back(std::string("abort reason=exception what=") + e.what());
    return g;
  }
  if (out.m.n != scheme.msg_bits || out.x.n != scheme.n) {
    g.aborted = true;
    g.log.push_back("abort reason=malformed m_len=" + std::to_string(out.m.n) +
                    " x_len=" + std::to_string(out.x.n));
    return g;
  }
  // the challenger replays the claimed randomness itself
  SeededRng enc_rng(out.replay_seed);
  BitVector c = scheme.encode(out.m, enc_rng);
  size_t dist = hamming_distance(out.x, c);
  size_t budget = scaled_budget(delta, scheme.n);
  auto got = scheme.decode(out.x);
  g.log.push_back("challenge dist=" + std::to_string(dist) +
                  " budget=" + std::to_string(budget) + " decode=" + opt_tag(got));
  g.adversary_wins = dist <= budget && !(got && *got == out.m);
  return g;
}

namespace {

struct RealWorld final : WorldOracle {
  const SchemeView* scheme;
  Rng* wrng;
  GameOutcome* out;

  BitVector enc(const BitVector& m) override {
    BitVector c = scheme->encode(m, *wrng);
    out->log.push_back("real enc c_wt=" + std::to_string(c.weight()));
    return c;
  }
  std::optional<BitVector> dec(const BitVector& x) override {
    auto a = scheme->decode(x);
    out->answers_real.push_back(a);
    out->log.push_back("real dec " + opt_tag(a));
    return a;
  }
};

struct IdealWorld final : WorldOracle {
  const SchemeView* scheme;
  Rng* wrng;
  GameOutcome* out;
  size_t budget;
  Transcript tr;

  BitVector enc(const BitVector& m) override {
    BitVector c = wrng->uniform_bits(scheme->n);
    tr.entries.push_back({m, c});
    out->log.push_back("ideal enc c_wt=" + std::to_string(c.weight()));
    return c;
  }
  std::optional<BitVector> dec(const BitVector& x) override {
    std::vector<const BitVector*> matches;
    for (const auto& [m, c] : tr.entries)
      if (hamming_distance(x, c) <= budget) matches.push_back(&m);
    std::optional<BitVector> a;
    if (!matches.empty()) a = *matches[wrng->below(matches.size())];
    out->answers_ideal.push_back(a);
    out->log.push_back("ideal dec matches=" + std::to_string(matches.size()) +
                       " " + opt_tag(a));
    return a;
  }
};

}  // namespace

GameOutcome run_real_ideal_games(const SchemeView& scheme, Distinguisher& d,
                                 const Rational& delta, uint64_t seed) {
  GameOutcome g;
  g.seed = seed;
  size_t budget = scaled_budget(delta, scheme.n);

  // same script seed in both worlds so query sequences stay comparable
  SeededRng script_real(seed);
  SeededRng world_real(derived_seed(seed, 1));
  RealWorld rw;
  rw.scheme = &scheme;
  rw.wrng = &world_real;
  rw.out = &g;
  g.bit_real = d.run(rw, script_real);

  SeededRng script_ideal(seed);
  SeededRng world_ideal(derived_seed(seed, 2));
  IdealWorld iw;
  iw.scheme = &scheme;
  iw.wrng = &world_ideal;
  iw.out = &g;
  iw.budget = budget;
  g.bit_ideal = d.run(iw, script_ideal);
  return g;
}

namespace {

struct CcaWorld final : WorldOracle {
  const SchemeView* scheme;
  Rng* wrng;
  GameOutcome* out;
  size_t budget;
  int b;
  Transcript tr;

  BitVector enc(const BitVector& m) override {
    BitVector c = b == 0 ? scheme->encode(m, *wrng) : wrng->uniform_bits(scheme->n);
    tr.entries.push_back({m, c});
    out->log.push_back("enc b=" + std::to_string(b) +
                       " c_wt=" + std::to_string(c.weight()));
    return c;
  }
  std::optional<BitVector> dec(const BitVector& x) override {
    if (b == 1) {
      std::vector<const BitVector*> matches;
      for (const auto& [m, c] : tr.entries)
        if (hamming_distance(x, c) <= budget) matches.push_back(&m);
      if (!matches.empty()) {
        // a transcript neighbor exists: answered without the real decoder
        auto a = *matches[wrng->below(matches.size())];
        out->log.push_back("dec lookup matches=" + std::to_string(matches.size()));
        return a;
      }
    }
    out->real_decode_calls++;
    auto a = scheme->decode(x);
    out->log.push_back("dec real " + opt_tag(a));
    return a;
  }
};

}  // namespace

GameOutcome run_cca_game(const SchemeView& scheme, Distinguisher& adv,
                         const Rational& delta, int b, uint64_t seed) {
  GameOutcome g;
  g.seed = seed;
  SeededRng script(seed);
  SeededRng world(derived_seed(seed, 3));
  CcaWorld w;
  w.scheme = &scheme;
  w.wrng = &world;
  w.out = &g;
  w.budget = scaled_budget(delta, scheme.n);
  w.b = b;
  g.output_bit = adv.run(w, script);
  return g;
}

std::optional<BitVector> gaussian_elimination_attack(const SparseParityMatrix& H,
                                                     size_t k,
                                                     const BitVector& base) {
  if (k > H.rows)
    throw std::invalid_argument("gaussian attack: more checks than rows");
  if (base.n != H.cols) throw std::invalid_argument("gaussian attack: base length");
  std::vector<BitVector> rows;
  std::vector<bool> targets;
  rows.reserve(k);
  targets.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    BitVector row(H.cols);
    bool parity = false;
    for (size_t col : H.row(i)) {
      row.set(col, true);
      parity ^= base.get(col);
    }
    rows.push_back(row);
    targets.push_back(!parity);  // row . (base ^ e) = 1  <=>  row . e = 1 ^ row . base
  }
  return gaussian_eliminate(rows, targets);
}

QuarterAttackResult quarter_attack(const SchemeView& scheme, Rng& rng) {
  if (scheme.msg_bits != 1)
    throw std::invalid_argument("quarter attack: single-bit scheme required");
  BitVector m0(1), m1(1);
  m1.set(0, true);
  QuarterAttackResult qa;
  qa.x0 = scheme.encode(m0, rng);
  qa.x1 = scheme.encode(m1, rng);
  size_t d = hamming_distance(qa.x0, qa.x1);
  size_t half = (d + 1) / 2;  // mid keeps x0's values on the first half
  qa.mid = qa.x1;
  size_t seen = 0;
  for (size_t i = 0; i < qa.mid.n && seen < half; ++i) {
    if (qa.x0.get(i) == qa.x1.get(i)) continue;
    qa.mid.set(i, qa.x0.get(i));
    seen++;
  }
  return qa;
}

BitVector ReplayAdversary::run(EncodeOracle& oracle, size_t, size_t msg_bits,
                               Rng& rng) {
  return oracle.query(rng.uniform_bits(msg_bits));
}

BitVector RandomFlipAdversary::run(EncodeOracle& oracle, size_t n, size_t msg_bits,
                                   Rng& rng) {
  BitVector last(n);
  for (size_t i = 0; i < queries; ++i) last = oracle.query(rng.uniform_bits(msg_bits));
  size_t w = scaled_budget(rate, n);
  return last ^ sample_fixed_weight(n, w, rng);
}

BitVector UniformAdversary::run(EncodeOracle& oracle, size_t n, size_t msg_bits,
                                Rng& rng) {
  oracle.query(rng.uniform_bits(msg_bits));  // make the scan nontrivial
  return rng.uniform_bits(n);
}

PkAttackOutput RandomFlipPkAdversary::run(const SchemeView& scheme, Rng& rng) {
  PkAttackOutput out;
  out.m = rng.uniform_bits(scheme.msg_bits);
  out.replay_seed = rng.next_u64();
  SeededRng enc_rng(out.replay_seed);
  BitVector c = scheme.encode(out.m, enc_rng);
  size_t w = scaled_budget(rate, scheme.n);
  out.x = c ^ sample_fixed_weight(scheme.n, w, rng);
  return out;
}

WilsonInterval wilson_interval(size_t successes, size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  double n = (double)trials;
  double p = (double)successes / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval w;
  w.lo = center - half < 0.0 ? 0.0 : center - half;
  w.hi = center + half > 1.0 ? 1.0 : center + half;
  return w;
}

#ifdef PRC_TEST_HOOKS
PkAttackOutput GaussianPkAdversary::run(const SchemeView& scheme, Rng& rng) {
  PkAttackOutput out;
  out.m = BitVector(scheme.msg_bits);
  out.replay_seed = rng.next_u64();
  SeededRng enc_rng(out.replay_seed);
  BitVector c = scheme.encode(out.m, enc_rng);
  auto e = gaussian_elimination_attack(sk->H, k, c ^ sk->z);
  out.x = e ? c ^ *e : c;  // an infeasible system degrades to a losing replay
  return out;
}
#endif

}  // namespace prc
