// prc: command-line front end for the watermark code library.  keygen,
// encode, decode, and verify-key move material through the bit-exact file
// formats; attack, game, and analyze drive the adversarial harness and the
// combinatorial checks.  Output is line-delimited key=value pairs ending in
// RESULT=pass|fail.  Exit codes: 0 pass, 1 check failed, 2 usage or bad
// parameters, 3 corrupt input file.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prc/analysis.hpp"
#include "prc/fixtures.hpp"
#include "prc/games.hpp"
#include "prc/serialize.hpp"

namespace {

using namespace prc;

int finish(bool pass) {
  std::printf("RESULT=%s\n", pass ? "pass" : "fail");
  return pass ? 0 : 1;
}

std::string to_hex(const std::vector<uint8_t>& bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

std::vector<uint8_t> from_hex(const std::string& s) {
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (s.size() % 2) throw std::invalid_argument("hex string has odd length");
  std::vector<uint8_t> out(s.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = nib(s[2 * i]), lo = nib(s[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit");
    out[i] = (uint8_t)(hi << 4 | lo);
  }
  return out;
}

std::string msg_to_hex(const BitVector& m) { return to_hex(pack_bits(m)); }

// message arguments travel as hex over the pack_bits byte order; pad bits
// past msg_bits must be zero so every message has one spelling
BitVector msg_from_hex(const std::string& s, size_t bits) {
  auto bytes = from_hex(s);
  if (bytes.size() != (bits + 7) / 8)
    throw std::invalid_argument("message is " + std::to_string(bytes.size() * 8) +
                                " packed bits, scheme wants " + std::to_string(bits));
  for (size_t i = bits; i < bytes.size() * 8; ++i)
    if ((bytes[i / 8] >> (i % 8)) & 1)
      throw std::invalid_argument("message pad bits must be zero");
  return bytes.empty() ? BitVector(0) : unpack_bits(bytes.data(), bits);
}

// rates accept "0.075" or "3/40"; both parse exactly
Rational rat_arg(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational::from_decimal(s);
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

const char* scheme_str(SchemeId s) {
  switch (s) {
    case SchemeId::zero_bit: return "zero-bit";
    case SchemeId::single_bit: return "single-bit";
    case SchemeId::sk_rate: return "sk-rate";
    case SchemeId::pk_rate: return "pk-rate";
    case SchemeId::sharp: return "sharp";
    case SchemeId::cca: return "cca";
  }
  return "?";
}

SchemeId scheme_arg(const std::string& s) {
  for (int i = 0; i <= 5; ++i)
    if (s == scheme_str((SchemeId)i)) return (SchemeId)i;
  throw std::invalid_argument("unknown scheme: " + s);
}

SchemeParams fixture_arg(const std::string& name) {
  using namespace fixtures;
  if (name == "zb-hand") return zb_hand();
  if (name == "zb-demo") return zb_derived_demo();
  if (name == "zb-speed") return zb_derived_speed();
  if (name == "zb-unit") return zb_unit();
  if (name == "sb-hand") return sb_hand();
  if (name == "block-unit") return transform_block_unit();
  if (name == "sharp-block") return sharp_block();
  if (name == "cca-block") return cca_block();
  throw std::invalid_argument("unknown fixture: " + name);
}

uint64_t pick_seed(const CLI::Option* opt, uint64_t val) {
  if (opt->count()) return val;
  std::random_device rd;
  return ((uint64_t)rd() << 32) | rd();
}

KeyFile load_key(const std::string& path) { return parse_key(read_file(path)); }

void require_secret(const KeyFile& kf) {
  if (kf.kind != KeyKind::secret)
    throw std::invalid_argument("this command needs the secret key file, got the public half");
}

const SchemeParams& block_params(const KeyFile& kf) {
  switch (kf.scheme) {
    case SchemeId::zero_bit: return kf.zero_bit->params;
    case SchemeId::single_bit: return kf.single_bit->params;
    case SchemeId::sk_rate: return kf.sk_rate->block.params;
    case SchemeId::pk_rate: return kf.pk_rate->block.params;
    case SchemeId::sharp: return kf.sharp->inner.block.params;
    case SchemeId::cca: return kf.cca->inner.block.params;
  }
  throw std::invalid_argument("bad scheme id");
}

size_t codeword_bits(const KeyFile& kf) {
  switch (kf.scheme) {
    case SchemeId::zero_bit:
    case SchemeId::single_bit: return block_params(kf).n;
    case SchemeId::sk_rate: return kf.sk_rate->total_bits();
    case SchemeId::pk_rate: return kf.pk_rate->total_bits();
    case SchemeId::sharp: return kf.sharp->total_bits();
    case SchemeId::cca: return kf.cca->total_bits();
  }
  throw std::invalid_argument("bad scheme id");
}

size_t msg_bits(const KeyFile& kf) {
  switch (kf.scheme) {
    case SchemeId::zero_bit: return 0;
    case SchemeId::single_bit: return 1;
    case SchemeId::sk_rate: return kf.sk_rate->msg_bits();
    case SchemeId::pk_rate: return kf.pk_rate->msg_bits();
    case SchemeId::sharp: return kf.sharp->msg_bits();
    case SchemeId::cca: return kf.cca->msg_bits();
  }
  throw std::invalid_argument("bad scheme id");
}

Rational flip_rate(const KeyFile& kf) {
  switch (kf.scheme) {
    case SchemeId::sharp: return kf.sharp->delta;
    case SchemeId::cca: return kf.cca->delta;
    default: return block_params(kf).delta;
  }
}

SchemeView view_of_key(const KeyFile& kf) {
  switch (kf.scheme) {
    case SchemeId::zero_bit: return view_of(*kf.zero_bit);
    case SchemeId::single_bit: return view_of(*kf.single_bit);
    case SchemeId::sk_rate: return view_of(*kf.sk_rate);
    case SchemeId::pk_rate: return view_of(*kf.pk_rate);
    case SchemeId::sharp: return view_of(*kf.sharp);
    case SchemeId::cca: return view_of(*kf.cca);
  }
  throw std::invalid_argument("bad scheme id");
}

BitVector encode_any(const KeyFile& kf, const BitVector& m, Rng& rng) {
  switch (kf.scheme) {
    case SchemeId::zero_bit: return encode_zero_bit(*kf.zero_bit, rng);
    case SchemeId::single_bit:
      return encode_single_bit(*kf.single_bit, m.get(0) ? 1 : 0, rng);
    case SchemeId::sk_rate: return sk_rate_encode(*kf.sk_rate, m, rng);
    case SchemeId::pk_rate: return pk_rate_encode(*kf.pk_rate, m, rng);
    case SchemeId::sharp: return sharp_encode(*kf.sharp, m, rng);
    case SchemeId::cca: return cca_encode(*kf.cca, m, rng);
  }
  throw std::invalid_argument("bad scheme id");
}

void print_params(const SchemeParams& p) {
  std::printf("n=%zu\n", p.n);
  std::printf("r=%zu\n", p.r);
  std::printf("t=%zu\n", p.t);
  std::printf("d=%zu\n", p.d);
  std::printf("eta=%s\n", p.eta.str().c_str());
  std::printf("zeta=%s\n", p.zeta.str().c_str());
  std::printf("delta=%s\n", p.delta.str().c_str());
  std::printf("lambda=%zu\n", p.lambda);
  if (p.zeta.num > 0)
    std::printf("false_positive_bound=%.6g\n", chernoff_threshold(p.r, p.zeta));
}

BitVector flip_random(const BitVector& c, size_t w, Rng& rng) {
  return c ^ sample_fixed_weight(c.n, w < c.n ? w : c.n, rng);
}

// scripted distinguisher for the real/ideal comparison: a burst of encodes,
// then decode queries alternating a perturbed transcript word with a fresh
// uniform string; the harness logs each world's decode answers
struct ScriptDistinguisher final : Distinguisher {
  size_t queries = 100;
  size_t mbits = 0, n = 0, budget = 0;

  int run(WorldOracle& world, Rng& rng) override {
    std::vector<BitVector> sent, words;
    for (size_t i = 0; i < queries; ++i) {
      BitVector m = rng.uniform_bits(mbits);
      sent.push_back(m);
      words.push_back(world.enc(m));
    }
    int clean = 0;
    for (size_t i = 0; i < queries; ++i) {
      if (i % 2 == 0) {
        size_t pick = (i / 2) % words.size();
        BitVector x = words[pick] ^ sample_fixed_weight(n, rng.below(budget + 1), rng);
        auto got = world.dec(x);
        if (got && *got == sent[pick]) clean++;
      } else {
        if (!world.dec(rng.uniform_bits(n))) clean++;
      }
    }
    return clean == (int)queries ? 1 : 0;
  }
};

// ---- keygen ----

struct KeygenOpts {
  std::string scheme, fixture, params_from, out;
  std::string ecc, ecc1, ecc2;
  std::string eta, zeta, delta;
  uint64_t n = 0, r = 0, t = 0, d = 0;
  bool derive = false;
  uint64_t seed = 0;
  bool have_fixture = false, have_from = false, have_sizes = false;
  bool have_ecc = false, have_ecc12 = false;
};

int cmd_keygen(const KeygenOpts& o) {
  SchemeId scheme = scheme_arg(o.scheme);

  SchemeParams p;
  std::string ecc_name, ecc1_name, ecc2_name;
  if (o.have_fixture) {
    p = fixture_arg(o.fixture);
  } else if (o.have_from) {
    KeyFile src = load_key(o.params_from);
    p = block_params(src);
    if (src.scheme == scheme) {  // same scheme: the ecc choices carry over too
      if (src.sk_rate) ecc_name = src.sk_rate->ecc.name;
      if (src.sharp) ecc_name = src.sharp->inner.ecc.name;
      if (src.pk_rate) { ecc1_name = src.pk_rate->ecc1.name; ecc2_name = src.pk_rate->ecc2.name; }
      if (src.cca) { ecc1_name = src.cca->inner.ecc1.name; ecc2_name = src.cca->inner.ecc2.name; }
    }
  } else if (o.derive) {
    if (o.n == 0 || o.r == 0 || o.delta.empty())
      throw std::invalid_argument("--derive needs --n, --r, and --delta");
    p = scheme == SchemeId::zero_bit
            ? derive_params_zero_bit(o.n, o.r, rat_arg(o.delta))
            : derive_params_single_bit(o.n, o.r, rat_arg(o.delta));
  } else if (o.have_sizes) {
    if (o.n == 0 || o.r == 0 || o.t == 0 || o.d == 0 || o.eta.empty() ||
        o.zeta.empty() || o.delta.empty())
      throw std::invalid_argument(
          "explicit parameters need all of --n --r --t --d --eta --zeta --delta");
    p = fixtures::make(o.n, o.r, o.t, o.d, rat_arg(o.eta), rat_arg(o.zeta),
                       rat_arg(o.delta));
  } else {
    switch (scheme) {  // cheap defaults so a bare keygen answers fast
      case SchemeId::zero_bit: p = fixtures::zb_hand(); break;
      case SchemeId::single_bit: p = fixtures::sb_hand(); break;
      case SchemeId::sk_rate:
      case SchemeId::sharp: p = fixtures::transform_block_unit(); break;
      case SchemeId::pk_rate:
      case SchemeId::cca: p = fixtures::cca_block(); break;
    }
  }
  p.validate();

  if (o.have_ecc) ecc_name = o.ecc;
  if (o.have_ecc12) { ecc1_name = o.ecc1; ecc2_name = o.ecc2; }
  if (ecc_name.empty())
    ecc_name = scheme == SchemeId::sharp ? fixtures::kSharpEcc : "rep_16_3";
  if (ecc1_name.empty()) ecc1_name = fixtures::kCcaEcc1;
  if (ecc2_name.empty()) ecc2_name = fixtures::kCcaEcc2;

  uint64_t seed = o.seed;
  SeededRng rng(seed);

  std::printf("scheme=%s\n", scheme_str(scheme));
  std::printf("seed=%llu\n", (unsigned long long)seed);
  print_params(p);

  std::vector<uint8_t> secret;
  std::optional<std::vector<uint8_t>> pub;
  size_t mbits = 0, cbits = p.n;
  switch (scheme) {
    case SchemeId::zero_bit: {
      auto k = keygen_zero_bit(p, rng);
      secret = serialize_key(k);
      pub = serialize_key(k, KeyKind::public_half);
      break;
    }
    case SchemeId::single_bit: {
      auto k = keygen_single_bit(p, rng);
      secret = serialize_key(k);
      pub = serialize_key(k, KeyKind::public_half);
      mbits = 1;
      break;
    }
    case SchemeId::sk_rate: {
      auto k = keygen_multi_bit_sk(p, ecc_by_name(ecc_name), rng);
      secret = serialize_key(k);
      mbits = k.msg_bits();
      cbits = k.total_bits();
      std::printf("ecc=%s\n", ecc_name.c_str());
      break;
    }
    case SchemeId::pk_rate: {
      auto k = keygen_multi_bit_pk(p, ecc_by_name(ecc1_name), ecc_by_name(ecc2_name), rng);
      secret = serialize_key(k);
      pub = serialize_key(k, KeyKind::public_half);
      mbits = k.msg_bits();
      cbits = k.total_bits();
      std::printf("ecc1=%s\n", ecc1_name.c_str());
      std::printf("ecc2=%s\n", ecc2_name.c_str());
      std::printf("block_count=%zu\n", k.block_count());
      break;
    }
    case SchemeId::sharp: {
      auto k = keygen_sharp(p, ecc_by_name(ecc_name), rng);
      secret = serialize_key(k);
      mbits = k.msg_bits();
      cbits = k.total_bits();
      std::printf("ecc=%s\n", ecc_name.c_str());
      break;
    }
    case SchemeId::cca: {
      auto k = keygen_cca(p, ecc_by_name(ecc1_name), ecc_by_name(ecc2_name), rng);
      secret = serialize_key(k);
      pub = serialize_key(k, KeyKind::public_half);
      mbits = k.msg_bits();
      cbits = k.total_bits();
      std::printf("ecc1=%s\n", ecc1_name.c_str());
      std::printf("ecc2=%s\n", ecc2_name.c_str());
      break;
    }
  }

  std::printf("msg_bits=%zu\n", mbits);
  std::printf("codeword_bits=%zu\n", cbits);
  write_file(o.out, secret);
  std::printf("secret_file=%s\n", o.out.c_str());
  if (pub) {
    write_file(o.out + ".pub", *pub);
    std::printf("public_file=%s.pub\n", o.out.c_str());
  }
  return finish(true);
}

// ---- encode / decode / verify-key ----

int cmd_encode(const std::string& key_path, const std::string& msg_hex,
               bool have_msg, uint64_t seed, const std::string& out) {
  KeyFile kf = load_key(key_path);
  size_t mbits = msg_bits(kf);
  SeededRng rng(seed);

  BitVector m(mbits);
  if (have_msg) {
    if (kf.scheme == SchemeId::zero_bit)
      throw std::invalid_argument("the zero-bit scheme carries no message");
    m = msg_from_hex(msg_hex, mbits);
  } else {
    m = rng.uniform_bits(mbits);
  }

  BitVector c = encode_any(kf, m, rng);
  write_file(out, serialize_codeword(c));

  std::printf("scheme=%s\n", scheme_str(kf.scheme));
  std::printf("seed=%llu\n", (unsigned long long)seed);
  if (mbits) std::printf("msg=%s\n", msg_to_hex(m).c_str());
  std::printf("n=%zu\n", c.n);
  std::printf("codeword_file=%s\n", out.c_str());
  return finish(true);
}

int cmd_decode(const std::string& key_path, const std::string& in_path) {
  KeyFile kf = load_key(key_path);
  require_secret(kf);
  BitVector c = parse_codeword(read_file(in_path));
  if (c.n != codeword_bits(kf))
    throw std::invalid_argument("codeword is " + std::to_string(c.n) +
                                " bits, scheme wants " + std::to_string(codeword_bits(kf)));

  std::printf("scheme=%s\n", scheme_str(kf.scheme));
  switch (kf.scheme) {
    case SchemeId::zero_bit:
      std::printf("answer=%s\n", decode_zero_bit(*kf.zero_bit, c) ? "MARK" : "BOT");
      break;
    case SchemeId::single_bit: {
      auto got = decode_single_bit(*kf.single_bit, c);
      if (!got) {
        std::printf("answer=BOT\n");
      } else {
        BitVector m(1);
        m.set(0, *got == 1);
        std::printf("answer=%s\n", msg_to_hex(m).c_str());
      }
      break;
    }
    default: {
      std::optional<BitVector> got;
      if (kf.scheme == SchemeId::sk_rate) got = sk_rate_decode(*kf.sk_rate, c);
      if (kf.scheme == SchemeId::pk_rate) got = pk_rate_decode(*kf.pk_rate, c);
      if (kf.scheme == SchemeId::sharp) got = sharp_decode(*kf.sharp, c);
      if (kf.scheme == SchemeId::cca) got = cca_decode(*kf.cca, c);
      std::printf("answer=%s\n", got ? msg_to_hex(*got).c_str() : "BOT");
      break;
    }
  }
  return finish(true);  // bottom is an answer, not a failure
}

int cmd_verify_key(const std::string& key_path) {
  KeyFile kf = load_key(key_path);
  require_secret(kf);

  size_t checks = 0, zeros = 0;
  auto tally = [&](const SparseParityMatrix& H, const DenseMatrix& G) {
    for (const auto& col : G.col) {
      checks++;
      if (mat_vec_sparse(H, col).weight() == 0) zeros++;
    }
  };
  auto tally_block = [&](const SingleBitKeys& b) {
    tally(b.H0, b.G0);
    tally(b.H1, b.G1);
  };
  switch (kf.scheme) {
    case SchemeId::zero_bit: tally(kf.zero_bit->H, kf.zero_bit->G); break;
    case SchemeId::single_bit: tally_block(*kf.single_bit); break;
    case SchemeId::sk_rate: tally_block(kf.sk_rate->block); break;
    case SchemeId::pk_rate: tally_block(kf.pk_rate->block); break;
    case SchemeId::sharp: tally_block(kf.sharp->inner.block); break;
    case SchemeId::cca: tally_block(kf.cca->inner.block); break;
  }

  std::printf("scheme=%s\n", scheme_str(kf.scheme));
  std::printf("generator_columns=%zu\n", checks);
  std::printf("in_kernel=%zu\n", zeros);
  return finish(zeros == checks);
}

// ---- attacks ----

int cmd_attack_gaussian(const KeyFile& kf, size_t trials, size_t budget,
                        bool have_budget, uint64_t seed) {
  if (kf.scheme != SchemeId::zero_bit)
    throw std::invalid_argument("gaussian-elim targets the zero-bit scheme");
  const auto& k = *kf.zero_bit;
  if (!have_budget) budget = k.params.r * 3 / 5;
  if (budget == 0 || budget > k.params.r)
    throw std::invalid_argument("budget must sit in [1, r]");

  SeededRng rng(seed);
  size_t solved = 0, wins = 0;
  for (size_t i = 0; i < trials; ++i) {
    BitVector c = encode_zero_bit(k, rng);
    auto e = gaussian_elimination_attack(k.H, budget, c ^ k.z);
    if (!e) continue;
    solved++;
    if (e->weight() <= k.params.flip_budget() && !decode_zero_bit(k, c ^ *e)) wins++;
  }
  auto ci = wilson_interval(wins, trials, 3.0);
  std::printf("trials=%zu\n", trials);
  std::printf("budget=%zu\n", budget);
  std::printf("flip_budget=%zu\n", k.params.flip_budget());
  std::printf("solved=%zu\n", solved);
  std::printf("wins=%zu\n", wins);
  std::printf("win_rate=%.4f\n", trials ? (double)wins / trials : 0.0);
  std::printf("wilson_lo=%.4f\n", ci.lo);
  std::printf("wilson_hi=%.4f\n", ci.hi);
  return finish(wins * 20 >= trials * 19);  // the attack should land 95%+
}

int cmd_attack_quarter(const KeyFile& kf, size_t trials, uint64_t seed) {
  if (kf.scheme != SchemeId::single_bit)
    throw std::invalid_argument("quarter targets the single-bit scheme");
  const auto& k = *kf.single_bit;
  SchemeView v = view_of(k);
  SeededRng rng(seed);

  double f0 = 0, f1 = 0;
  size_t mid0 = 0, mid1 = 0, midbot = 0;
  for (size_t i = 0; i < trials; ++i) {
    auto qa = quarter_attack(v, rng);
    f0 += (double)(qa.mid ^ qa.x0).weight() / k.params.n;
    f1 += (double)(qa.mid ^ qa.x1).weight() / k.params.n;
    auto got = decode_single_bit(k, qa.mid);
    if (!got) midbot++;
    else if (*got == 0) mid0++;
    else mid1++;
  }
  double m0 = trials ? f0 / trials : 0.0, m1 = trials ? f1 / trials : 0.0;
  std::printf("trials=%zu\n", trials);
  std::printf("mean_frac0=%.4f\n", m0);
  std::printf("mean_frac1=%.4f\n", m1);
  std::printf("mid_decode_0=%zu\n", mid0);
  std::printf("mid_decode_1=%zu\n", mid1);
  std::printf("mid_decode_bot=%zu\n", midbot);
  return finish(m0 >= 0.2 && m0 <= 0.3 && m1 >= 0.2 && m1 <= 0.3);
}

int cmd_attack_flip(const KeyFile& kf, size_t trials, const std::string& rate,
                    size_t queries, uint64_t seed) {
  SchemeView v = view_of_key(kf);
  RandomFlipAdversary adv;
  adv.rate = rate.empty() ? flip_rate(kf) : rat_arg(rate);
  adv.queries = queries;

  size_t wins = 0, aborts = 0;
  for (size_t i = 0; i < trials; ++i) {
    auto g = run_robust_sk_game(v, adv, flip_rate(kf), seed + i);
    if (g.adversary_wins) wins++;
    if (g.aborted) aborts++;
  }
  auto ci = wilson_interval(wins, trials, 3.0);
  std::printf("trials=%zu\n", trials);
  std::printf("rate=%s\n", adv.rate.str().c_str());
  std::printf("wins=%zu\n", wins);
  std::printf("aborts=%zu\n", aborts);
  std::printf("win_rate=%.4f\n", trials ? (double)wins / trials : 0.0);
  std::printf("wilson_lo=%.4f\n", ci.lo);
  std::printf("wilson_hi=%.4f\n", ci.hi);
  return finish(wins * 100 <= trials);  // robustness: flips at the budget lose
}

// ---- games ----

int cmd_game_robust_sk(const KeyFile& kf, const std::string& adversary,
                       size_t trials, const std::string& rate, size_t queries,
                       uint64_t seed) {
  SchemeView v = view_of_key(kf);
  ReplayAdversary replay;
  RandomFlipAdversary flip;
  flip.rate = rate.empty() ? flip_rate(kf) : rat_arg(rate);
  flip.queries = queries;
  UniformAdversary uniform;

  RobustSkAdversary* adv = nullptr;
  if (adversary == "replay") adv = &replay;
  else if (adversary == "random-flip") adv = &flip;
  else if (adversary == "uniform") adv = &uniform;
  else throw std::invalid_argument("unknown adversary: " + adversary);

  size_t wins = 0, aborts = 0;
  for (size_t i = 0; i < trials; ++i) {
    auto g = run_robust_sk_game(v, *adv, flip_rate(kf), seed + i);
    if (g.adversary_wins) wins++;
    if (g.aborted) aborts++;
  }
  auto ci = wilson_interval(wins, trials, 3.0);
  std::printf("adversary=%s\n", adversary.c_str());
  std::printf("trials=%zu\n", trials);
  std::printf("wins=%zu\n", wins);
  std::printf("aborts=%zu\n", aborts);
  std::printf("win_rate=%.4f\n", trials ? (double)wins / trials : 0.0);
  std::printf("wilson_lo=%.4f\n", ci.lo);
  std::printf("wilson_hi=%.4f\n", ci.hi);
  return finish(wins * 100 <= trials);
}

int cmd_game_robust_pk(const KeyFile& kf, size_t trials, const std::string& rate,
                       uint64_t seed) {
  SchemeView v = view_of_key(kf);
  RandomFlipPkAdversary adv;
  adv.rate = rate.empty() ? flip_rate(kf) : rat_arg(rate);

  size_t wins = 0, aborts = 0;
  for (size_t i = 0; i < trials; ++i) {
    auto g = run_robust_pk_game(v, adv, flip_rate(kf), seed + i);
    if (g.adversary_wins) wins++;
    if (g.aborted) aborts++;
  }
  auto ci = wilson_interval(wins, trials, 3.0);
  std::printf("trials=%zu\n", trials);
  std::printf("rate=%s\n", adv.rate.str().c_str());
  std::printf("wins=%zu\n", wins);
  std::printf("aborts=%zu\n", aborts);
  std::printf("win_rate=%.4f\n", trials ? (double)wins / trials : 0.0);
  std::printf("wilson_lo=%.4f\n", ci.lo);
  std::printf("wilson_hi=%.4f\n", ci.hi);
  return finish(wins * 100 <= trials);
}

int cmd_game_ideal(const std::string& key_path, size_t queries, uint64_t seed) {
  KeyFile kf;  // keeps file-loaded keys alive behind the view
  std::optional<SharpKeys> local;
  SchemeView v;
  Rational delta;
  if (!key_path.empty()) {
    kf = load_key(key_path);
    require_secret(kf);
    v = view_of_key(kf);
    delta = flip_rate(kf);
  } else {
    SeededRng kg(seed);
    local = keygen_sharp(fixtures::transform_block_unit(),
                         ecc_by_name(fixtures::kSharpEcc), kg);
    v = view_of(*local);
    delta = local->delta;
  }

  ScriptDistinguisher d;
  d.queries = queries;
  d.mbits = v.msg_bits;
  d.n = v.n;
  d.budget = (size_t)((delta.num * (long long)v.n) / delta.den);

  auto g = run_real_ideal_games(v, d, delta, seed + 1);
  size_t total = g.answers_real.size() < g.answers_ideal.size()
                     ? g.answers_real.size()
                     : g.answers_ideal.size();
  size_t agree = 0;
  for (size_t i = 0; i < total; ++i)
    if (g.answers_real[i] == g.answers_ideal[i]) agree++;

  std::printf("n=%zu\n", v.n);
  std::printf("encode_queries=%zu\n", queries);
  std::printf("decode_queries=%zu\n", total);
  std::printf("agree=%zu\n", agree);
  std::printf("agree_rate=%.4f\n", total ? (double)agree / total : 0.0);
  std::printf("bit_real=%d\n", g.bit_real);
  std::printf("bit_ideal=%d\n", g.bit_ideal);
  return finish(total > 0 && agree * 100 >= total * 99);
}

int cmd_game_cca(const std::string& key_path, size_t fuzz, uint64_t seed) {
  KeyFile kf;
  std::optional<CcaKeys> local;
  if (!key_path.empty()) {
    kf = load_key(key_path);
    require_secret(kf);
    if (kf.scheme != SchemeId::cca)
      throw std::invalid_argument("the cca game needs a cca key");
  } else {
    SeededRng kg(seed);
    local = keygen_cca(fixtures::cca_block(), ecc_by_name(fixtures::kCcaEcc1),
                       ecc_by_name(fixtures::kCcaEcc2), kg);
  }
  const CcaKeys& k = local ? *local : *kf.cca;
  size_t budget = (size_t)((k.delta.num * (long long)k.total_bits()) / k.delta.den);

  SeededRng rng(seed + 1);
  std::vector<RoQuery> log;
  std::vector<IssuedCodeword> issued;
  for (int i = 0; i < 8; ++i) {
    BitVector m = rng.uniform_bits(k.msg_bits());
    BitVector r = rng.uniform_bits(kLambda);
    log.push_back({m, r});
    issued.push_back({m, cca_canonical(k, r, m)});
  }
  for (int i = 0; i < 2; ++i)  // hashed but never released
    log.push_back({rng.uniform_bits(k.msg_bits()), rng.uniform_bits(kLambda)});

  size_t agree = 0;
  for (size_t q = 0; q < fuzz; ++q) {
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
    if (cca_decode(k, probe) == alt_decode(k, probe, log, issued, rng)) agree++;
  }

  std::printf("fuzz=%zu\n", fuzz);
  std::printf("agree=%zu\n", agree);
  return finish(agree == fuzz);
}

// ---- analyze ----

struct AnalyzeOpts {
  std::string check;
  uint64_t n = 0, r = 0, t = 0, d = 0;
  uint64_t cases = 0, trials = 0, codes = 0;
  uint64_t N = 0, K = 0, draws = 0;
  double tol = 0.20, t_dev = 0.0;
  std::string zeta, tau;
  uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeOpts& o) {
  SeededRng rng(o.seed);
  std::printf("check=%s\n", o.check.c_str());

  if (o.check == "omar") {
    size_t n = o.n ? o.n : 14, t = o.t ? o.t : 2, d = o.d ? o.d : 3;
    size_t cases = o.cases ? o.cases : 200;
    size_t equal = 0, attempts = 0;
    for (size_t i = 0; i < cases; ++i) {
      SmallCode C;
      do {  // the identity needs a nonempty parity set
        if (++attempts > 50 * cases + 50)
          throw std::invalid_argument("parity sets keep coming up empty at these sizes");
        C = random_small_code(n, d, rng);
      } while (enumerate_parity_set(C, t).empty());
      auto chk = verify_omar_identity(C, t, rng.uniform_bits(n));
      if (chk.equal) equal++;
    }
    std::printf("cases=%zu\n", cases);
    std::printf("equal=%zu\n", equal);
    return finish(equal == cases);
  }

  if (o.check == "sandwich") {
    size_t n = o.n ? o.n : 16, t = o.t ? o.t : 2;
    size_t cases = o.cases ? o.cases : 100;
    size_t ok = 0;
    for (size_t i = 0; i < cases; ++i)
      if (verify_parity_bias_bounds(rng.uniform_bits(n), t).ok) ok++;
    std::printf("cases=%zu\n", cases);
    std::printf("ok=%zu\n", ok);
    return finish(ok == cases);
  }

  if (o.check == "concentration") {
    size_t n = o.n ? o.n : 64, t = o.t ? o.t : 4, d = o.d ? o.d : 8;
    size_t codes = o.codes ? o.codes : 50;
    auto rep = estimate_parity_concentration(n, d, t, codes, rng, o.tol);
    std::printf("codes=%zu\n", rep.codes);
    std::printf("within=%zu\n", rep.within);
    std::printf("tol=%.2f\n", rep.tol);
    std::printf("expected=%.3f\n", rep.expected);
    std::printf("min_ratio=%.4f\n", rep.min_ratio);
    std::printf("max_ratio=%.4f\n", rep.max_ratio);
    std::printf("in_hypothesis=%d\n", rep.in_hypothesis ? 1 : 0);
    return finish(rep.within * 10 >= rep.codes * 9);
  }

  if (o.check == "balance") {
    size_t n = o.n ? o.n : 1024, d = o.d ? o.d : 10;
    size_t codes = o.codes ? o.codes : 100;
    auto rep = check_rlc_balance(n, d, codes, rng);
    std::printf("codes=%zu\n", rep.codes);
    std::printf("balanced=%zu\n", rep.balanced);
    std::printf("threshold=%.4f\n", rep.threshold);
    return finish(rep.balanced * 100 >= rep.codes * 99);
  }

  if (o.check == "johnson") {
    size_t n = o.n ? o.n : 20, d = o.d ? o.d : 4;
    size_t cases = o.cases ? o.cases : 100;
    size_t ok = 0, attempts = 0;
    size_t done = 0;
    while (done < cases) {
      if (++attempts > 100 * cases)
        throw std::invalid_argument("could not sample enough list-bound instances");
      auto C = random_small_code(n, 1 + rng.below(d), rng);
      BitVector x = rng.uniform_bits(n);
      if (!o.tau.empty()) {
        auto chk = johnson_count(C, x, rat_arg(o.tau));
        if (!chk.hypothesis_met) continue;
        if (chk.ok) ok++;
        done++;
        continue;
      }
      // probe the code's measured distance, then pick tau above sqrt(delta)
      auto probe = johnson_count(C, x, Rational(1, 1));
      double root = std::sqrt(std::max(0.0, probe.delta_code.to_double()));
      long long lo = (long long)(root * 64.0) + 2;
      if (lo > 64) continue;
      Rational tau(lo + (long long)rng.below((uint64_t)(64 - lo + 1)), 64);
      auto chk = johnson_count(C, x, tau);
      if (chk.ok) ok++;
      done++;
    }
    std::printf("cases=%zu\n", cases);
    std::printf("ok=%zu\n", ok);
    return finish(ok == cases);
  }

  if (o.check == "floor" || o.check == "ceiling") {
    size_t n = o.n ? o.n : 64, d = o.d ? o.d : 8, t = o.t ? o.t : 4;
    size_t trials = o.trials ? o.trials : 200;
    auto rep = o.check == "floor" ? empirical_bias_floor(n, d, t, trials, rng)
                                  : empirical_bias_ceiling(n, d, t, trials, rng);
    std::printf("trials=%zu\n", rep.trials);
    std::printf("passed=%zu\n", rep.passed);
    std::printf("worst_ratio=%.4f\n", rep.worst_ratio);
    return finish(o.check == "floor" ? rep.passed * 20 >= rep.trials * 19
                                     : rep.passed == rep.trials);
  }

  if (o.check == "resample") {
    size_t n = o.n ? o.n : 16, d = o.d ? o.d : 2, t = o.t ? o.t : 2;
    size_t r = o.r ? o.r : 3;
    size_t trials = o.trials ? o.trials : 4000;
    auto rep = resampling_equivalence_check(n, d, t, r, trials, rng);
    std::printf("trials=%zu\n", rep.trials);
    std::printf("chi_square=%.3f\n", rep.chi_square);
    std::printf("dof=%zu\n", rep.dof);
    std::printf("separated=%d\n", rep.separated ? 1 : 0);
    std::printf("feasible=%d\n", rep.feasible ? 1 : 0);
    return finish(rep.feasible && !rep.separated);
  }

  if (o.check == "hypergeometric") {
    size_t N = o.N ? o.N : 4096, K = o.K ? o.K : 1024;
    size_t draws = o.draws ? o.draws : 128;
    double tdev = o.t_dev > 0 ? o.t_dev : 0.125;
    std::printf("tail=%.6g\n", hypergeometric_tail(N, K, draws, tdev));
    return finish(true);
  }

  if (o.check == "chernoff") {
    size_t r = o.r ? o.r : 4096;
    Rational z = o.zeta.empty() ? Rational(1, 16) : rat_arg(o.zeta);
    std::printf("bound=%.6g\n", chernoff_threshold(r, z));
    return finish(true);
  }

  throw std::invalid_argument("unknown check: " + o.check);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"watermark code toolbox: keys, codewords, attacks, games, analysis"};
  app.require_subcommand(1);

  // keygen
  KeygenOpts kg;
  auto* c_kg = app.add_subcommand("keygen", "sample a key pair and write it out");
  c_kg->add_option("--scheme", kg.scheme,
                   "zero-bit | single-bit | sk-rate | pk-rate | sharp | cca")
      ->required();
  auto* kg_fix = c_kg->add_option("--fixture", kg.fixture,
                                  "zb-hand zb-demo zb-speed zb-unit sb-hand block-unit "
                                  "sharp-block cca-block");
  auto* kg_from = c_kg->add_option("--params-from", kg.params_from,
                                   "reuse the parameter block of an existing key file");
  c_kg->add_flag("--derive", kg.derive, "derive t, d, eta, zeta from --n --r --delta");
  auto* kg_n = c_kg->add_option("--n", kg.n, "block length");
  auto* kg_r = c_kg->add_option("--r", kg.r, "parity checks");
  auto* kg_t = c_kg->add_option("--t", kg.t, "check weight, even");
  auto* kg_d = c_kg->add_option("--d", kg.d, "generator dimension");
  auto* kg_eta = c_kg->add_option("--eta", kg.eta, "noise rate, decimal or a/b");
  auto* kg_zeta = c_kg->add_option("--zeta", kg.zeta, "detection margin");
  auto* kg_delta = c_kg->add_option("--delta", kg.delta, "flip budget rate");
  auto* kg_ecc = c_kg->add_option("--ecc", kg.ecc, "outer code name (sk-rate, sharp)");
  auto* kg_ecc1 = c_kg->add_option("--ecc1", kg.ecc1, "seed code name (pk-rate, cca)");
  auto* kg_ecc2 = c_kg->add_option("--ecc2", kg.ecc2, "mask code name (pk-rate, cca)");
  auto* kg_seed = c_kg->add_option("--seed", kg.seed, "rng seed, random when absent");
  c_kg->add_option("--out", kg.out, "secret key path; public half gets .pub")->required();

  // encode
  std::string en_key, en_msg, en_out;
  uint64_t en_seed = 0;
  auto* c_en = app.add_subcommand("encode", "encode a message into a codeword file");
  c_en->add_option("--key", en_key, "key file, secret or public")->required();
  auto* en_msg_opt = c_en->add_option("--msg", en_msg, "message as packed hex, random when absent");
  auto* en_seed_opt = c_en->add_option("--seed", en_seed, "rng seed");
  c_en->add_option("--out", en_out, "codeword path")->required();

  // decode
  std::string de_key, de_in;
  auto* c_de = app.add_subcommand("decode", "decode a codeword file, BOT when unmarked");
  c_de->add_option("--key", de_key, "secret key file")->required();
  c_de->add_option("--in", de_in, "codeword path")->required();

  // verify-key
  std::string vk_key;
  auto* c_vk = app.add_subcommand("verify-key", "check every generator column sits in ker H");
  c_vk->add_option("--key", vk_key, "secret key file")->required();

  // attack
  std::string at_name, at_key, at_rate;
  uint64_t at_trials = 0, at_budget = 0, at_queries = 1, at_seed = 0;
  auto* c_at = app.add_subcommand("attack", "run a named attack against a key");
  c_at->add_option("--name", at_name, "gaussian-elim | quarter | random-flip")->required();
  c_at->add_option("--key", at_key, "secret key file")->required();
  auto* at_trials_opt = c_at->add_option("--trials", at_trials, "attack trials");
  auto* at_budget_opt = c_at->add_option("--budget", at_budget,
                                         "checks to force (gaussian-elim), default 0.6r");
  c_at->add_option("--rate", at_rate, "flip rate (random-flip), default the key's delta");
  c_at->add_option("--queries", at_queries, "transcript entries to request first");
  auto* at_seed_opt = c_at->add_option("--seed", at_seed, "rng seed");

  // game
  std::string gm_name, gm_key, gm_adv = "random-flip", gm_rate;
  uint64_t gm_trials = 100, gm_queries = 100, gm_fuzz = 1000, gm_seed = 0;
  auto* c_gm = app.add_subcommand("game", "run a security game and report aggregates");
  c_gm->add_option("--name", gm_name, "robust-sk | robust-pk | ideal | cca")->required();
  c_gm->add_option("--key", gm_key, "key file (robust games; optional for ideal, cca)");
  c_gm->add_option("--adversary", gm_adv, "replay | random-flip | uniform (robust-sk)");
  c_gm->add_option("--trials", gm_trials, "game repetitions");
  c_gm->add_option("--rate", gm_rate, "flip rate, default the key's delta");
  c_gm->add_option("--queries", gm_queries, "oracle queries per phase (ideal)");
  c_gm->add_option("--fuzz", gm_fuzz, "decode probes (cca)");
  auto* gm_seed_opt = c_gm->add_option("--seed", gm_seed, "rng seed");

  // analyze
  AnalyzeOpts an;
  auto* c_an = app.add_subcommand("analyze", "run a combinatorial check");
  c_an->add_option("--check", an.check,
                   "omar | sandwich | concentration | balance | johnson | floor | "
                   "ceiling | resample | hypergeometric | chernoff")
      ->required();
  c_an->add_option("--n", an.n, "length");
  c_an->add_option("--r", an.r, "rows");
  c_an->add_option("--t", an.t, "parity weight");
  c_an->add_option("--d", an.d, "code dimension");
  c_an->add_option("--cases", an.cases, "instances");
  c_an->add_option("--trials", an.trials, "trials");
  c_an->add_option("--codes", an.codes, "codes");
  c_an->add_option("--tol", an.tol, "relative tolerance (concentration)");
  c_an->add_option("--tau", an.tau, "list radius bias (johnson)");
  c_an->add_option("--N", an.N, "population (hypergeometric)");
  c_an->add_option("--K", an.K, "marked population");
  c_an->add_option("--draws", an.draws, "sample size");
  c_an->add_option("--t-dev", an.t_dev, "tail deviation");
  c_an->add_option("--zeta", an.zeta, "detection margin (chernoff)");
  auto* an_seed_opt = c_an->add_option("--seed", an.seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_kg) {
      kg.have_fixture = kg_fix->count() > 0;
      kg.have_from = kg_from->count() > 0;
      kg.have_sizes = kg_n->count() || kg_r->count() || kg_t->count() ||
                      kg_d->count() || kg_eta->count() || kg_zeta->count() ||
                      kg_delta->count();
      kg.have_ecc = kg_ecc->count() > 0;
      kg.have_ecc12 = kg_ecc1->count() > 0 || kg_ecc2->count() > 0;
      if (kg.have_ecc12 && (kg_ecc1->count() == 0 || kg_ecc2->count() == 0))
        throw std::invalid_argument("--ecc1 and --ecc2 go together");
      kg.seed = pick_seed(kg_seed, kg.seed);
      return cmd_keygen(kg);
    }
    if (*c_en)
      return cmd_encode(en_key, en_msg, en_msg_opt->count() > 0,
                        pick_seed(en_seed_opt, en_seed), en_out);
    if (*c_de) return cmd_decode(de_key, de_in);
    if (*c_vk) return cmd_verify_key(vk_key);
    if (*c_at) {
      KeyFile kf = load_key(at_key);
      require_secret(kf);
      uint64_t seed = pick_seed(at_seed_opt, at_seed);
      std::printf("attack=%s\n", at_name.c_str());
      std::printf("scheme=%s\n", scheme_str(kf.scheme));
      std::printf("seed=%llu\n", (unsigned long long)seed);
      if (at_name == "gaussian-elim")
        return cmd_attack_gaussian(kf, at_trials_opt->count() ? at_trials : 200,
                                   at_budget, at_budget_opt->count() > 0, seed);
      if (at_name == "quarter")
        return cmd_attack_quarter(kf, at_trials_opt->count() ? at_trials : 20, seed);
      if (at_name == "random-flip")
        return cmd_attack_flip(kf, at_trials_opt->count() ? at_trials : 100,
                               at_rate, at_queries, seed);
      throw std::invalid_argument("unknown attack: " + at_name);
    }
    if (*c_gm) {
      uint64_t seed = pick_seed(gm_seed_opt, gm_seed);
      std::printf("game=%s\n", gm_name.c_str());
      std::printf("seed=%llu\n", (unsigned long long)seed);
      if (gm_name == "ideal") return cmd_game_ideal(gm_key, gm_queries, seed);
      if (gm_name == "cca") return cmd_game_cca(gm_key, gm_fuzz, seed);
      if (gm_key.empty())
        throw std::invalid_argument("robust games need --key");
      KeyFile kf = load_key(gm_key);
      require_secret(kf);
      std::printf("scheme=%s\n", scheme_str(kf.scheme));
      if (gm_name == "robust-sk")
        return cmd_game_robust_sk(kf, gm_adv, gm_trials, gm_rate, gm_queries, seed);
      if (gm_name == "robust-pk")
        return cmd_game_robust_pk(kf, gm_trials, gm_rate, seed);
      throw std::invalid_argument("unknown game: " + gm_name);
    }
    if (*c_an) {
      an.seed = pick_seed(an_seed_opt, an.seed);
      std::printf("seed=%llu\n", (unsigned long long)an.seed);
      return cmd_analyze(an);
    }
  } catch (const FileFormatError& e) {
    std::printf("error=%s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::printf("error=%s\n", e.what());
    return 2;
  } catch (const std::length_error& e) {
    std::printf("error=%s\n", e.what());
    return 2;
  } catch (const std::overflow_error& e) {
    std::printf("error=%s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::printf("error=%s\n", e.what());
    return 2;
  }
  return 2;
}
