#pragma once
// Executable security games over the watermark schemes: the secret-key and
// public-key robustness games, the real/ideal indistinguishability pair, and
// the chosen-ciphertext game, plus the named attacks.  Adversaries follow a
// three-phase protocol (receive public sizes, drive oracles, emit a final
// output); attacks needing secret material get it only through a test hook.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prc/ldpc.hpp"
#include "prc/transforms.hpp"

namespace prc {

// Type-erased handle on one concrete scheme.  Games only need the sizes and
// two callbacks; the closures hold pointers, so the keys must outlive the
// view.  Zero-bit schemes use msg_bits = 0 and the empty message.
struct SchemeView {
  size_t n = 0;
  size_t msg_bits = 0;
  std::function<BitVector(const BitVector&, Rng&)> encode;
  std::function<std::optional<BitVector>(const BitVector&)> decode;
};

SchemeView view_of(const ZeroBitKeys& k);
SchemeView view_of(const SingleBitKeys& k);
SchemeView view_of(const MultiBitSkKeys& k);
SchemeView view_of(const MultiBitPkKeys& k);
SchemeView view_of(const SharpKeys& k);
SchemeView view_of(const CcaKeys& k);

struct Transcript {
  std::vector<std::pair<BitVector, BitVector>> entries;  // (message, codeword)
};

// Everything a finished game run reports.  Unused fields keep their
// defaults; render_outcome serializes the lot, so equal outcomes render
// equal and a reseeded run reproduces the bytes.
struct GameOutcome {
  uint64_t seed = 0;
  bool adversary_wins = false;
  bool aborted = false;
  int bit_real = -1;
  int bit_ideal = -1;
  int output_bit = -1;
  size_t real_decode_calls = 0;
  std::vector<std::optional<BitVector>> answers_real;
  std::vector<std::optional<BitVector>> answers_ideal;
  std::vector<std::string> log;  // one structured line per oracle event
};

std::string render_outcome(const GameOutcome& g);

// Error channels a robustness experiment can interpose.  Applied weight
// never exceeds ceil(rate * n); adversary_driven leaves the string alone
// because the adversary already chose its own corruption.
struct Channel {
  enum class Kind { fixed_weight_random, burst, adversary_driven };
  Kind kind = Kind::fixed_weight_random;
  Rational rate;

  BitVector apply(const BitVector& x, Rng& rng) const;
};

// Oracle handle for the secret-key game's query phase; every answer is
// appended to the transcript the win scan later walks.
struct EncodeOracle {
  const SchemeView* scheme = nullptr;
  Transcript* transcript = nullptr;
  Rng* rng = nullptr;
  std::vector<std::string>* log = nullptr;

  BitVector query(const BitVector& m);
};

struct RobustSkAdversary {
  virtual ~RobustSkAdversary() = default;
  virtual BitVector run(EncodeOracle& oracle, size_t n, size_t msg_bits,
                        Rng& rng) = 0;
};

// Win iff some transcript entry (m, c) has wt(x xor c) <= floor(delta n) and
// decode(x) != m.  Exceptions and wrong-length outputs abort the run.
GameOutcome run_robust_sk_game(const SchemeView& scheme, RobustSkAdversary& adv,
                               const Rational& delta, uint64_t seed);

// The public-key adversary hands over its message, the encode randomness as
// a replayable seed, and the corrupted string; the challenger recomputes the
// codeword itself.
struct PkAttackOutput {
  BitVector m;
  uint64_t replay_seed = 0;
  BitVector x;
};

struct RobustPkAdversary {
  virtual ~RobustPkAdversary() = default;
  virtual PkAttackOutput run(const SchemeView& scheme, Rng& rng) = 0;
};

GameOutcome run_robust_pk_game(const SchemeView& scheme, RobustPkAdversary& adv,
                               const Rational& delta, uint64_t seed);

// Distinguisher-facing oracle pair; the two worlds differ only behind it.
struct WorldOracle {
  virtual ~WorldOracle() = default;
  virtual BitVector enc(const BitVector& m) = 0;
  virtual std::optional<BitVector> dec(const BitVector& x) = 0;
};

struct Distinguisher {
  virtual ~Distinguisher() = default;
  virtual int run(WorldOracle& world, Rng& rng) = 0;
};

// Runs the distinguisher once per world.  Its script rng is reseeded
// identically for both runs so the query sequences line up and per-query
// answers are comparable; the worlds' own randomness stays independent.
// Ideal-world encode answers are fresh uniform strings logged to a
// transcript; ideal decode returns a uniformly random transcript message
// within floor(delta n) of the query, bottom when none exists.
GameOutcome run_real_ideal_games(const SchemeView& scheme, Distinguisher& d,
                                 const Rational& delta, uint64_t seed);

// b = 0 answers with the real scheme.  b = 1 answers encodes with fresh
// uniform strings and decodes by transcript-neighbor lookup, falling back to
// the real decoder only when no neighbor exists; real_decode_calls counts
// those fallbacks (plus every b = 0 decode).
GameOutcome run_cca_game(const SchemeView& scheme, Distinguisher& adv,
                         const Rational& delta, int b, uint64_t seed);

// Finds e, wt(e) <= k, making the first k parity checks of H evaluate to 1
// on base xor e.  nullopt when the system is inconsistent.
std::optional<BitVector> gaussian_elimination_attack(const SparseParityMatrix& H,
                                                     size_t k,
                                                     const BitVector& base);

// Encodes both single-bit messages and splits their disagreement set down
// the middle: mid agrees with x0 on the first half and with x1 on the rest,
// so it sits within about a quarter of n from each endpoint.
struct QuarterAttackResult {
  BitVector x0, x1, mid;
};
QuarterAttackResult quarter_attack(const SchemeView& scheme, Rng& rng);

// Stock adversaries shared by the tests and the CLI.
struct ReplayAdversary final : RobustSkAdversary {
  BitVector run(EncodeOracle& oracle, size_t n, size_t msg_bits, Rng& rng) override;
};

struct RandomFlipAdversary final : RobustSkAdversary {
  Rational rate;        // flips exactly floor(rate * n) positions
  size_t queries = 1;   // transcript entries to request first
  BitVector run(EncodeOracle& oracle, size_t n, size_t msg_bits, Rng& rng) override;
};

struct UniformAdversary final : RobustSkAdversary {
  BitVector run(EncodeOracle& oracle, size_t n, size_t msg_bits, Rng& rng) override;
};

struct RandomFlipPkAdversary final : RobustPkAdversary {
  Rational rate;
  PkAttackOutput run(const SchemeView& scheme, Rng& rng) override;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
// Score interval for an observed success frequency at z standard errors.
WilsonInterval wilson_interval(size_t successes, size_t trials, double z);

#ifdef PRC_TEST_HOOKS
// Demonstration that parity-check secrecy is load-bearing: this adversary is
// handed the secret key outside the rules of the game, forces k chosen
// checks to fail, and wins whenever k clears the detector threshold while
// staying inside the flip budget.
struct GaussianPkAdversary final : RobustPkAdversary {
  const ZeroBitKeys* sk = nullptr;
  size_t k = 0;
  PkAttackOutput run(const SchemeView& scheme, Rng& rng) override;
};
#endif

}  // namespace prc
