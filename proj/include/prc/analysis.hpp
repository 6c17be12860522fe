#pragma once
// Exact and Monte-Carlo verifiers for the combinatorial toolkit behind the
// watermark codes: the parity-consistency identity, weight-class bias
// sandwich, parity-count concentration, random-code balance, Johnson list
// bounds, and the tail-bound calculators that parameter derivation reports.
// Identity checks run in exact rationals, zero tolerance; everything
// statistical reports counts so thresholds stay auditable.

#include <optional>
#include <vector>

#include "prc/f2.hpp"
#include "prc/rational.hpp"
#include "prc/rng.hpp"

namespace prc {

// A code small enough to enumerate: n <= 28 positions, dimension <= 12.
// words caches every distinct codeword; its size is exactly 2^dim.
struct SmallCode {
  DenseMatrix gen;
  std::vector<BitVector> words;
  size_t n = 0;
  size_t dim = 0;
};

SmallCode small_code_from(const DenseMatrix& G);
SmallCode random_small_code(size_t n, size_t d, Rng& rng);

// Exact binomial coefficient; throws overflow_error past 64 bits.
unsigned long long binom_u64(size_t n, size_t k);

// Mean of (-1)^<w, x> over an explicit parity list, exact.
Rational bias_over(const std::vector<BitVector>& parities, const BitVector& x);
// Mean of (-1)^<w, x> over every weight-t vector, for wt(x) = w, via the
// alternating Vandermonde sum, exact.
Rational krawtchouk_bias(size_t n, size_t t, size_t w);

// All weight-t vectors orthogonal to every codeword.  Guarded by
// binom(n, t) <= 10^7; beyond that throws length_error.
std::vector<BitVector> enumerate_parity_set(const SmallCode& C, size_t t);

// Exact check of the consistency identity: the bias of x over the code's
// weight-t parity set equals binom(n,t) 2^{-dim} / N times the sum over
// codewords of the weight-class bias at x + c.  Throws when the parity set
// is empty (the identity's hypothesis).
struct OmarCheck {
  Rational lhs, rhs;
  bool equal = false;
  size_t parity_count = 0;
};
OmarCheck verify_omar_identity(const SmallCode& C, size_t t, const BitVector& x);

// Exact sandwich bias(x)^t (1 - (2t^2/n) / bias(x)^2) <= bias(W_t x)
// <= bias(x)^t for even t with 2t^2 <= n; the lower bound is skipped when
// bias(x) = 0.
struct SandwichCheck {
  Rational lower, value, upper;
  bool has_lower = false;
  bool ok = false;
};
SandwichCheck verify_parity_bias_bounds(const BitVector& x, size_t t);

// Samples random n x d generators and compares each parity-set size against
// binom(n,t) 2^{-d}.  in_hypothesis marks d <= ceil(t log2(n) / 3), the
// regime the concentration fact speaks about; outside it the numbers are
// report-only.
struct ConcentrationReport {
  size_t codes = 0;
  size_t within = 0;
  double tol = 0.0;
  double expected = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool in_hypothesis = false;
};
ConcentrationReport estimate_parity_concentration(size_t n, size_t d, size_t t,
                                                  size_t num_codes, Rng& rng,
                                                  double tol = 0.20);

// Fraction of random n x d codes whose nonzero codewords all satisfy
// |bias| <= 2 sqrt(d/n); the per-word comparison is the exact integer test
// (n - 2w)^2 <= 4dn.
struct BalanceReport {
  size_t codes = 0;
  size_t balanced = 0;
  double threshold = 0.0;
};
BalanceReport check_rlc_balance(size_t n, size_t d, size_t num_codes, Rng& rng);

// Counts codewords with |bias(x + c)| >= tau against the list bound
// (1 - delta) / (tau^2 - delta), where delta is measured from the code's
// actual minimum distance: delta = 1 - 2 dmin / n, zero for trivial codes.
// hypothesis_met requires tau^2 > delta; without it ok stays false and the
// bound is reported as zero.
struct JohnsonCheck {
  size_t count = 0;
  Rational bound;
  Rational delta_code;
  bool hypothesis_met = false;
  bool ok = false;
};
JohnsonCheck johnson_count(const SmallCode& C, const BitVector& x, const Rational& tau);

// Monte-Carlo surrogates for the parity-set bias floor and ceiling
// theorems.  Floor trials draw e of weight up to n/16 (bias >= 7/8, inside
// the bias >= 1/2 hypothesis; heavier errors leave the 0.9 constant no
// slack at desk scale) and check bias(P e) >= 0.9 bias(e)^t exactly.
// Ceiling trials draw a nonzero codeword c' of an independent code plus a
// light error and check bias(P (c' + e)) against
// 2 n^{4 eps} (1 - bias(e) + sqrt(8d/n))^t with eps = d / (t log2 n); the
// bound is loose at desk scale, so worst_ratio reports how much room it has.
struct BiasTrialReport {
  size_t trials = 0;
  size_t passed = 0;
  double worst_ratio = 0.0;
};
BiasTrialReport empirical_bias_floor(size_t n, size_t d, size_t t, size_t trials,
                                     Rng& rng);
BiasTrialReport empirical_bias_ceiling(size_t n, size_t d, size_t t, size_t trials,
                                       Rng& rng);

// Both one-sided hypergeometric tails: exp(-2 t_dev^2 n_draw), for
// 0 < t_dev < K / N.
double hypergeometric_tail(size_t N, size_t K, size_t n_draw, double t_dev);

// Lower-tail failure bound exp(-r zeta^2) for a detector counting r
// balanced checks against the (1/2 - zeta) r threshold; 0 < zeta < 1/2.
double chernoff_threshold(size_t r, const Rational& zeta);

// Two-sample comparison of the nested sampler (parity rows first, code from
// the kernel) against resampling the rows uniformly from the code's parity
// set.  Features: per-row weight (constant by construction) and wt(H e) for
// a fixed quarter-weight probe, chi-squared across the two samplers.
struct ResampleReport {
  size_t trials = 0;
  double chi_square = 0.0;
  size_t dof = 0;
  bool separated = false;  // chi-square beyond dof + 3 sqrt(2 dof)
  bool feasible = true;    // parity sets always held at least r rows
};
ResampleReport resampling_equivalence_check(size_t n, size_t d, size_t t, size_t r,
                                            size_t trials, Rng& rng);

}  // namespace prc
