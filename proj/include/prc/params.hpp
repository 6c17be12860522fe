#pragma once
// Scheme parameters and the two derivation rules that map (n, r, delta) to a
// full parameter set, one for the zero-bit scheme and one for the single-bit
// scheme.  Rates are exact rationals; thresholds derived from float formulas
// are snapped to the 2^-24 dyadic grid so every comparison downstream is
// exact integer arithmetic.

#include <cstddef>

#include "prc/rational.hpp"

namespace prc {

struct SchemeParams {
  size_t n = 0;  // block length
  size_t d = 0;  // generator dimension
  size_t t = 0;  // parity-check row weight, even
  size_t r = 0;  // number of checks
  Rational eta;    // encoding noise rate
  Rational zeta;   // detection margin
  Rational delta;  // adversarial flip budget the scheme is tuned for
  size_t lambda = 128;
  double span_const_c = 0;  // slack c in d <= (1/2 - c) t log2 n, set by validate

  // Throws std::invalid_argument on any violated invariant; records the
  // sparsity slack c (which must come out positive).
  void validate();

  size_t noise_weight() const {  // |e| = floor(eta n)
    return (size_t)((eta.num * (long long)n) / eta.den);
  }
  size_t flip_budget() const {  // floor(delta n)
    return (size_t)((delta.num * (long long)n) / delta.den);
  }
};

// Nearest even integer, ties away from zero upward, clamped to >= 2.
size_t round_to_even_min2(double x);

// eta = 1/4 - delta/2, t from the sparsity/threshold tradeoff,
// d = ceil((1/3) t log2 n), zeta = r^(-1/4).
SchemeParams derive_params_zero_bit(size_t n, size_t r, Rational delta);

// eta = 1/8 - delta/2, t = round-even(log2(r)/5), d = ceil(eps t log2 n)
// with eps = min(t delta'/(4 log2 n), 1/17), zeta = (3/2) r^(-1/5).
SchemeParams derive_params_single_bit(size_t n, size_t r, Rational delta);

// delta' = log2(1/(1/4 + delta)) - 1, exposed for fixture checks.
double single_bit_delta_prime(Rational delta);

}  // namespace prc
