#pragma once
// Pinned parameter sets shared by the unit suites and the acceptance runner.
// Every set has been margin-checked: block detectors sit several sigma from
// their thresholds under the declared noise plus flip budget.

#include "prc/ecc.hpp"
#include "prc/params.hpp"

namespace prc::fixtures {

inline SchemeParams make(size_t n, size_t r, size_t t, size_t d,
                         Rational eta, Rational zeta, Rational delta) {
  SchemeParams p;
  p.n = n; p.r = r; p.t = t; p.d = d;
  p.eta = eta; p.zeta = zeta; p.delta = delta;
  p.validate();
  return p;
}

// Zero-bit demo scale: full set of checks, generous noise.
inline SchemeParams zb_hand() {
  return make(4096, 4096, 2, 8, Rational(1, 5), Rational(1, 16), Rational(1, 10));
}

// Zero-bit with the derivation rules applied at r = n.
inline SchemeParams zb_derived_demo() {
  return derive_params_zero_bit(4096, 4096, Rational(1, 10));
}

// Zero-bit with r = n/8, the cheap-verification point; also the
// gaussian-elimination attack target (0.6 r stays within delta n).
inline SchemeParams zb_derived_speed() {
  return derive_params_zero_bit(4096, 512, Rational(1, 10));
}

// Single-bit demo scale.  r < n keeps ker H rich enough that a kernel draw
// looks balanced to the opposite detector.
inline SchemeParams sb_hand() {
  return make(4096, 3200, 4, 16, Rational(3, 40), Rational(3, 40), Rational(1, 10));
}

// Small single-bit block driving the unit-scale rate/sharp transforms.
inline SchemeParams transform_block_unit() {
  return make(512, 384, 4, 8, Rational(1, 16), Rational(1, 8), Rational(1, 100));
}

// Small zero-bit and single-bit sets for fast game runs.
inline SchemeParams zb_unit() {
  return make(512, 512, 2, 8, Rational(1, 5), Rational(1, 16), Rational(1, 10));
}
inline SchemeParams sb_unit() { return transform_block_unit(); }

// Sharp-transform block at demo scale: 128 blocks of 2048 bits plus a
// 6912-bit mask, total 269056, flip budget floor(N/80) = 3363.
inline SchemeParams sharp_block() {
  return make(2048, 1536, 4, 16, Rational(1, 20), Rational(7, 40), Rational(1, 80));
}
inline const char* kSharpEcc = "rsrep_96_48_9";

// CCA-transform block: 384 blocks of 255 bits plus an equal-length mask,
// total 2 * 384 * 255 = 195840, flip budget 1958.
inline SchemeParams cca_block() {
  return make(255, 192, 4, 4, Rational(1, 25), Rational(3, 16), Rational(1, 100));
}
inline const char* kCcaEcc1 = "rsrep_48_16_1";
inline const char* kCcaEcc2 = "rsrep_240_48_51";

}  // namespace prc::fixtures
