#pragma once
// Binary error-correcting codes with a guaranteed worst-case substitution
// radius.  Two families behind a name registry:
//   rep_K_L     repetition: K message bits, each sent L times
//   rsrep_N_K_L Reed-Solomon over GF(256), N total / K message symbols,
//               concatenated with an inner L-fold repetition per bit
// alpha is the honest worst-case radius of the concatenation, capped below
// 1/4 of the block length.

#include <cstdint>
#include <optional>
#include <string>

#include "prc/bitvec.hpp"
#include "prc/rational.hpp"

namespace prc {

struct EccSpec {
  enum class Family : uint8_t { repetition, rs_rep };

  Family family = Family::repetition;
  std::string name;
  size_t k = 0;      // message bits
  size_t n_out = 0;  // codeword bits
  size_t rep = 1;    // inner repetition factor
  size_t rs_n = 0, rs_k = 0;  // symbol counts (rs_rep only)
  Rational alpha;    // guaranteed worst-case radius / n_out
};

// Parses "rep_K_L" or "rsrep_N_K_L"; throws on malformed names, degenerate
// geometry, or zero guaranteed radius.
EccSpec ecc_by_name(const std::string& name);

BitVector ecc_encode(const EccSpec& spec, const BitVector& m);

// Within alpha*n_out substitutions of a codeword: returns its message.
// Beyond the radius: best effort, or nullopt when the decoder can tell
// something broke (inner majority tie, locator mismatch, residual syndrome).
std::optional<BitVector> ecc_decode(const EccSpec& spec, const BitVector& x);

}  // namespace prc
