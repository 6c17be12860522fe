#pragma once
// Bit-exact file formats for keys and codewords.  Key files open with
// "PRCK", one version byte, a scheme id, a hash-algorithm id, then a fixed
// big-endian parameter block (n, d, t, r as u64; eta, zeta, delta as u32
// numerator/denominator pairs; lambda as u16).  The payload starts with a
// kind byte (0 = secret, 1 = public half) followed by scheme-specific
// material: parity rows as sorted u32 column indices, generator columns and
// pads bit-packed LSB-first, error-code specs by registry name, permutations
// as u32 images.  Codeword files are "PRCW", the bit length as u64, and
// packed bits zero-padded to a byte.  Loaders validate everything they read
// (magic, version, ranges, sortedness, permutation bijectivity, padding,
// exact payload length) and throw FileFormatError on the first violation.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prc/ldpc.hpp"
#include "prc/transforms.hpp"

namespace prc {

struct FileFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr uint8_t kKeyFileVersion = 1;

enum class SchemeId : uint8_t {
  zero_bit = 0,
  single_bit = 1,
  sk_rate = 2,
  pk_rate = 3,
  sharp = 4,
  cca = 5,
};

// Secret files carry the full key; public halves drop the parity matrices
// (and exist only for the publicly encodable schemes).
enum class KeyKind : uint8_t { secret = 0, public_half = 1 };

std::vector<uint8_t> serialize_key(const ZeroBitKeys& k, KeyKind kind = KeyKind::secret);
std::vector<uint8_t> serialize_key(const SingleBitKeys& k, KeyKind kind = KeyKind::secret);
std::vector<uint8_t> serialize_key(const MultiBitSkKeys& k);
std::vector<uint8_t> serialize_key(const MultiBitPkKeys& k, KeyKind kind = KeyKind::secret);
std::vector<uint8_t> serialize_key(const SharpKeys& k);
std::vector<uint8_t> serialize_key(const CcaKeys& k, KeyKind kind = KeyKind::secret);

// Exactly one optional is engaged, matching scheme.  Public halves come
// back with empty parity matrices; decoding demands a secret file.
struct KeyFile {
  SchemeId scheme = SchemeId::zero_bit;
  KeyKind kind = KeyKind::secret;
  std::optional<ZeroBitKeys> zero_bit;
  std::optional<SingleBitKeys> single_bit;
  std::optional<MultiBitSkKeys> sk_rate;
  std::optional<MultiBitPkKeys> pk_rate;
  std::optional<SharpKeys> sharp;
  std::optional<CcaKeys> cca;
};

KeyFile parse_key(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> serialize_codeword(const BitVector& c);
BitVector parse_codeword(const std::vector<uint8_t>& bytes);

void write_file(const std::string& path, const std::vector<uint8_t>& bytes);
// unreadable path throws FileFormatError
std::vector<uint8_t> read_file(const std::string& path);

}  // namespace prc
