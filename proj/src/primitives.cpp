#include "prc/primitives.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace prc {

Digest sha256(const uint8_t* data, size_t len) {
  Digest out{};
  unsigned int outlen = 0;
  if (!EVP_Digest(data, len, out.data(), &outlen, EVP_sha256(), nullptr) ||
      outlen != 32)
    throw std::runtime_error("sha256 failed");
  return out;
}

std::vector<uint8_t> pack_bits(const BitVector& v) {
  std::vector<uint8_t> out((v.n + 7) / 8, 0);
  for (size_t i = 0; i < v.n; ++i)
    if (v.get(i)) out[i >> 3] |= (uint8_t)(1u << (i & 7));
  return out;
}

BitVector unpack_bits(const uint8_t* bytes, size_t nbits) {
  BitVector v(nbits);
  for (size_t i = 0; i < nbits; ++i)
    if ((bytes[i >> 3] >> (i & 7)) & 1) v.set(i, true);
  return v;
}

PrfKey random_prf_key(Rng& rng) {
  PrfKey k;
  for (size_t i = 0; i < 4; ++i) {
    uint64_t w = rng.next_u64();
    for (size_t b = 0; b < 8; ++b) k.bytes[i * 8 + b] = (uint8_t)(w >> (8 * b));
  }
  return k;
}

static void put_u64be(std::vector<uint8_t>& buf, uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) buf.push_back((uint8_t)(v >> s));
}

// Shared counter-mode core: out bits come from sha256(prefix || i u64be).
static BitVector counter_stream(std::vector<uint8_t> prefix, size_t out_bits) {
  if (out_bits == 0) throw std::invalid_argument("counter_stream: zero length");
  const size_t base = prefix.size();
  prefix.resize(base + 8);
  std::vector<uint8_t> bytes;
  const size_t nblocks = (out_bits + 255) / 256;
  bytes.reserve(nblocks * 32);
  for (uint64_t i = 0; i < nblocks; ++i) {
    for (int s = 0; s < 8; ++s) prefix[base + s] = (uint8_t)(i >> (56 - 8 * s));
    Digest d = sha256(prefix.data(), prefix.size());
    bytes.insert(bytes.end(), d.begin(), d.end());
  }
  return unpack_bits(bytes.data(), out_bits);
}

BitVector prg(const BitVector& seed, size_t out_bits) {
  std::vector<uint8_t> prefix{0x01};
  auto s = pack_bits(seed);
  prefix.insert(prefix.end(), s.begin(), s.end());
  return counter_stream(std::move(prefix), out_bits);
}

BitVector prf(const PrfKey& key, const BitVector& input, size_t out_bits) {
  std::vector<uint8_t> prefix{0x02};
  prefix.insert(prefix.end(), key.bytes.begin(), key.bytes.end());
  put_u64be(prefix, input.n);
  auto in = pack_bits(input);
  prefix.insert(prefix.end(), in.begin(), in.end());
  return counter_stream(std::move(prefix), out_bits);
}

PrfOutput prf_pair(const PrfKey& key, const BitVector& input) {
  BitVector full = prf(key, input, 2 * kLambda);
  return {slice_bits(full, 0, kLambda), slice_bits(full, kLambda, kLambda)};
}

BitVector ro_hash(const RoHash& h, const BitVector& input) {
  if (h.algorithm != kHashAlgSha256)
    throw std::invalid_argument("ro_hash: unknown algorithm id");
  std::vector<uint8_t> prefix{0x03};
  put_u64be(prefix, input.n);
  auto in = pack_bits(input);
  prefix.insert(prefix.end(), in.begin(), in.end());
  return counter_stream(std::move(prefix), h.out_bits);
}

PrfOutput ro_pair(const RoHash& h, const BitVector& input) {
  if (h.out_bits < 2 * kLambda)
    throw std::invalid_argument("ro_pair: output shorter than 2 lambda");
  BitVector full = ro_hash(h, input);
  return {slice_bits(full, 0, kLambda), slice_bits(full, kLambda, kLambda)};
}

HashStreamRng::HashStreamRng(const BitVector& seed) {
  prefix.push_back(0x04);
  put_u64be(prefix, seed.n);
  auto s = pack_bits(seed);
  prefix.insert(prefix.end(), s.begin(), s.end());
  prefix.resize(prefix.size() + 8);  // counter slot
}

uint64_t HashStreamRng::next_u64() {
  if (pos + 8 > 32) {
    size_t base = prefix.size() - 8;
    for (int s = 0; s < 8; ++s)
      prefix[base + s] = (uint8_t)(counter >> (56 - 8 * s));
    counter++;
    buf = sha256(prefix.data(), prefix.size());
    pos = 0;
  }
  uint64_t v = 0;
  for (size_t i = 0; i < 8; ++i) v = (v << 8) | buf[pos + i];
  pos += 8;
  return v;
}

}  // namespace prc
