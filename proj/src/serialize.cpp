#include "prc/serialize.hpp"

#include <fstream>

#include "prc/primitives.hpp"

namespace prc {

namespace {

constexpr char kKeyMagic[4] = {'P', 'R', 'C', 'K'};
constexpr char kWordMagic[4] = {'P', 'R', 'C', 'W'};

struct Writer {
  std::vector<uint8_t> out;

  void u8(uint8_t v) { out.push_back(v); }
  void u16(uint16_t v) {
    out.push_back((uint8_t)(v >> 8));
    out.push_back((uint8_t)v);
  }
  void u32(uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back((uint8_t)(v >> s));
  }
  void u64(uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out.push_back((uint8_t)(v >> s));
  }
  void raw(const uint8_t* p, size_t len) { out.insert(out.end(), p, p + len); }
  void bits(const BitVector& v) {
    auto packed = pack_bits(v);
    raw(packed.data(), packed.size());
  }
  void rat(const Rational& q) {
    if (q.num < 0 || q.num > 0xffffffffll || q.den > 0xffffffffll)
      throw std::invalid_argument("serialize: rate outside the u32 pair layout");
    u32((uint32_t)q.num);
    u32((uint32_t)q.den);
  }
  void str(const std::string& s) {
    if (s.size() > 0xffff) throw std::invalid_argument("serialize: name too long");
    u16((uint16_t)s.size());
    raw((const uint8_t*)s.data(), s.size());
  }
};

struct Reader {
  const uint8_t* p;
  size_t len;
  size_t at = 0;

  void need(size_t k) const {
    if (len - at < k) throw FileFormatError("truncated file");
  }
  uint8_t u8() {
    need(1);
    return p[at++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = ((uint16_t)p[at] << 8) | p[at + 1];
    at += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | p[at + i];
    at += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[at + i];
    at += 8;
    return v;
  }
  Rational rat() {
    uint32_t num = u32(), den = u32();
    if (den == 0) throw FileFormatError("rate with zero denominator");
    return Rational((long long)num, (long long)den);
  }
  std::string str() {
    size_t k = u16();
    need(k);
    std::string s((const char*)p + at, k);
    at += k;
    return s;
  }
  BitVector bits(size_t n) {
    size_t bytes = (n + 7) / 8;
    need(bytes);
    BitVector v = unpack_bits(p + at, n);
    // padding must be zero: repacking the declared bits reproduces the input
    for (size_t i = n; i < bytes * 8; ++i)
      if ((p[at + i / 8] >> (i % 8)) & 1) throw FileFormatError("nonzero pad bits");
    at += bytes;
    return v;
  }
  void done() const {
    if (at != len) throw FileFormatError("payload length mismatch");
  }
};

void write_header(Writer& w, SchemeId scheme, const SchemeParams& p) {
  w.raw((const uint8_t*)kKeyMagic, 4);
  w.u8(kKeyFileVersion);
  w.u8((uint8_t)scheme);
  w.u8(kHashAlgSha256);
  w.u64(p.n);
  w.u64(p.d);
  w.u64(p.t);
  w.u64(p.r);
  w.rat(p.eta);
  w.rat(p.zeta);
  w.rat(p.delta);
  if (p.lambda > 0xffff) throw std::invalid_argument("serialize: lambda too large");
  w.u16((uint16_t)p.lambda);
}

void write_sparse(Writer& w, const SparseParityMatrix& H, const SchemeParams& p) {
  if (H.rows != p.r || H.cols != p.n || H.row_weight != p.t ||
      H.idx.size() != p.r * p.t)
    throw std::invalid_argument("serialize: parity matrix shape off the params");
  for (uint32_t c : H.idx) w.u32(c);
}

void write_dense(Writer& w, const DenseMatrix& G, const SchemeParams& p) {
  if (G.rows != p.n || G.cols != p.d)
    throw std::invalid_argument("serialize: generator shape off the params");
  for (const auto& col : G.col) w.bits(col);
}

void write_block_keys(Writer& w, const SingleBitKeys& k, KeyKind kind) {
  if (kind == KeyKind::secret) {
    write_sparse(w, k.H0, k.params);
    write_sparse(w, k.H1, k.params);
  }
  write_dense(w, k.G0, k.params);
  write_dense(w, k.G1, k.params);
  w.bits(k.z);
}

SparseParityMatrix read_sparse(Reader& r, const SchemeParams& p) {
  SparseParityMatrix H;
  H.rows = p.r;
  H.cols = p.n;
  H.row_weight = p.t;
  H.idx.reserve(p.r * p.t);
  for (size_t i = 0; i < p.r; ++i) {
    for (size_t j = 0; j < p.t; ++j) {
      uint32_t c = r.u32();
      if (c >= p.n) throw FileFormatError("parity index out of range");
      if (j > 0 && c <= H.idx.back())
        throw FileFormatError("parity row not strictly ascending");
      H.idx.push_back(c);
    }
  }
  return H;
}

DenseMatrix read_dense(Reader& r, const SchemeParams& p) {
  DenseMatrix G;
  G.rows = p.n;
  G.cols = p.d;
  for (size_t j = 0; j < p.d; ++j) G.col.push_back(r.bits(p.n));
  return G;
}

SingleBitKeys read_block_keys(Reader& r, const SchemeParams& p, KeyKind kind) {
  SingleBitKeys k;
  k.params = p;
  if (kind == KeyKind::secret) {
    k.H0 = read_sparse(r, p);
    k.H1 = read_sparse(r, p);
  }
  k.G0 = read_dense(r, p);
  k.G1 = read_dense(r, p);
  k.z = r.bits(p.n);
  return k;
}

Permutation read_permutation(Reader& r, size_t size) {
  Permutation pi;
  pi.map.resize(size);
  std::vector<bool> seen(size, false);
  for (size_t i = 0; i < size; ++i) {
    uint32_t v = r.u32();
    if (v >= size || seen[v]) throw FileFormatError("broken permutation");
    seen[v] = true;
    pi.map[i] = v;
  }
  return pi;
}

EccSpec read_ecc(Reader& r) {
  std::string name = r.str();
  try {
    return ecc_by_name(name);
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("bad code name: ") + e.what());
  }
}

SchemeParams validated(SchemeParams p) {
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("params rejected: ") + e.what());
  }
  return p;
}

}  // namespace

std::vector<uint8_t> serialize_key(const ZeroBitKeys& k, KeyKind kind) {
  Writer w;
  write_header(w, SchemeId::zero_bit, k.params);
  w.u8((uint8_t)kind);
  if (kind == KeyKind::secret) write_sparse(w, k.H, k.params);
  write_dense(w, k.G, k.params);
  w.bits(k.z);
  return std::move(w.out);
}

std::vector<uint8_t> serialize_key(const SingleBitKeys& k, KeyKind kind) {
  Writer w;
  write_header(w, SchemeId::single_bit, k.params);
  w.u8((uint8_t)kind);
  write_block_keys(w, k, kind);
  return std::move(w.out);
}

std::vector<uint8_t> serialize_key(const MultiBitSkKeys& k) {
  Writer w;
  write_header(w, SchemeId::sk_rate, k.block.params);
  w.u8((uint8_t)KeyKind::secret);
  write_block_keys(w, k.block, KeyKind::secret);
  w.str(k.ecc.name);
  if (k.pi.size() != k.total_bits())
    throw std::invalid_argument("serialize: permutation size off the key");
  for (uint32_t v : k.pi.map) w.u32(v);
  return std::move(w.out);
}

std::vector<uint8_t> serialize_key(const MultiBitPkKeys& k, KeyKind kind) {
  Writer w;
  write_header(w, SchemeId::pk_rate, k.block.params);
  w.u8((uint8_t)kind);
  write_block_keys(w, k.block, kind);
  w.str(k.ecc1.name);
  w.str(k.ecc2.name);
  return std::move(w.out);
}

std::vector<uint8_t> serialize_key(const SharpKeys& k) {
  Writer w;
  write_header(w, SchemeId::sharp, k.inner.block.params);
  w.u8((uint8_t)KeyKind::secret);
  w.raw(k.prf_key.bytes.data(), k.prf_key.bytes.size());
  write_block_keys(w, k.inner.block, KeyKind::secret);
  w.str(k.inner.ecc.name);
  if (k.inner.pi.size() != k.inner.total_bits())
    throw std::invalid_argument("serialize: permutation size off the key");
  for (uint32_t v : k.inner.pi.map) w.u32(v);
  return std::move(w.out);
}

std::vector<uint8_t> serialize_key(const CcaKeys& k, KeyKind kind) {
  Writer w;
  write_header(w, SchemeId::cca, k.inner.block.params);
  w.u8((uint8_t)kind);
  w.u64(k.ro.out_bits);
  write_block_keys(w, k.inner.block, kind);
  w.str(k.inner.ecc1.name);
  w.str(k.inner.ecc2.name);
  return std::move(w.out);
}

KeyFile parse_key(const std::vector<uint8_t>& bytes) {
  Reader r{bytes.data(), bytes.size()};
  r.need(4);
  if (!std::equal(kKeyMagic, kKeyMagic + 4, r.p)) throw FileFormatError("bad magic");
  r.at = 4;
  if (r.u8() != kKeyFileVersion) throw FileFormatError("unknown version");
  uint8_t scheme_byte = r.u8();
  if (scheme_byte > (uint8_t)SchemeId::cca) throw FileFormatError("unknown scheme");
  SchemeId scheme = (SchemeId)scheme_byte;
  if (r.u8() != kHashAlgSha256) throw FileFormatError("unknown hash algorithm");

  SchemeParams p;
  p.n = r.u64();
  p.d = r.u64();
  p.t = r.u64();
  p.r = r.u64();
  p.eta = r.rat();
  p.zeta = r.rat();
  p.delta = r.rat();
  p.lambda = r.u16();
  p = validated(p);

  uint8_t kind_byte = r.u8();
  if (kind_byte > (uint8_t)KeyKind::public_half)
    throw FileFormatError("unknown key kind");
  KeyKind kind = (KeyKind)kind_byte;
  bool pk_capable = scheme == SchemeId::zero_bit || scheme == SchemeId::single_bit ||
                    scheme == SchemeId::pk_rate || scheme == SchemeId::cca;
  if (kind == KeyKind::public_half && !pk_capable)
    throw FileFormatError("secret-key scheme has no public half");

  KeyFile f;
  f.scheme = scheme;
  f.kind = kind;
  switch (scheme) {
    case SchemeId::zero_bit: {
      ZeroBitKeys k;
      k.params = p;
      if (kind == KeyKind::secret) k.H = read_sparse(r, p);
      k.G = read_dense(r, p);
      k.z = r.bits(p.n);
      f.zero_bit = std::move(k);
      break;
    }
    case SchemeId::single_bit: {
      f.single_bit = read_block_keys(r, p, kind);
      break;
    }
    case SchemeId::sk_rate: {
      MultiBitSkKeys k;
      k.block = read_block_keys(r, p, KeyKind::secret);
      k.ecc = read_ecc(r);
      k.lambda = p.lambda;
      k.pi = read_permutation(r, k.lambda * p.n + k.ecc.n_out);
      f.sk_rate = std::move(k);
      break;
    }
    case SchemeId::pk_rate: {
      MultiBitPkKeys k;
      k.block = read_block_keys(r, p, kind);
      k.ecc1 = read_ecc(r);
      k.ecc2 = read_ecc(r);
      k.lambda = p.lambda;
      if (k.ecc1.k != k.lambda) throw FileFormatError("seed code width off lambda");
      if (k.ecc2.n_out != k.ecc1.n_out * p.n)
        throw FileFormatError("mask code does not cover the blocks");
      f.pk_rate = std::move(k);
      break;
    }
    case SchemeId::sharp: {
      SharpKeys k;
      r.need(32);
      std::copy(r.p + r.at, r.p + r.at + 32, k.prf_key.bytes.begin());
      r.at += 32;
      k.inner.block = read_block_keys(r, p, KeyKind::secret);
      k.inner.ecc = read_ecc(r);
      k.inner.lambda = p.lambda;
      k.inner.pi = read_permutation(r, k.inner.lambda * p.n + k.inner.ecc.n_out);
      k.delta = p.delta;
      if (k.inner.ecc.k <= 2 * kLambda)
        throw FileFormatError("code too small for seed and tag");
      f.sharp = std::move(k);
      break;
    }
    case SchemeId::cca: {
      CcaKeys k;
      k.ro.algorithm = kHashAlgSha256;
      k.ro.out_bits = r.u64();
      if (k.ro.out_bits < 2 * kLambda)
        throw FileFormatError("hash output too small for seed and tag");
      k.inner.block = read_block_keys(r, p, kind);
      k.inner.ecc1 = read_ecc(r);
      k.inner.ecc2 = read_ecc(r);
      k.inner.lambda = p.lambda;
      if (k.inner.ecc1.k != k.inner.lambda)
        throw FileFormatError("seed code width off lambda");
      if (k.inner.ecc2.n_out != k.inner.ecc1.n_out * p.n)
        throw FileFormatError("mask code does not cover the blocks");
      if (k.inner.ecc2.k <= 2 * kLambda)
        throw FileFormatError("code too small for seed and tag");
      k.delta = p.delta;
      f.cca = std::move(k);
      break;
    }
  }
  r.done();
  return f;
}

std::vector<uint8_t> serialize_codeword(const BitVector& c) {
  Writer w;
  w.raw((const uint8_t*)kWordMagic, 4);
  w.u64(c.n);
  w.bits(c);
  return std::move(w.out);
}

BitVector parse_codeword(const std::vector<uint8_t>& bytes) {
  Reader r{bytes.data(), bytes.size()};
  r.need(4);
  if (!std::equal(kWordMagic, kWordMagic + 4, r.p)) throw FileFormatError("bad magic");
  r.at = 4;
  uint64_t n = r.u64();
  if (n > (uint64_t)1 << 32) throw FileFormatError("implausible length");
  BitVector v = r.bits((size_t)n);
  r.done();
  return v;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FileFormatError("cannot open for writing: " + path);
  f.write((const char*)bytes.data(), (std::streamsize)bytes.size());
  if (!f) throw FileFormatError("short write: " + path);
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FileFormatError("cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace prc
