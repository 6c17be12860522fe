#include "prc/ecc.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <vector>

namespace prc {

// ---- GF(256), x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator 0x02 ------------

namespace {

struct Gf256 {
  uint8_t exp_[512];
  uint8_t log_[256];

  Gf256() {
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
      exp_[i] = (uint8_t)x;
      log_[x] = (uint8_t)i;
      x <<= 1;
      if (x & 0x100) x ^= 0x11D;
    }
    for (int i = 255; i < 512; ++i) exp_[i] = exp_[i - 255];
    log_[0] = 0;  // never consulted
  }

  uint8_t mul(uint8_t a, uint8_t b) const {
    if (!a || !b) return 0;
    return exp_[log_[a] + log_[b]];
  }
  uint8_t inv(uint8_t a) const { return exp_[255 - log_[a]]; }
  uint8_t alpha_pow(unsigned e) const { return exp_[e % 255]; }
};

const Gf256& gf() {
  static const Gf256 g;
  return g;
}

// g(x) = prod_{i=1..2t} (x - alpha^i), ascending coefficients, monic.
std::vector<uint8_t> rs_gen_poly(size_t twot) {
  std::vector<uint8_t> g{1};
  for (size_t i = 1; i <= twot; ++i) {
    std::vector<uint8_t> next(g.size() + 1, 0);
    uint8_t root = gf().alpha_pow((unsigned)i);
    for (size_t j = 0; j < g.size(); ++j) {
      next[j + 1] ^= g[j];                 // x * g
      next[j] ^= gf().mul(g[j], root);     // root * g
    }
    g = std::move(next);
  }
  return g;
}

// Systematic codeword, coeffs ascending: parity at x^0..x^{2t-1}, message at
// x^{2t}..x^{N-1}.
std::vector<uint8_t> rs_encode_syms(const std::vector<uint8_t>& msg, size_t N) {
  const size_t K = msg.size();
  const size_t twot = N - K;
  auto g = rs_gen_poly(twot);
  std::vector<uint8_t> rem(twot, 0);
  for (size_t i = K; i-- > 0;) {
    uint8_t fb = msg[i] ^ rem[twot - 1];
    for (size_t j = twot - 1; j > 0; --j)
      rem[j] = rem[j - 1] ^ gf().mul(fb, g[j]);
    rem[0] = gf().mul(fb, g[0]);
  }
  std::vector<uint8_t> c(N);
  std::copy(rem.begin(), rem.end(), c.begin());
  std::copy(msg.begin(), msg.end(), c.begin() + (long)twot);
  return c;
}

uint8_t poly_eval(const std::vector<uint8_t>& p, uint8_t x) {
  uint8_t acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = (uint8_t)(gf().mul(acc, x) ^ p[i]);
  return acc;
}

// Berlekamp-Massey + Chien + Forney.  Returns false when the word is not
// correctable (locator degree mismatch or residual syndrome).
bool rs_correct(std::vector<uint8_t>& c, size_t twot) {
  const size_t N = c.size();
  std::vector<uint8_t> S(twot);
  bool clean = true;
  for (size_t j = 0; j < twot; ++j) {
    uint8_t root = gf().alpha_pow((unsigned)(j + 1));
    S[j] = poly_eval(c, root);
    if (S[j]) clean = false;
  }
  if (clean) return true;

  // Berlekamp-Massey for the error locator Lambda
  std::vector<uint8_t> Lam{1}, B{1};
  size_t L = 0, m = 1;
  uint8_t b = 1;
  for (size_t n = 0; n < twot; ++n) {
    uint8_t d = S[n];
    for (size_t i = 1; i <= L && i < Lam.size(); ++i)
      d ^= gf().mul(Lam[i], S[n - i]);
    if (d == 0) {
      ++m;
    } else if (2 * L <= n) {
      auto T = Lam;
      uint8_t coef = gf().mul(d, gf().inv(b));
      if (Lam.size() < B.size() + m) Lam.resize(B.size() + m, 0);
      for (size_t i = 0; i < B.size(); ++i) Lam[i + m] ^= gf().mul(coef, B[i]);
      L = n + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      uint8_t coef = gf().mul(d, gf().inv(b));
      if (Lam.size() < B.size() + m) Lam.resize(B.size() + m, 0);
      for (size_t i = 0; i < B.size(); ++i) Lam[i + m] ^= gf().mul(coef, B[i]);
      ++m;
    }
  }
  while (!Lam.empty() && Lam.back() == 0) Lam.pop_back();
  if (L > twot / 2) return false;

  // Chien search: position i errs iff Lambda(alpha^{-i}) == 0
  std::vector<size_t> errs;
  for (size_t i = 0; i < N; ++i) {
    uint8_t xinv = gf().alpha_pow((unsigned)(255 - i % 255));
    if (poly_eval(Lam, xinv) == 0) errs.push_back(i);
  }
  if (errs.size() != L) return false;

  // Forney with first root alpha^1: e_i = Omega(Xi^-1) / Lambda'(Xi^-1)
  std::vector<uint8_t> Om(twot, 0);
  for (size_t i = 0; i < twot; ++i) {
    uint8_t acc = 0;
    for (size_t j = 0; j <= i && j < Lam.size(); ++j)
      acc ^= gf().mul(Lam[j], S[i - j]);
    Om[i] = acc;
  }
  // formal derivative in char 2: Ld[i-1] = Lam[i] for odd i
  std::vector<uint8_t> Ld(Lam.size() ? Lam.size() - 1 : 0, 0);
  for (size_t i = 1; i < Lam.size(); i += 2) Ld[i - 1] = Lam[i];

  for (size_t i : errs) {
    uint8_t xinv = gf().alpha_pow((unsigned)(255 - i % 255));
    uint8_t denom = poly_eval(Ld, xinv);
    if (denom == 0) return false;
    uint8_t ei = gf().mul(poly_eval(Om, xinv), gf().inv(denom));
    c[i] ^= ei;
  }
  for (size_t j = 0; j < twot; ++j)
    if (poly_eval(c, gf().alpha_pow((unsigned)(j + 1)))) return false;
  return true;
}

size_t parse_num(std::string_view s) {
  size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::invalid_argument("ecc name: bad number");
  return v;
}

}  // namespace

EccSpec ecc_by_name(const std::string& name) {
  EccSpec s;
  s.name = name;
  auto rest = std::string_view(name);
  auto take = [&](std::string_view prefix) {
    if (rest.substr(0, prefix.size()) != prefix) return false;
    rest.remove_prefix(prefix.size());
    return true;
  };
  auto next_field = [&]() {
    auto us = rest.find('_');
    auto f = rest.substr(0, us);
    rest.remove_prefix(us == std::string_view::npos ? rest.size() : us + 1);
    return parse_num(f);
  };

  // worst case to overturn the code: corrupt ceil(rep/2)+... per majority run
  auto per_run = [&](size_t rep) { return rep / 2 + 1; };

  if (take("rep_")) {
    s.family = EccSpec::Family::repetition;
    s.k = next_field();
    s.rep = next_field();
    if (!rest.empty() || s.k == 0 || s.rep == 0)
      throw std::invalid_argument("ecc name: rep_K_L");
    s.n_out = s.k * s.rep;
    size_t T = per_run(s.rep) - 1;  // one run may absorb this much
    size_t cap = (s.n_out + 3) / 4 - 1;
    size_t R = std::min(T, cap);
    if (R == 0) throw std::invalid_argument("ecc: zero guaranteed radius");
    s.alpha = Rational((long long)R, (long long)s.n_out);
    return s;
  }
  if (take("rsrep_")) {
    s.family = EccSpec::Family::rs_rep;
    s.rs_n = next_field();
    s.rs_k = next_field();
    s.rep = next_field();
    if (!rest.empty()) throw std::invalid_argument("ecc name: rsrep_N_K_L");
    if (s.rs_n < 2 || s.rs_n > 255 || s.rs_k == 0 || s.rs_k >= s.rs_n)
      throw std::invalid_argument("ecc: bad reed-solomon geometry");
    if (s.rep % 2 == 0)
      throw std::invalid_argument("ecc: inner repetition must be odd");
    s.k = 8 * s.rs_k;
    s.n_out = s.rs_n * 8 * s.rep;
    size_t t_rs = (s.rs_n - s.rs_k) / 2;
    if (t_rs == 0) throw std::invalid_argument("ecc: zero guaranteed radius");
    size_t T = (t_rs + 1) * per_run(s.rep) - 1;
    size_t cap = (s.n_out + 3) / 4 - 1;
    s.alpha = Rational((long long)std::min(T, cap), (long long)s.n_out);
    return s;
  }
  throw std::invalid_argument("ecc name: unknown family");
}

BitVector ecc_encode(const EccSpec& spec, const BitVector& m) {
  if (m.n != spec.k) throw std::invalid_argument("ecc_encode: message length");
  if (spec.family == EccSpec::Family::repetition) {
    BitVector c(spec.n_out);
    for (size_t i = 0; i < spec.k; ++i)
      if (m.get(i))
        for (size_t r = 0; r < spec.rep; ++r) c.set(i * spec.rep + r, true);
    return c;
  }
  // rs_rep: pack bits into symbols LSB-first, encode, fan out with repetition
  std::vector<uint8_t> msg(spec.rs_k, 0);
  for (size_t i = 0; i < spec.k; ++i)
    if (m.get(i)) msg[i >> 3] |= (uint8_t)(1u << (i & 7));
  auto c = rs_encode_syms(msg, spec.rs_n);
  // wire order: message symbols first so puncturing reasoning stays simple
  BitVector out(spec.n_out);
  const size_t twot = spec.rs_n - spec.rs_k;
  for (size_t pos = 0; pos < spec.rs_n; ++pos) {
    // position pos on the wire carries coeff index: messages then parity
    size_t coeff = pos < spec.rs_k ? twot + pos : pos - spec.rs_k;
    for (size_t b = 0; b < 8; ++b) {
      if ((c[coeff] >> b) & 1)
        for (size_t r = 0; r < spec.rep; ++r)
          out.set((pos * 8 + b) * spec.rep + r, true);
    }
  }
  return out;
}

std::optional<BitVector> ecc_decode(const EccSpec& spec, const BitVector& x) {
  if (x.n != spec.n_out) throw std::invalid_argument("ecc_decode: length");

  // inner majority per run of rep bits; exact tie is a failure
  const size_t nbits = spec.n_out / spec.rep;
  BitVector inner(nbits);
  for (size_t i = 0; i < nbits; ++i) {
    size_t ones = 0;
    for (size_t r = 0; r < spec.rep; ++r) ones += x.get(i * spec.rep + r);
    if (2 * ones == spec.rep) return std::nullopt;
    if (2 * ones > spec.rep) inner.set(i, true);
  }

  if (spec.family == EccSpec::Family::repetition) return inner;

  const size_t twot = spec.rs_n - spec.rs_k;
  std::vector<uint8_t> c(spec.rs_n, 0);
  for (size_t pos = 0; pos < spec.rs_n; ++pos) {
    size_t coeff = pos < spec.rs_k ? twot + pos : pos - spec.rs_k;
    for (size_t b = 0; b < 8; ++b)
      if (inner.get(pos * 8 + b)) c[coeff] |= (uint8_t)(1u << b);
  }
  if (!rs_correct(c, twot)) return std::nullopt;
  BitVector m(spec.k);
  for (size_t i = 0; i < spec.k; ++i)
    if ((c[twot + (i >> 3)] >> (i & 7)) & 1) m.set(i, true);
  return m;
}

}  // namespace prc
