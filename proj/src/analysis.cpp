#include "prc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prc {

namespace {

constexpr unsigned long long kEnumLimit = 10'000'000ull;

uint64_t mask_of(const BitVector& x) {
  if (x.n > 64) throw std::invalid_argument("analysis: vector wider than 64 bits");
  return x.n == 0 ? 0 : x.w[0];
}

BitVector vec_of(uint64_t m, size_t n) {
  BitVector v(n);
  if (n) v.w[0] = m;
  return v;
}

// next weight-preserving mask in numeric order
uint64_t gosper_next(uint64_t v) {
  uint64_t c = v & (~v + 1);
  uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

template <class F>
void for_each_weight_mask(size_t n, size_t t, F&& f) {
  if (t > n) return;
  if (t == 0) {
    f(uint64_t(0));
    return;
  }
  uint64_t v = t == 64 ? ~uint64_t(0) : (uint64_t(1) << t) - 1;
  uint64_t last = v << (n - t);
  while (true) {
    f(v);
    if (v == last) break;
    v = gosper_next(v);
  }
}

// echelon basis of a list of masks, one entry per leading bit
struct XorBasis {
  uint64_t at[64] = {0};
  size_t dim = 0;

  void insert(uint64_t v) {
    for (int b = 63; b >= 0 && v; --b) {
      if (!((v >> b) & 1)) continue;
      if (!at[b]) {
        at[b] = v;
        dim++;
        return;
      }
      v ^= at[b];
    }
  }
  std::vector<uint64_t> rows() const {
    std::vector<uint64_t> out;
    for (int b = 63; b >= 0; --b)
      if (at[b]) out.push_back(at[b]);
    return out;
  }
};

std::vector<uint64_t> generator_basis(size_t n, size_t d, Rng& rng) {
  XorBasis basis;
  for (size_t j = 0; j < d; ++j) basis.insert(mask_of(rng.uniform_bits(n)));
  return basis.rows();
}

// walks the weight-t parity set of the span of basis: count plus how many
// members hit the probe with odd parity
struct ParityScan {
  size_t count = 0;
  size_t odd = 0;
};

ParityScan scan_parity_set(size_t n, size_t t, const std::vector<uint64_t>& basis,
                           uint64_t probe) {
  if (binom_u64(n, t) > kEnumLimit)
    throw std::length_error("parity set enumeration too large");
  ParityScan s;
  for_each_weight_mask(n, t, [&](uint64_t w) {
    for (uint64_t b : basis)
      if (__builtin_parityll(w & b)) return;
    s.count++;
    s.odd += __builtin_parityll(w & probe);
  });
  return s;
}

double wilson_like_guard(double x) { return x; }  // keeps -Wunused quiet on NDEBUG paths

}  // namespace

SmallCode small_code_from(const DenseMatrix& G) {
  if (G.rows > 28) throw std::invalid_argument("small code: more than 28 positions");
  if (G.cols > 12) throw std::invalid_argument("small code: dimension above 12");
  SmallCode C;
  C.gen = G;
  C.n = G.rows;
  std::vector<uint64_t> colm(G.cols);
  for (size_t j = 0; j < G.cols; ++j) colm[j] = mask_of(G.col[j]);
  std::vector<uint64_t> words;
  words.reserve(size_t(1) << G.cols);
  for (uint64_t u = 0; u < (uint64_t(1) << G.cols); ++u) {
    uint64_t c = 0;
    for (size_t j = 0; j < G.cols; ++j)
      if ((u >> j) & 1) c ^= colm[j];
    words.push_back(c);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  C.dim = (size_t)__builtin_ctzll(words.size());
  C.words.reserve(words.size());
  for (uint64_t w : words) C.words.push_back(vec_of(w, C.n));
  return C;
}

SmallCode random_small_code(size_t n, size_t d, Rng& rng) {
  DenseMatrix G;
  G.rows = n;
  G.cols = d;
  for (size_t j = 0; j < d; ++j) G.col.push_back(rng.uniform_bits(n));
  return small_code_from(G);
}

unsigned long long binom_u64(size_t n, size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // exact: i consecutive integers divide out
    if (acc > (unsigned __int128)~0ull)
      throw std::overflow_error("binomial exceeds 64 bits");
  }
  return (unsigned long long)acc;
}

Rational bias_over(const std::vector<BitVector>& parities, const BitVector& x) {
  if (parities.empty()) throw std::invalid_argument("bias over an empty parity set");
  long long odd = 0;
  for (const auto& w : parities) {
    uint64_t acc = 0;
    for (size_t i = 0; i < w.w.size() && i < x.w.size(); ++i) acc ^= w.w[i] & x.w[i];
    odd += __builtin_parityll(acc);
  }
  long long count = (long long)parities.size();
  return Rational(count - 2 * odd, count);
}

Rational krawtchouk_bias(size_t n, size_t t, size_t w) {
  if (w > n || t > n) throw std::invalid_argument("weight-class bias out of range");
  long long total = (long long)binom_u64(n, t);
  long long num = 0;
  for (size_t j = 0; j <= t; ++j) {
    unsigned long long term = 0;
    if (j <= w && t - j <= n - w) term = binom_u64(w, j) * binom_u64(n - w, t - j);
    num += (j % 2 ? -1 : 1) * (long long)term;
  }
  return Rational(num, total);
}

std::vector<BitVector> enumerate_parity_set(const SmallCode& C, size_t t) {
  if (binom_u64(C.n, t) > kEnumLimit)
    throw std::length_error("parity set enumeration too large");
  XorBasis basis;
  for (size_t j = 0; j < C.gen.cols; ++j) basis.insert(mask_of(C.gen.col[j]));
  auto rows = basis.rows();
  std::vector<BitVector> out;
  for_each_weight_mask(C.n, t, [&](uint64_t w) {
    for (uint64_t b : rows)
      if (__builtin_parityll(w & b)) return;
    out.push_back(vec_of(w, C.n));
  });
  return out;
}

OmarCheck verify_omar_identity(const SmallCode& C, size_t t, const BitVector& x) {
  if (x.n != C.n) throw std::invalid_argument("identity check: length mismatch");
  XorBasis basis;
  for (size_t j = 0; j < C.gen.cols; ++j) basis.insert(mask_of(C.gen.col[j]));
  auto scan = scan_parity_set(C.n, t, basis.rows(), mask_of(x));
  if (scan.count == 0)
    throw std::invalid_argument("identity check: empty parity set");

  OmarCheck chk;
  chk.parity_count = scan.count;
  chk.lhs = Rational((long long)scan.count - 2 * (long long)scan.odd,
                     (long long)scan.count);
  Rational sum(0, 1);
  uint64_t xm = mask_of(x);
  for (const auto& c : C.words)
    sum = sum + krawtchouk_bias(C.n, t, (size_t)__builtin_popcountll(xm ^ mask_of(c)));
  Rational factor((long long)binom_u64(C.n, t),
                  (long long)((uint64_t(1) << C.dim) * scan.count));
  chk.rhs = factor * sum;
  chk.equal = chk.lhs == chk.rhs;
  return chk;
}

SandwichCheck verify_parity_bias_bounds(const BitVector& x, size_t t) {
  size_t n = x.n;
  if (t < 2 || t % 2 != 0)
    throw std::invalid_argument("bias sandwich: t must be even and at least 2");
  if (2 * t * t > n)
    throw std::invalid_argument("bias sandwich: t exceeds sqrt(n/2)");
  SandwichCheck chk;
  Rational b = bias_of(x);
  chk.value = krawtchouk_bias(n, t, x.weight());
  chk.upper = b.pow_u((unsigned)t);
  chk.has_lower = !b.is_zero();
  if (chk.has_lower) {
    chk.lower = chk.upper - Rational(2 * (long long)(t * t), (long long)n) *
                                b.pow_u((unsigned)t - 2);
    chk.ok = chk.lower <= chk.value && chk.value <= chk.upper;
  } else {
    chk.lower = Rational(0, 1);
    chk.ok = chk.value <= chk.upper;
  }
  return chk;
}

ConcentrationReport estimate_parity_concentration(size_t n, size_t d, size_t t,
                                                  size_t num_codes, Rng& rng,
                                                  double tol) {
  if (n > 64) throw std::invalid_argument("concentration: n above 64");
  ConcentrationReport rep;
  rep.codes = num_codes;
  rep.tol = tol;
  rep.expected = (double)binom_u64(n, t) * std::pow(2.0, -(double)d);
  rep.in_hypothesis =
      (double)d <= std::ceil((double)t * std::log2((double)n) / 3.0) + 1e-9;
  rep.min_ratio = 0.0;
  rep.max_ratio = 0.0;
  for (size_t i = 0; i < num_codes; ++i) {
    auto basis = generator_basis(n, d, rng);
    auto scan = scan_parity_set(n, t, basis, 0);
    double ratio = (double)scan.count / rep.expected;
    if (i == 0) {
      rep.min_ratio = rep.max_ratio = ratio;
    } else {
      rep.min_ratio = std::min(rep.min_ratio, ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    if (std::fabs(ratio - 1.0) <= tol) rep.within++;
  }
  return rep;
}

BalanceReport check_rlc_balance(size_t n, size_t d, size_t num_codes, Rng& rng) {
  if (d > 20) throw std::invalid_argument("balance: dimension above 20");
  BalanceReport rep;
  rep.codes = num_codes;
  rep.threshold = 2.0 * std::sqrt((double)d / (double)n);
  for (size_t i = 0; i < num_codes; ++i) {
    std::vector<BitVector> cols;
    for (size_t j = 0; j < d; ++j) cols.push_back(rng.uniform_bits(n));
    bool good = true;
    BitVector c(n);
    // gray-code walk XORs one generator per step and visits the whole code
    for (uint64_t u = 1; u < (uint64_t(1) << d) && good; ++u) {
      c = c ^ cols[(size_t)__builtin_ctzll(u)];
      size_t w = c.weight();
      if (w == 0) continue;  // only nonzero codewords face the bound
      long long centered = (long long)n - 2 * (long long)w;
      good = (centered * centered) <= 4 * (long long)d * (long long)n;
    }
    if (good) rep.balanced++;
  }
  return rep;
}

JohnsonCheck johnson_count(const SmallCode& C, const BitVector& x, const Rational& tau) {
  if (x.n != C.n) throw std::invalid_argument("johnson: length mismatch");
  JohnsonCheck chk;
  size_t dmin = C.n + 1;
  for (const auto& c : C.words) {
    size_t w = c.weight();
    if (w > 0) dmin = std::min(dmin, w);
  }
  chk.delta_code = dmin > C.n
                       ? Rational(0, 1)
                       : Rational((long long)C.n - 2 * (long long)dmin, (long long)C.n);
  chk.hypothesis_met = tau.num > 0 && tau * tau > chk.delta_code;
  for (const auto& c : C.words)
    if (bias_of(x ^ c).abs() >= tau) chk.count++;
  if (chk.hypothesis_met) {
    chk.bound = (Rational(1, 1) - chk.delta_code) / (tau * tau - chk.delta_code);
    chk.ok = Rational::of_int((long long)chk.count) <= chk.bound;
  } else {
    chk.bound = Rational(0, 1);
    chk.ok = false;
  }
  return chk;
}

BiasTrialReport empirical_bias_floor(size_t n, size_t d, size_t t, size_t trials,
                                     Rng& rng) {
  if (n > 64) throw std::invalid_argument("bias floor: n above 64");
  BiasTrialReport rep;
  rep.trials = trials;
  rep.worst_ratio = 1.0;
  const Rational nine_tenths(9, 10);
  for (size_t i = 0; i < trials; ++i) {
    auto basis = generator_basis(n, d, rng);
    size_t w = (size_t)rng.below(n / 16 + 1);
    uint64_t e = mask_of(sample_fixed_weight(n, w, rng));
    auto scan = scan_parity_set(n, t, basis, e);
    if (scan.count == 0) continue;  // counts as a failed trial
    Rational bias((long long)scan.count - 2 * (long long)scan.odd,
                  (long long)scan.count);
    Rational target = Rational((long long)n - 2 * (long long)w, (long long)n)
                          .pow_u((unsigned)t);
    if (bias >= nine_tenths * target) rep.passed++;
    rep.worst_ratio = std::min(rep.worst_ratio, bias.to_double() / target.to_double());
  }
  return rep;
}

BiasTrialReport empirical_bias_ceiling(size_t n, size_t d, size_t t, size_t trials,
                                       Rng& rng) {
  if (n > 64) throw std::invalid_argument("bias ceiling: n above 64");
  BiasTrialReport rep;
  rep.trials = trials;
  rep.worst_ratio = 0.0;
  double eps = (double)d / ((double)t * std::log2((double)n));
  for (size_t i = 0; i < trials; ++i) {
    auto basis = generator_basis(n, d, rng);
    // an independent code supplies the nonzero word the bound speaks about
    std::vector<uint64_t> other(d);
    for (size_t j = 0; j < d; ++j) other[j] = mask_of(rng.uniform_bits(n));
    uint64_t cprime = 0;
    for (int guard = 0; guard < 100 && cprime == 0; ++guard) {
      uint64_t u = rng.below((uint64_t(1) << d) - 1) + 1;
      cprime = 0;
      for (size_t j = 0; j < d; ++j)
        if ((u >> j) & 1) cprime ^= other[j];
    }
    if (cprime == 0) continue;  // degenerate draw, counts as failed
    size_t w = (size_t)rng.below(n / 16 + 1);
    uint64_t e = mask_of(sample_fixed_weight(n, w, rng));
    auto scan = scan_parity_set(n, t, basis, cprime ^ e);
    if (scan.count == 0) continue;
    double bias = 1.0 - 2.0 * (double)scan.odd / (double)scan.count;
    double bias_e = 1.0 - 2.0 * (double)w / (double)n;
    double bound = 2.0 * std::pow((double)n, 4.0 * eps) *
                   std::pow(1.0 - bias_e + std::sqrt(8.0 * (double)d / (double)n),
                            (double)t);
    if (bias <= bound) rep.passed++;
    rep.worst_ratio = std::max(rep.worst_ratio, bias / bound);
  }
  (void)wilson_like_guard(eps);
  return rep;
}

double hypergeometric_tail(size_t N, size_t K, size_t n_draw, double t_dev) {
  if (N == 0 || K > N) throw std::invalid_argument("hypergeometric: bad population");
  if (!(t_dev > 0.0) || !(t_dev < (double)K / (double)N))
    throw std::invalid_argument("hypergeometric: deviation out of range");
  return std::exp(-2.0 * t_dev * t_dev * (double)n_draw);
}

double chernoff_threshold(size_t r, const Rational& zeta) {
  if (!(zeta > Rational(0, 1)) || !(zeta < Rational(1, 2)))
    throw std::invalid_argument("chernoff: zeta must sit in (0, 1/2)");
  double z = zeta.to_double();
  return std::exp(-(double)r * z * z);
}

ResampleReport resampling_equivalence_check(size_t n, size_t d, size_t t, size_t r,
                                            size_t trials, Rng& rng) {
  if (n > 64) throw std::invalid_argument("resampling: n above 64");
  ResampleReport rep;
  rep.trials = trials;
  uint64_t probe = n / 4 == 0 ? 1 : (n / 4 == 64 ? ~uint64_t(0) : (uint64_t(1) << (n / 4)) - 1);

  auto draw_code = [&](std::vector<uint64_t>& row_masks) {
    // the nested sampler: parity rows first, then a code from their kernel
    auto H = sample_sparse_rows(n, t, r, rng);
    row_masks.assign(r, 0);
    for (size_t i = 0; i < r; ++i)
      for (uint32_t col : H.row(i)) row_masks[i] |= uint64_t(1) << col;
    auto kernel = kernel_basis(H);
    auto G = sample_kernel_matrix(kernel, d, rng);
    XorBasis basis;
    for (const auto& col : G.col) basis.insert(mask_of(col));
    return basis.rows();
  };

  std::vector<size_t> hist_a(r + 1, 0), hist_b(r + 1, 0);
  std::vector<uint64_t> rows;
  for (size_t i = 0; i < trials; ++i) {
    draw_code(rows);
    size_t wt = 0;
    for (uint64_t m : rows) wt += __builtin_parityll(m & probe);
    hist_a[wt]++;
  }
  for (size_t i = 0; i < trials; ++i) {
    auto cbasis = draw_code(rows);
    std::vector<uint64_t> pset;
    for_each_weight_mask(n, t, [&](uint64_t w) {
      for (uint64_t b : cbasis)
        if (__builtin_parityll(w & b)) return;
      pset.push_back(w);
    });
    if (pset.size() < r) {
      rep.feasible = false;
      continue;
    }
    // r distinct rows, uniform over subsets
    for (size_t j = 0; j < r; ++j) {
      size_t pick = j + (size_t)rng.below(pset.size() - j);
      std::swap(pset[j], pset[pick]);
    }
    size_t wt = 0;
    for (size_t j = 0; j < r; ++j) wt += __builtin_parityll(pset[j] & probe);
    hist_b[wt]++;
  }

  // two-sample homogeneity chi-square; thin cells pool into one bucket
  std::vector<std::pair<double, double>> buckets;
  double tail_a = 0, tail_b = 0;
  for (size_t i = 0; i <= r; ++i) {
    if (hist_a[i] + hist_b[i] >= 10)
      buckets.push_back({(double)hist_a[i], (double)hist_b[i]});
    else {
      tail_a += (double)hist_a[i];
      tail_b += (double)hist_b[i];
    }
  }
  if (tail_a + tail_b > 0) buckets.push_back({tail_a, tail_b});
  double chi = 0;
  for (auto [a, b] : buckets) {
    double e = (a + b) / 2.0;
    if (e <= 0) continue;
    chi += (a - e) * (a - e) / e + (b - e) * (b - e) / e;
  }
  rep.chi_square = chi;
  rep.dof = buckets.size() > 1 ? buckets.size() - 1 : 0;
  rep.separated = chi > (double)rep.dof + 3.0 * std::sqrt(2.0 * (double)rep.dof);
  return rep;
}

}  // namespace prc
