#include "prc/f2.hpp"

#include <algorithm>
#include <cassert>

namespace prc {

Permutation Permutation::identity(size_t n) {
  Permutation p;
  p.map.resize(n);
  for (size_t i = 0; i < n; ++i) p.map[i] = (uint32_t)i;
  return p;
}

Permutation Permutation::random(size_t n, Rng& rng) {
  Permutation p = identity(n);
  for (size_t i = n; i > 1; --i) {
    size_t j = rng.below(i);
    std::swap(p.map[i - 1], p.map[j]);
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map.resize(map.size());
  for (size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = (uint32_t)i;
  return inv;
}

Permutation compose(const Permutation& pi, const Permutation& sigma) {
  // out[i] = mid[pi.map[i]] = in[sigma.map[pi.map[i]]]
  Permutation c;
  c.map.resize(pi.size());
  for (size_t i = 0; i < pi.size(); ++i) c.map[i] = sigma.map[pi.map[i]];
  return c;
}

BitVector perm_bits(const BitVector& x, const Permutation& pi) {
  BitVector out(x.n);
  for (size_t i = 0; i < x.n; ++i)
    if (x.get(pi.map[i])) out.set(i, true);
  return out;
}

BitVector sample_fixed_weight(size_t n, size_t w, Rng& rng) {
  assert(w <= n);
  // Partial Fisher-Yates on [n]: first w slots become the support.
  std::vector<uint32_t> a(n);
  for (size_t i = 0; i < n; ++i) a[i] = (uint32_t)i;
  BitVector e(n);
  for (size_t i = 0; i < w; ++i) {
    size_t j = i + rng.below(n - i);
    std::swap(a[i], a[j]);
    e.set(a[i], true);
  }
  return e;
}

SparseParityMatrix sample_sparse_rows(size_t n, size_t t, size_t r, Rng& rng) {
  assert(t <= n);
  SparseParityMatrix H;
  H.rows = r;
  H.cols = n;
  H.row_weight = t;
  H.idx.reserve(r * t);
  std::vector<uint32_t> pick(t);
  for (size_t i = 0; i < r; ++i) {
    // uniform t-subset by rejection on small t (t << n in every use here)
    size_t got = 0;
    while (got < t) {
      uint32_t c = (uint32_t)rng.below(n);
      bool dup = false;
      for (size_t k = 0; k < got; ++k)
        if (pick[k] == c) { dup = true; break; }
      if (!dup) pick[got++] = c;
    }
    std::sort(pick.begin(), pick.end());
    for (uint32_t c : pick) H.idx.push_back(c);
  }
  return H;
}

BitVector mat_vec_sparse(const SparseParityMatrix& H, const BitVector& x) {
  assert(x.n == H.cols);
  BitVector out(H.rows);
  for (size_t i = 0; i < H.rows; ++i) {
    unsigned acc = 0;
    for (uint32_t j : H.row(i)) acc ^= (unsigned)x.get(j);
    if (acc) out.set(i, true);
  }
  return out;
}

BitVector mat_vec_dense(const DenseMatrix& G, const BitVector& u) {
  assert(u.n == G.cols);
  BitVector out(G.rows);
  for (size_t j = 0; j < G.cols; ++j)
    if (u.get(j)) out ^= G.col[j];
  return out;
}

std::vector<BitVector> kernel_basis(const SparseParityMatrix& H) {
  const size_t n = H.cols;
  // Row-reduce H (as packed rows) tracking pivot columns, then read free
  // columns off the RREF to build the kernel basis.
  std::vector<BitVector> rr;
  rr.reserve(H.rows);
  for (size_t i = 0; i < H.rows; ++i) {
    BitVector v(n);
    for (uint32_t j : H.row(i)) v.flip(j);  // flip handles repeated cols, none expected
    rr.push_back(v);
  }

  std::vector<size_t> pivot_col;  // pivot column of rr[k]
  size_t k = 0;
  for (size_t c = 0; c < n && k < rr.size(); ++c) {
    size_t p = k;
    while (p < rr.size() && !rr[p].get(c)) ++p;
    if (p == rr.size()) continue;
    std::swap(rr[k], rr[p]);
    for (size_t i = 0; i < rr.size(); ++i)
      if (i != k && rr[i].get(c)) rr[i] ^= rr[k];
    pivot_col.push_back(c);
    ++k;
  }
  rr.resize(k);  // drop zero rows

  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivot_col) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    BitVector v(n);
    v.set(c, true);
    // each pivot row reads its free-column entry into the pivot coordinate
    for (size_t i = 0; i < k; ++i)
      if (rr[i].get(c)) v.set(pivot_col[i], true);
    basis.push_back(v);
  }
  return basis;
}

DenseMatrix sample_kernel_matrix(const std::vector<BitVector>& basis, size_t d, Rng& rng) {
  DenseMatrix G;
  G.rows = basis.empty() ? 0 : basis[0].n;
  G.cols = d;
  for (size_t j = 0; j < d; ++j) {
    BitVector c(G.rows);
    for (const auto& b : basis)
      if (rng.coin()) c ^= b;
    G.col.push_back(std::move(c));
  }
  return G;
}

size_t rank_of(std::vector<BitVector> vecs) {
  if (vecs.empty()) return 0;
  const size_t n = vecs[0].n;
  size_t rank = 0;
  for (size_t c = 0; c < n && rank < vecs.size(); ++c) {
    size_t p = rank;
    while (p < vecs.size() && !vecs[p].get(c)) ++p;
    if (p == vecs.size()) continue;
    std::swap(vecs[rank], vecs[p]);
    for (size_t i = rank + 1; i < vecs.size(); ++i)
      if (vecs[i].get(c)) vecs[i] ^= vecs[rank];
    ++rank;
  }
  return rank;
}

std::optional<BitVector> gaussian_eliminate(const std::vector<BitVector>& rows,
                                            const std::vector<bool>& targets) {
  assert(rows.size() == targets.size());
  if (rows.empty()) return BitVector(0);
  const size_t n = rows[0].n;
  const size_t k = rows.size();

  // Augmented system [rows | targets], eliminate with one pivot per row.
  std::vector<BitVector> a = rows;
  std::vector<unsigned char> b(k);
  for (size_t i = 0; i < k; ++i) b[i] = targets[i] ? 1 : 0;

  std::vector<size_t> pivot_of_row(k, SIZE_MAX);
  size_t rk = 0;
  for (size_t c = 0; c < n && rk < k; ++c) {
    size_t p = rk;
    while (p < k && !a[p].get(c)) ++p;
    if (p == k) continue;
    std::swap(a[rk], a[p]);
    std::swap(b[rk], b[p]);
    for (size_t i = 0; i < k; ++i) {
      if (i != rk && a[i].get(c)) {
        a[i] ^= a[rk];
        b[i] ^= b[rk];
      }
    }
    pivot_of_row[rk] = c;
    ++rk;
  }
  for (size_t i = rk; i < k; ++i)
    if (b[i]) return std::nullopt;  // 0 = 1 row: inconsistent

  // Free variables fixed to 0, so e is supported on pivot columns only; in
  // RREF each pivot coordinate just reads its row's target.
  BitVector e(n);
  for (size_t i = 0; i < rk; ++i)
    if (b[i]) e.set(pivot_of_row[i], true);
  return e;
}

}  // namespace prc
