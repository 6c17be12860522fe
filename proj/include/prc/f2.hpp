#pragma once
// Linear algebra over F2: sparse parity-check matrices, dense generator
// matrices, kernel computation, fixed-weight sampling, permutations, and a
// targeted Gaussian solver.  These are the moving parts every scheme above is
// assembled from.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prc/bitvec.hpp"
#include "prc/rng.hpp"

namespace prc {

// r rows, each a strictly increasing list of row_weight column indices.
struct SparseParityMatrix {
  size_t rows = 0;
  size_t cols = 0;
  size_t row_weight = 0;
  std::vector<uint32_t> idx;  // rows * row_weight entries, row-major

  std::span<const uint32_t> row(size_t i) const {
    return {idx.data() + i * row_weight, row_weight};
  }
};

// Column-major n x d generator: col[j] is an n-bit vector.
struct DenseMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<BitVector> col;
};

struct Permutation {
  std::vector<uint32_t> map;  // out[i] = in[map[i]]

  size_t size() const { return map.size(); }
  static Permutation identity(size_t n);
  static Permutation random(size_t n, Rng& rng);  // Fisher-Yates
  Permutation inverse() const;
};

// compose(pi, sigma): apply sigma first, then pi, as position permutations:
// perm_bits(x, compose(pi, sigma)) == perm_bits(perm_bits(x, sigma), pi).
Permutation compose(const Permutation& pi, const Permutation& sigma);

BitVector perm_bits(const BitVector& x, const Permutation& pi);

// Uniform weight-w subset of [n] via partial Fisher-Yates.
BitVector sample_fixed_weight(size_t n, size_t w, Rng& rng);

// S_{t,r,n}: r iid rows, each a uniform t-subset of [n].
SparseParityMatrix sample_sparse_rows(size_t n, size_t t, size_t r, Rng& rng);

// H x, length rows(H).
BitVector mat_vec_sparse(const SparseParityMatrix& H, const BitVector& x);

// G u, length rows(G); u has cols(G) bits.
BitVector mat_vec_dense(const DenseMatrix& G, const BitVector& u);

// Basis of ker H = { x : Hx = 0 }, by row reduction of H.
std::vector<BitVector> kernel_basis(const SparseParityMatrix& H);

// d columns, each iid uniform over span(basis).  No rank condition: columns
// may repeat or be zero; callers wanting full column rank resample upstream.
DenseMatrix sample_kernel_matrix(const std::vector<BitVector>& basis, size_t d, Rng& rng);

size_t rank_of(std::vector<BitVector> vecs);

// Finds e with row_i . e == target_i for all i, support confined to one pivot
// column per row (greedy lowest free column).  nullopt if inconsistent.
std::optional<BitVector> gaussian_eliminate(const std::vector<BitVector>& rows,
                                            const std::vector<bool>& targets);

}  // namespace prc
