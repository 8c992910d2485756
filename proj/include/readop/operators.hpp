#ifndef READOP_OPERATORS_HPP
#define READOP_OPERATORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "readop/basis.hpp"
#include "readop/interval.hpp"
#include "readop/window.hpp"

namespace readop {

/// Right shift: entries (j+1, j) = 1. Same form in either basis.
Window shift_window(std::size_t n, Basis basis = Basis::F);

/// K f_0 = f_0, K f_i = 0 otherwise.
Window k_window(std::size_t n);

/// 0/1 diagonal selecting indices divisible by m.
Window modulus_diagonal(std::size_t n, std::int64_t m, Basis basis);

// T is defined by T e_i = e_{i+1}. Its N-window is the finite section
// Q_N S_N Q_N^{-1}: the e-basis truncation of T written in f coordinates.
// Columns 0..N-2 agree with the plain principal submatrix of T; in column
// N-1 the e_N component is cut off, as S_N cuts off f_N. Requires
// N <= v_M + 1.

/// Per-column chase f_j -> e's -> shift -> f's, dropping e_N.
Window t_window(const BasisChange& basis, std::size_t n);
/// Window product q_window(N) * shift_window(N) * qinv_window(N).
Window t_window_by_conjugation(const BasisChange& basis, std::size_t n);
/// Principal N x N submatrix of T itself (column j = T f_j truncated to
/// rows < N). Requires N <= v_M.
Window t_principal_window(const BasisChange& basis, std::size_t n);

/// Exact action of T on a finitely supported vector in f coordinates.
/// Throws WindowError if the image needs an index beyond v_M.
SparseVector t_apply(const BasisChange& basis, const SparseVector& x);
/// Exact action of S_2^{(m)} (e_i -> e_i if m | i, else 0) in f coordinates.
SparseVector s2_apply(const BasisChange& basis, const SparseVector& x, std::int64_t m);

/// Q_N D_m Q_N^{-1}. Throws PreconditionError unless m divides every
/// a_n and b_n.
Window s2_window(const BasisChange& basis, std::size_t n, std::int64_t m = 2);

struct ClosedFormCheck {
  bool holds = true;
  std::optional<std::size_t> counterexample;
};

/// Checks S_2 f_i = f_i when m | i and S_2 f_i = 0 otherwise, for i < N,
/// by applying the exact s2_window to unit vectors.
ClosedFormCheck s2_closed_form_check(const BasisChange& basis, std::size_t n, std::int64_t m = 2);

/// Evidence that a window is not a multiple of the identity: a nonzero
/// off-diagonal entry, or two diagonal entries that differ.
struct NonScalarWitness {
  bool off_diagonal = false;
  EntryPosition first;
  ExactScalar first_value;
  EntryPosition second;
  ExactScalar second_value;
};

std::optional<NonScalarWitness> non_scalar_witness(const Window& w);

enum class NormFlag { AtMostOne, AboveOne, Straddles };

const char* to_string(NormFlag flag);

struct ColumnNorm {
  std::size_t column = 0;
  Interval norm;
  NormFlag flag = NormFlag::Straddles;
  unsigned precision_bits = 0;
};

struct BlockNorm {
  std::size_t block = 0;
  std::size_t first_column = 0;
  std::size_t last_column = 0;
  Interval max;
};

/// Interval enclosures of ||T f_j||_1 for j < N. Exploratory: no bound is
/// asserted.
struct NormReport {
  std::vector<ColumnNorm> columns;
  std::vector<BlockNorm> blocks;
  std::optional<Interval> overall_max;
  std::size_t argmax = 0;
  unsigned precision_bits = 0;
  unsigned precision_cap = 0;
};

/// l1 norm enclosure of an exact vector.
Interval l1_norm(const SparseVector& x, unsigned precision_bits);

/// Scans ||T f_j||_1 using the full columns of T (N <= v_M). Columns whose
/// enclosure straddles 1 are re-evaluated at doubled precision up to the cap.
NormReport norm_scan(const BasisChange& basis, std::size_t n, unsigned precision_bits = 128,
                     unsigned precision_cap = 4096);

}  // namespace readop

#endif  // READOP_OPERATORS_HPP
