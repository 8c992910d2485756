#ifndef READOP_COMMUTANT_HPP
#define READOP_COMMUTANT_HPP

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "readop/basis.hpp"
#include "readop/window.hpp"

namespace readop {

/// Coefficients p_0, p_1, ... of a truncated power series.
using Series = std::vector<ExactScalar>;

/// Drops trailing zero coefficients.
Series trimmed(Series p);

struct EntryWitness {
  EntryPosition position;
  ExactScalar value;
};

/// Result of recovering a series from a window. When residual_zero is set,
/// the series reproduces the input exactly on the window; otherwise
/// failure_witness names the first entry (row-major) where the structure
/// breaks. These are statements about N x N windows only.
struct CommutantSolution {
  Series series;
  bool residual_zero = false;
  std::optional<EntryWitness> failure_witness;
  std::string note;
};

/// Lower-triangular Toeplitz window p(S): entry (i, j) = p_{i-j} for i >= j.
Window toeplitz_from_series(const Series& p, std::size_t n, Basis basis = Basis::E);

/// Tests AS = SA using (AS)_ij = a_{i,j+1} and (SA)_ij = a_{i-1,j} (0 for
/// i = 0), at every (i, j) with j + 1 < N so both sides are in the window.
/// On success returns the first column as the series.
CommutantSolution shift_commutant_extract(const Window& a);

/// Change of basis on a window: Q^{-1} A Q, and back: Q A Q^{-1}.
Window conjugate_to_e_basis(const Window& a, const BasisChange& basis);
Window conjugate_to_f_basis(const Window& a_tilde, const BasisChange& basis);

/// True iff the conjugate of the T window is exactly the shift window.
bool verify_ttilde_is_shift(const BasisChange& basis, std::size_t n);
bool verify_ttilde_is_shift(const Window& t, const BasisChange& basis);

/// sum_k p_k T^k on the window.
Window series_apply(const Series& p, const BasisChange& basis, std::size_t n);

/// Recovers p with p(T) = R on the window, or reports the first nonzero
/// entry of [T, R].
CommutantSolution solve_commutant(const Window& r, const BasisChange& basis);

/// Window-size-specific cache of Q, Q^{-1}, T and powers of T, for running
/// many commutant computations against one sequence. Thread-safe.
class CommutantLab {
 public:
  CommutantLab(const BasisChange& basis, std::size_t n);

  std::size_t size() const { return n_; }
  const BasisChange& basis() const { return basis_; }
  const Window& t() const { return t_; }
  const Window& q() const { return q_; }
  const Window& qinv() const { return qinv_; }
  /// T^k; T^k = 0 for k >= N.
  Window t_power(std::size_t k) const;

  Window conjugate_to_e_basis(const Window& a) const;
  Window conjugate_to_f_basis(const Window& a_tilde) const;
  Window series_apply(const Series& p) const;
  CommutantSolution solve(const Window& r) const;

 private:
  void check(const Window& a, Basis expected, const char* what) const;

  const BasisChange& basis_;
  std::size_t n_;
  Window q_;
  Window qinv_;
  Window t_;
  mutable std::mutex powers_mutex_;
  mutable std::vector<Window> powers_;
};

}  // namespace readop

#endif  // READOP_COMMUTANT_HPP
