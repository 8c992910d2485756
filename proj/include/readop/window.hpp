#ifndef READOP_WINDOW_HPP
#define READOP_WINDOW_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "readop/sparse.hpp"

namespace readop {

/// Which basis the coordinates of a window refer to: the unit vectors f_i
/// of l1, or the constructed vectors e_i.
enum class Basis { F, E };

const char* to_string(Basis basis);
Basis parse_basis(const std::string& text);

struct EntryPosition {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const EntryPosition&, const EntryPosition&) = default;
};

/// Leading N x N window of an operator matrix, stored by columns: column j
/// holds the coordinates of the image of the j-th basis vector, truncated to
/// rows < N.
///
/// Triangularity is a property to query, not an invariant: windows of Q and
/// Q^{-1} are upper triangular, windows of T are Hessenberg.
class Window {
 public:
  Window(std::size_t n, Basis basis);

  static Window identity(std::size_t n, Basis basis);

  std::size_t size() const { return columns_.size(); }
  Basis basis() const { return basis_; }

  const SparseVector& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<SparseVector>& columns() const { return columns_; }

  ExactScalar at(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, ExactScalar value);
  void add(std::size_t row, std::size_t col, const ExactScalar& value);
  /// Replaces column j; entries with row >= N are dropped.
  void set_column(std::size_t j, const SparseVector& column);

  std::size_t nonzeros() const;
  bool is_zero() const;
  bool is_diagonal() const;
  bool is_lower_triangular() const;
  bool is_upper_triangular() const;
  /// Diagonal identically zero (and lower triangular).
  bool is_strictly_lower() const;
  bool has_nonzero_diagonal() const;

  /// First nonzero entry in row-major order.
  std::optional<EntryPosition> first_nonzero() const;
  /// All nonzero entries in row-major order.
  std::vector<std::pair<EntryPosition, ExactScalar>> entries_row_major() const;

  /// Leading principal n x n submatrix.
  Window leading(std::size_t n) const;
  Window with_basis(Basis basis) const;

  Window& operator+=(const Window& rhs);
  Window& operator-=(const Window& rhs);
  friend Window operator+(Window lhs, const Window& rhs) { return lhs += rhs; }
  friend Window operator-(Window lhs, const Window& rhs) { return lhs -= rhs; }
  friend Window operator*(const ExactScalar& factor, const Window& w);

  friend bool operator==(const Window&, const Window&) = default;

 private:
  void check_index(std::size_t row, std::size_t col) const;

  Basis basis_;
  std::vector<SparseVector> columns_;
};

/// Standard product c_ij = sum_k a_ik b_kj of two windows with the same size
/// and basis. Columns are computed in parallel; the result is identical to
/// window_product_serial. Throws std::invalid_argument on mismatch.
Window window_product(const Window& a, const Window& b);
/// Single-threaded reference for window_product.
Window window_product_serial(const Window& a, const Window& b);

/// AB - BA.
Window commutator(const Window& a, const Window& b);

/// a^k by repeated squaring (a^0 is the identity).
Window power(const Window& a, unsigned k);

/// y_i = sum_j a_ij x_j. Throws std::invalid_argument if x has support
/// outside the window.
SparseVector apply(const Window& a, const SparseVector& x);

/// Rank by fraction-free elimination over the exact scalars.
std::size_t rank(const Window& a);

/// Builds N columns with fn(j) -> SparseVector, in parallel.
template <typename ColumnFn>
Window build_columns(std::size_t n, Basis basis, ColumnFn&& fn);

}  // namespace readop

#include "readop/kernels.hpp"

#endif  // READOP_WINDOW_HPP
