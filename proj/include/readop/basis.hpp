#ifndef READOP_BASIS_HPP
#define READOP_BASIS_HPP

#include <cstddef>
#include <shared_mutex>
#include <vector>

#include "readop/growth.hpp"
#include "readop/sparse.hpp"
#include "readop/window.hpp"

namespace readop {

struct SupportProfile {
  std::vector<std::size_t> q_row_counts;
  std::vector<std::size_t> q_col_counts;
  std::vector<std::size_t> qinv_row_counts;
  std::vector<std::size_t> qinv_col_counts;
  /// Longest chain i -> i - r a_n / i -> i - b_n followed by e_in_f.
  std::size_t max_chain_length = 0;
};

/// The two expansions relating the unit vectors f_i and the constructed
/// vectors e_i of a fixed growth sequence, plus the windows of Q
/// (Q f_j = e_j) and Q^{-1}.
///
/// e_in_f is memoized; the cache is filled in index order under a lock, so
/// concurrent callers observe the same values as a sequential run.
class BasisChange {
 public:
  /// Throws ConfigError if the sequence is not structurally valid.
  explicit BasisChange(GrowthSequence seq);

  BasisChange(const BasisChange&) = delete;
  BasisChange& operator=(const BasisChange&) = delete;

  const GrowthSequence& sequence() const { return seq_; }
  /// v_M: largest index with a defined expansion.
  std::size_t max_index() const { return max_index_; }

  /// f_i in terms of the e's: at most two entries, entry i nonzero.
  SparseVector f_in_e(std::size_t i) const;
  /// e_i in terms of the f's, support in [0, i], entry i nonzero.
  SparseVector e_in_f(std::size_t i) const;
  std::size_t chain_length(std::size_t i) const;

  /// Column j is e_in_f(j). Requires N <= v_M + 1.
  Window q_window(std::size_t n) const;
  /// Column j is f_in_e(j). Requires N <= v_M + 1.
  Window qinv_window(std::size_t n) const;

  SupportProfile support_profile(std::size_t n) const;

  /// Throws WindowError unless n <= v_M + 1.
  void check_window(std::size_t n) const;

 private:
  void check_index(std::size_t i) const;
  void extend_cache(std::size_t i) const;

  GrowthSequence seq_;
  std::size_t max_index_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<SparseVector> e_cache_;
  mutable std::vector<std::size_t> chain_cache_;
};

}  // namespace readop

#endif  // READOP_BASIS_HPP
