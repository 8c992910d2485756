#ifndef READOP_SPARSE_HPP
#define READOP_SPARSE_HPP

#include <cstddef>
#include <map>
#include <optional>

#include "readop/scalar.hpp"

namespace readop {

/// Coordinate vector with finitely many nonzero exact entries.
/// Zero entries are never stored.
class SparseVector {
 public:
  using Map = std::map<std::size_t, ExactScalar>;

  SparseVector() = default;
  SparseVector(std::initializer_list<std::pair<const std::size_t, ExactScalar>> entries);

  static SparseVector unit(std::size_t index) { return SparseVector{{index, ExactScalar(1)}}; }

  /// Adds value into entry index, dropping it if it cancels.
  void add(std::size_t index, const ExactScalar& value);
  void set(std::size_t index, ExactScalar value);
  /// this += factor * other
  void axpy(const ExactScalar& factor, const SparseVector& other);

  ExactScalar at(std::size_t index) const;
  const ExactScalar* find(std::size_t index) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// Largest stored index (the degree). Empty vectors have none.
  std::optional<std::size_t> max_index() const;

  Map::const_iterator begin() const { return entries_.begin(); }
  Map::const_iterator end() const { return entries_.end(); }

  SparseVector scaled(const ExactScalar& factor) const;
  SparseVector operator-() const { return scaled(ExactScalar(-1)); }
  SparseVector& operator+=(const SparseVector& rhs);
  SparseVector& operator-=(const SparseVector& rhs);

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Map entries_;
};

}  // namespace readop

#endif  // READOP_SPARSE_HPP
