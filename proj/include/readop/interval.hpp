#ifndef READOP_INTERVAL_HPP
#define READOP_INTERVAL_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace readop {

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds
/// outward, so the result always encloses the exact real result.
class Interval {
 public:
  explicit Interval(unsigned precision_bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_rational(const mpq_class& q, unsigned precision_bits);
  /// Enclosure of 1/sqrt(s).
  static Interval rec_sqrt(std::uint64_t s, unsigned precision_bits);

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(lo_)); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
  friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
  friend Interval operator*(const Interval& lhs, const Interval& rhs);

  /// 2^x, monotone so endpoints map to endpoints.
  Interval exp2() const;
  Interval abs() const;
  /// [max(lo, other.lo), max(hi, other.hi)]: encloses max(x, y).
  Interval max(const Interval& other) const;

  bool contains_zero() const;
  bool excludes_zero() const { return !contains_zero(); }
  bool contains(const mpq_class& q) const;
  /// hi <= q
  bool at_most(const mpq_class& q) const;
  /// lo > q
  bool above(const mpq_class& q) const;
  /// hi - lo < 2^e, with the width rounded up.
  bool width_below_pow2(long e) const;
  double width() const;

  /// Decimal endpoint rounded outward (down for lo, up for hi).
  std::string lower_string(int digits = 20) const;
  std::string upper_string(int digits = 20) const;
  double midpoint() const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace readop

#endif  // READOP_INTERVAL_HPP
