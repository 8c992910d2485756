#ifndef READOP_SCALAR_HPP
#define READOP_SCALAR_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "readop/interval.hpp"

namespace readop {

using Rational = mpq_class;

/// Exponent r + sum_s c_s / sqrt(s) of a power of two.
///
/// Radicands are square-free and > 1, kept sorted, with nonzero
/// coefficients. Inside a canonical ExactScalar the rational part lies in
/// [0, 1); the integer part lives in the coefficient.
struct DyadicExponent {
  Rational rational = 0;
  std::vector<std::pair<std::uint64_t, Rational>> radicals;

  bool is_rational() const { return radicals.empty(); }

  DyadicExponent& operator+=(const DyadicExponent& rhs);
  DyadicExponent operator-() const;

  /// Lexicographic on (rational, radical entries).
  friend std::strong_ordering operator<=>(const DyadicExponent& lhs, const DyadicExponent& rhs);
  friend bool operator==(const DyadicExponent& lhs, const DyadicExponent& rhs) {
    return (lhs <=> rhs) == std::strong_ordering::equal;
  }

  /// "r + c1/sqrt(s1) + ..." (the part inside "2^(...)").
  std::string to_string() const;
  Interval evaluate(unsigned precision_bits) const;
};

/// Writes s = k^2 * t with t square-free; returns {k, t}.
std::pair<std::uint64_t, std::uint64_t> square_free_split(std::uint64_t s);

/// Finite sum of terms q * 2^e, q rational, in canonical form: exponents
/// pairwise distinct and sorted, no zero coefficients. Zero has no terms.
///
/// Equality is canonical-form identity.
class ExactScalar {
 public:
  struct Term {
    Rational coefficient;
    DyadicExponent exponent;
    friend bool operator==(const Term& lhs, const Term& rhs) {
      return lhs.coefficient == rhs.coefficient && lhs.exponent == rhs.exponent;
    }
  };

  ExactScalar() = default;
  ExactScalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  ExactScalar(long q) : ExactScalar(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(int q) : ExactScalar(Rational(q)) {}  // NOLINT(google-explicit-constructor)

  /// 2^((numer_halves / 2) / sqrt(radicand)). Square parts of the radicand
  /// are pulled into the exponent coefficient, so a perfect-square radicand
  /// gives a purely rational exponent. Throws std::invalid_argument for
  /// radicand 0.
  static ExactScalar from_power_of_two(std::int64_t numer_halves, std::uint64_t radicand);
  static ExactScalar monomial(Rational coefficient, DyadicExponent exponent);
  /// Builds from arbitrary (possibly unnormalized, repeated) terms.
  static ExactScalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// True for a pure rational (at most one term with exponent 0).
  bool is_rational() const;
  /// Valid when is_rational().
  Rational rational_value() const;

  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs);
  ExactScalar& operator*=(const ExactScalar& rhs);
  ExactScalar operator-() const;
  friend ExactScalar operator+(ExactScalar lhs, const ExactScalar& rhs) { return lhs += rhs; }
  friend ExactScalar operator-(ExactScalar lhs, const ExactScalar& rhs) { return lhs -= rhs; }
  friend ExactScalar operator*(const ExactScalar& lhs, const ExactScalar& rhs);

  /// Inverse of a single-term scalar. Throws std::domain_error otherwise.
  ExactScalar inverse() const;

  friend bool operator==(const ExactScalar& lhs, const ExactScalar& rhs) = default;

  /// Enclosure of the real value. Requires precision_bits >= 16.
  Interval evaluate(unsigned precision_bits) const;

  /// "q * 2^(r + c/sqrt(s) ...)" terms joined by " + "; zero is "0".
  std::string to_string() const;
  /// Inverse of to_string(); also accepts bare rationals as terms and
  /// unnormalized exponents. Throws std::invalid_argument on bad input.
  static ExactScalar parse(std::string_view text);

 private:
  void normalize();

  std::vector<Term> terms_;
};

bool is_zero(const ExactScalar& x);

}  // namespace readop

#endif  // READOP_SCALAR_HPP
