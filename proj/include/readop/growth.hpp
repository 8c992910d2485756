#ifndef READOP_GROWTH_HPP
#define READOP_GROWTH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "readop/errors.hpp"

namespace readop {

/// The growth sequence d = (a_1, b_1, ..., a_M, b_M), truncated to M blocks.
///
/// Values are immutable after construction. Structural validity is not
/// enforced here; see validate().
class GrowthSequence {
 public:
  /// Throws ConfigError when the lists are empty or have different lengths.
  GrowthSequence(std::vector<std::int64_t> a, std::vector<std::int64_t> b);

  /// Builds from the interleaved form a_1,b_1,a_2,b_2,...
  static GrowthSequence from_interleaved(std::span<const std::int64_t> d);

  std::size_t blocks() const { return a_.size(); }

  /// a_n for 0 <= n <= M, with the convention a_0 = 1.
  std::int64_t a(std::size_t n) const;
  /// b_n for 1 <= n <= M.
  std::int64_t b(std::size_t n) const;
  /// v_0 = 0, v_n = n (a_n + b_n). Throws WindowError for n > M.
  std::int64_t v(std::size_t n) const;

  /// v_M, the largest index the sequence classifies.
  std::int64_t last_index() const { return v(blocks()); }

  bool all_even() const { return divisible_by(2); }
  bool divisible_by(std::int64_t m) const;

  std::vector<std::int64_t> interleaved() const;
  std::string to_string() const;

  friend bool operator==(const GrowthSequence&, const GrowthSequence&) = default;

 private:
  std::vector<std::int64_t> a_;
  std::vector<std::int64_t> b_;
};

struct Violation {
  std::string rule;
  std::size_t block = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool even_ok = false;
  std::int64_t modulus = 1;
  bool divisible_ok = false;
  bool require_even = false;

  /// Blocks are well formed and the case ranges partition [0, v_M].
  bool structurally_valid() const { return violations.empty(); }
  /// Structural validity plus any requested evenness or divisibility.
  bool ok() const;
  /// One human-readable line per failure, including requested flags.
  std::vector<std::string> errors() const;
};

/// Checks the structural conditions that make the index cases a partition:
/// a_1 < b_1 < a_2 < ... strictly increasing, a_n > v_{n-1} and
/// b_n > (n-1) a_n. Evenness and m-divisibility are reported as flags and
/// only count as errors when requested.
ValidationReport validate(const GrowthSequence& seq, bool require_even = false,
                          std::int64_t m = 1);

enum class CaseKind { Zero, A, B, C, D };

const char* to_string(CaseKind kind);

/// Which construction case an index falls into.
///
/// For case B, r = 0 encodes the range (v_{n-1}, a_n). h is only meaningful
/// for cases B and D and is kept as an exact rational (a half-integer in
/// general).
struct IndexCase {
  CaseKind kind = CaseKind::Zero;
  std::int64_t n = 0;
  std::int64_t r = 0;
  mpq_class h = 0;

  friend bool operator==(const IndexCase&, const IndexCase&) = default;
};

std::string to_string(const IndexCase& c);

/// Classifies 0 <= i <= v_M. Throws ConfigError on a structurally invalid
/// sequence and WindowError when i > v_M.
IndexCase classify(const GrowthSequence& seq, std::int64_t i);

}  // namespace readop

#endif  // READOP_GROWTH_HPP
