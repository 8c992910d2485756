#ifndef READOP_CONFIG_HPP
#define READOP_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "readop/growth.hpp"

namespace readop {

enum class OutputFormat { Text, Json };

/// d_k = first_a * ratio^k for k = 0 .. 2*blocks - 1.
struct SequenceRule {
  std::string kind = "geometric";
  std::int64_t first_a = 0;
  std::int64_t ratio = 0;
  std::size_t blocks = 0;
};

/// Parses "geometric,first_a=A,ratio=R,blocks=M".
SequenceRule parse_rule(std::string_view text);
std::vector<std::int64_t> expand_rule(const SequenceRule& rule);

/// Names of all suites, sorted.
const std::vector<std::string>& all_suites();

struct RunConfig {
  GrowthSequence sequence;
  std::optional<SequenceRule> rule;
  std::size_t window = 0;
  std::int64_t modulus = 2;
  unsigned precision_bits = 128;
  unsigned precision_cap = 4096;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
  std::vector<std::string> suites;
  bool timing = false;
  ValidationReport validation;

  /// Order-independent description of everything that affects results.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string digest() const;
};

/// Parses "key=value" lines (keys: d, rule, N, m, precision, precision_cap,
/// seed, format, suites, timing; '#' starts a comment). Defaults: N = v_M,
/// m = 2, precision 128 (cap 4096), seed 1, text output, all suites.
///
/// Throws ConfigError for malformed values, a missing sequence, or a rule
/// that expands to an invalid sequence. An explicit d that violates the
/// structural conditions parses; the violations are in `validation`.
RunConfig parse_config(std::string_view text);

/// Throws ConfigError listing every structural violation, or when N is
/// outside [1, v_M + 1].
void require_valid(const RunConfig& config);

}  // namespace readop

#endif  // READOP_CONFIG_HPP
