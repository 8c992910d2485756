#ifndef READOP_SUITE_HPP
#define READOP_SUITE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "readop/commutant.hpp"
#include "readop/config.hpp"
#include "readop/window.hpp"

namespace readop {

enum class CheckStatus { Pass, Fail, Refused, Exploratory };
const char* to_string(CheckStatus status);
CheckStatus parse_status(const std::string& text);

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  double duration_ms = 0;
  /// One line for the text report.
  std::string summary;
};

struct Report {
  std::string config_digest;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;

  /// Checks are emitted sorted by name, each carrying the frozen fields
  /// check, status, witness, duration_ms and config_digest.
  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  std::string to_text() const;
  /// 1 if any check failed, else 0.
  int exit_code() const;
};

/// Describes the window caveat attached to every report.
extern const char* const kWindowScopeNote;

/// {row, col, scalar_text}
nlohmann::ordered_json entry_json(EntryPosition pos, const ExactScalar& value);

/// Deterministic sampling helpers. They only use raw mt19937_64 output, so
/// the draws do not depend on the standard library's distributions.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : rng_(seed) {}
  /// Uniform in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  /// p/q with |p| <= 9, 1 <= q <= 9; nonzero when requested.
  Rational rational(bool nonzero = false);
  /// Coefficients p_0..p_deg with deg uniform in [0, max_degree].
  Series series(std::size_t max_degree);

 private:
  std::mt19937_64 rng_;
};

/// Runs a single named suite against an already validated configuration.
CheckResult run_check(const std::string& name, const RunConfig& config, const BasisChange& basis);

/// Runs every requested suite. Throws ConfigError if the configuration is
/// invalid (see require_valid).
Report run_suite(const RunConfig& config);

}  // namespace readop

#endif  // READOP_SUITE_HPP
