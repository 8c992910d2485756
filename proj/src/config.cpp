#include "readop/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace readop {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int value{};
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("malformed integer for " + key + ": '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<std::int64_t> parse_sequence(const std::string& text) {
  std::vector<std::int64_t> d;
  for (const auto& item : split(text, ',')) d.push_back(parse_int<std::int64_t>("d", item));
  return d;
}

}  // namespace

SequenceRule parse_rule(std::string_view text) {
  const auto parts = split(std::string(text), ',');
  if (parts.empty() || parts.front() != "geometric") {
    throw ConfigError("unknown sequence rule '" + std::string(text) +
                      "' (expected geometric,first_a=A,ratio=R,blocks=M)");
  }
  SequenceRule rule;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto eq = parts[k].find('=');
    if (eq == std::string::npos) throw ConfigError("malformed rule field '" + parts[k] + "'");
    const auto key = trim(parts[k].substr(0, eq));
    const auto value = trim(parts[k].substr(eq + 1));
    if (key == "first_a") {
      rule.first_a = parse_int<std::int64_t>(key, value);
    } else if (key == "ratio") {
      rule.ratio = parse_int<std::int64_t>(key, value);
    } else if (key == "blocks") {
      rule.blocks = parse_int<std::size_t>(key, value);
    } else {
      throw ConfigError("unknown rule field '" + key + "'");
    }
  }
  if (rule.first_a < 1 || rule.ratio < 2 || rule.blocks < 1) {
    throw ConfigError("geometric rule needs first_a >= 1, ratio >= 2, blocks >= 1");
  }
  return rule;
}

std::vector<std::int64_t> expand_rule(const SequenceRule& rule) {
  std::vector<std::int64_t> d;
  std::int64_t term = rule.first_a;
  for (std::size_t k = 0; k < 2 * rule.blocks; ++k) {
    d.push_back(term);
    if (k + 1 < 2 * rule.blocks && __builtin_mul_overflow(term, rule.ratio, &term)) {
      throw ConfigError("geometric rule overflows 64-bit integers");
    }
  }
  return d;
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "basis-inverse",    "chain-commutators",   "classify-partition",
      "commutant-roundtrip", "non-scalarity",    "norm-scan",
      "s2-closed-form",   "toeplitz-lemma",      "ttilde-shift"};
  return names;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "d=" << sequence.to_string() << ";N=" << window << ";m=" << modulus
      << ";precision=" << precision_bits << ";precision_cap=" << precision_cap << ";seed=" << seed
      << ";suites=";
  for (std::size_t k = 0; k < suites.size(); ++k) out << (k ? "," : "") << suites[k];
  return out.str();
}

std::string RunConfig::digest() const {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : canonical()) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> values;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'");
    values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  static const std::vector<std::string> known = {"d", "rule", "N", "m", "precision", "precision_cap",
                                                 "seed", "format", "suites", "timing"};
  for (const auto& [key, value] : values) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

  std::optional<SequenceRule> rule;
  std::vector<std::int64_t> d;
  if (values.count("d") && values.count("rule")) {
    throw ConfigError("give either d or rule, not both");
  }
  if (values.count("d")) {
    d = parse_sequence(values["d"]);
  } else if (values.count("rule")) {
    rule = parse_rule(values["rule"]);
    d = expand_rule(*rule);
  } else {
    throw ConfigError("sequence required (set d=a1,b1,... or rule=geometric,...)");
  }
  auto seq = GrowthSequence::from_interleaved(d);
  auto report = validate(seq);
  if (rule && !report.structurally_valid()) {
    throw ConfigError("rule expands to an invalid sequence " + seq.to_string() + ": " +
                      report.errors().front());
  }

  RunConfig config{.sequence = seq, .rule = rule, .suites = {}, .validation = report};
  config.window = values.count("N") ? parse_int<std::size_t>("N", values["N"])
                                    : static_cast<std::size_t>(std::max<std::int64_t>(seq.last_index(), 1));
  if (values.count("m")) config.modulus = parse_int<std::int64_t>("m", values["m"]);
  if (config.modulus < 1) throw ConfigError("m must be a positive integer");
  if (values.count("precision")) config.precision_bits = parse_int<unsigned>("precision", values["precision"]);
  if (values.count("precision_cap")) {
    config.precision_cap = parse_int<unsigned>("precision_cap", values["precision_cap"]);
  }
  if (config.precision_bits < 16) throw ConfigError("precision must be at least 16 bits");
  if (config.precision_cap > 4096) throw ConfigError("precision_cap is at most 4096 bits");
  if (config.precision_bits > config.precision_cap) {
    throw ConfigError("precision exceeds precision_cap");
  }
  if (values.count("seed")) config.seed = parse_int<std::uint64_t>("seed", values["seed"]);
  if (values.count("format")) {
    if (values["format"] == "text") {
      config.format = OutputFormat::Text;
    } else if (values["format"] == "json") {
      config.format = OutputFormat::Json;
    } else {
      throw ConfigError("format must be text or json");
    }
  }
  if (values.count("timing")) config.timing = values["timing"] == "true" || values["timing"] == "1";
  if (values.count("suites") && values["suites"] != "all") {
    for (const auto& name : split(values["suites"], ',')) {
      const auto& names = all_suites();
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ConfigError("unknown suite '" + name + "'");
      }
      config.suites.push_back(name);
    }
    std::sort(config.suites.begin(), config.suites.end());
    config.suites.erase(std::unique(config.suites.begin(), config.suites.end()), config.suites.end());
  } else {
    config.suites = all_suites();
  }
  config.validation.modulus = config.modulus;
  config.validation.divisible_ok = seq.divisible_by(config.modulus);
  return config;
}

void require_valid(const RunConfig& config) {
  if (!config.validation.structurally_valid()) {
    std::string msg = "invalid growth sequence " + config.sequence.to_string() + ":";
    for (const auto& e : config.validation.errors()) {
      if (e.rfind("divisibility", 0) == 0) continue;
      msg += "\n  " + e;
    }
    throw ConfigError(msg);
  }
  const auto limit = static_cast<std::size_t>(config.sequence.last_index()) + 1;
  if (config.window < 1 || config.window > limit) {
    throw ConfigError("window N = " + std::to_string(config.window) + " must lie in [1, v_M + 1 = " +
                      std::to_string(limit) + "]");
  }
}

}  // namespace readop
