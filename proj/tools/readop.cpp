// Command-line front end: validate sequences, dump operator windows, run the
// verification suites and solve commutant problems read from matrix files.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "readop/basis.hpp"
#include "readop/commutant.hpp"
#include "readop/config.hpp"
#include "readop/errors.hpp"
#include "readop/matrix_io.hpp"
#include "readop/operators.hpp"
#include "readop/suite.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace readop;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> overrides;
  bool require_even = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string line_key(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return {};
  const auto first = line.find_first_not_of(" \t");
  const auto last = line.find_last_not_of(" \t", eq == 0 ? 0 : eq - 1);
  if (first == std::string::npos || first >= eq) return {};
  return line.substr(first, last - first + 1);
}

// Command-line flags override the file; d and rule replace each other.
RunConfig resolve(const Flags& flags) {
  std::string text;
  if (!flags.config_file.empty()) {
    std::istringstream in(slurp(flags.config_file));
    const bool sequence_overridden = flags.overrides.count("d") || flags.overrides.count("rule");
    std::string line;
    while (std::getline(in, line)) {
      const auto key = line_key(line);
      if (flags.overrides.count(key)) continue;
      if (sequence_overridden && (key == "d" || key == "rule")) continue;
      text += line + "\n";
    }
  }
  for (const auto& [key, value] : flags.overrides) text += key + "=" + value + "\n";
  return parse_config(text);
}

void emit(const RunConfig& config, const json& j, const std::string& text) {
  if (config.format == OutputFormat::Json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_validate(const RunConfig& config, const Flags& flags) {
  const bool explicit_m = flags.overrides.count("m") > 0;
  const auto report = validate(config.sequence, flags.require_even, explicit_m ? config.modulus : 1);
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"rule", v.rule}, {"block", v.block}, {"detail", v.detail}});
  }
  std::ostringstream text;
  text << "d = " << config.sequence.to_string() << "  v_M = " << config.sequence.last_index() << "\n";
  text << (report.ok() ? "valid" : "invalid") << "\n";
  for (const auto& e : report.errors()) text << "  " << e << "\n";
  text << "even: " << (report.even_ok ? "yes" : "no") << "\n";
  if (explicit_m) {
    text << "divisible by " << config.modulus << ": " << (report.divisible_ok ? "yes" : "no") << "\n";
  }
  json j{{"d", config.sequence.interleaved()},
         {"v_M", config.sequence.last_index()},
         {"valid", report.ok()},
         {"structurally_valid", report.structurally_valid()},
         {"violations", violations},
         {"even_ok", report.even_ok},
         {"errors", report.errors()}};
  if (explicit_m) {
    j["m"] = config.modulus;
    j["divisible_ok"] = report.divisible_ok;
  }
  emit(config, j, text.str());
  return report.ok() ? kExitOk : kExitFail;
}

int cmd_classify(const RunConfig& config, std::int64_t i) {
  const auto c = classify(config.sequence, i);
  json j{{"index", i}, {"case", to_string(c.kind)}, {"n", c.n}, {"r", c.r}};
  if (c.kind == CaseKind::B || c.kind == CaseKind::D) j["h"] = c.h.get_str();
  emit(config, j, "i = " + std::to_string(i) + ": " + to_string(c) + "\n");
  return kExitOk;
}

int cmd_dump(const RunConfig& config, const std::string& op, const std::string& basis_name) {
  require_valid(config);
  const BasisChange basis(config.sequence);
  const auto n = config.window;
  std::optional<Window> w;
  if (op == "T") {
    w = t_window(basis, n);
  } else if (op == "Q") {
    w = basis.q_window(n);
  } else if (op == "Qinv") {
    w = basis.qinv_window(n);
  } else if (op == "S2") {
    w = s2_window(basis, n, config.modulus);
  } else if (op == "K") {
    w = k_window(n);
  } else {
    throw ConfigError("unknown operator '" + op + "' (expected T, Q, Qinv, S2 or K)");
  }
  if (parse_basis(basis_name) == Basis::E) w = conjugate_to_e_basis(*w, basis);
  if (config.format == OutputFormat::Json) {
    json entries = json::array();
    for (const auto& [pos, value] : w->entries_row_major()) entries.push_back(entry_json(pos, value));
    std::cout << json{{"operator", op}, {"N", n}, {"basis", to_string(w->basis())}, {"entries", entries}}.dump(2)
              << "\n";
  } else {
    write_matrix(std::cout, *w);
  }
  return kExitOk;
}

int cmd_suites(RunConfig config, const std::vector<std::string>& suites) {
  if (!suites.empty()) config.suites = suites;
  const auto report = run_suite(config);
  emit(config, report.to_json(), report.to_text());
  return report.exit_code();
}

int cmd_solve(const RunConfig& config, const std::string& path) {
  require_valid(config);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  auto r = read_matrix(in);
  const BasisChange basis(config.sequence);
  basis.check_window(r.size());
  if (r.basis() == Basis::E) r = conjugate_to_f_basis(r, basis);
  const auto solution = solve_commutant(r, basis);
  json j{{"N", r.size()}, {"residual_zero", solution.residual_zero}, {"note", solution.note}};
  std::ostringstream text;
  if (solution.failure_witness) {
    const auto& w = *solution.failure_witness;
    j["failure_witness"] = entry_json(w.position, w.value);
    text << "no series: entry (" << w.position.row << ", " << w.position.col << ") = " << w.value.to_string()
         << "\n";
  } else {
    json series = json::array();
    for (std::size_t k = 0; k < solution.series.size(); ++k) {
      series.push_back(solution.series[k].to_string());
      text << "p_" << k << " = " << solution.series[k].to_string() << "\n";
    }
    if (solution.series.empty()) text << "p = 0\n";
    j["series"] = series;
  }
  text << "note: " << solution.note << "\n";
  emit(config, j, text.str());
  return solution.residual_zero ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact windows of Read's operator T: validation, operator dumps and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config_file, "key=value configuration file");
  const std::vector<std::pair<std::string, std::string>> passthrough = {
      {"--d", "d"},           {"--rule", "rule"}, {"--N", "N"},           {"--m", "m"},
      {"--precision", "precision"}, {"--precision-cap", "precision_cap"}, {"--seed", "seed"},
      {"--format", "format"}, {"--suites", "suites"}};
  for (const auto& [flag, key] : passthrough) {
    app.add_option_function<std::string>(
        flag, [&flags, key = key](const std::string& value) { flags.overrides[key] = value; },
        "sets " + key);
  }
  app.add_flag_callback("--timing", [&flags] { flags.overrides["timing"] = "true"; },
                        "record per-check durations (reports are then no longer byte-identical)");

  auto* validate_cmd = app.add_subcommand("validate", "check the structural conditions on d");
  validate_cmd->add_flag("--require-even", flags.require_even, "treat odd terms as errors");

  std::int64_t index = 0;
  auto* classify_cmd = app.add_subcommand("classify", "print the case of index i");
  classify_cmd->add_option("i", index, "index in [0, v_M]")->required();

  std::string op;
  std::string basis_name = "f";
  auto* dump_cmd = app.add_subcommand("dump", "print an operator window in matrix-file format");
  dump_cmd->add_option("operator", op, "T, Q, Qinv, S2 or K")->required();
  dump_cmd->add_option("--basis", basis_name, "coordinates: f (default) or e");

  auto* chain_cmd = app.add_subcommand("check-chain", "S2 closed form, chain commutators, non-scalarity");
  auto* commutant_cmd = app.add_subcommand("check-commutant", "T~ = S, Toeplitz lemma, commutant round trip");
  auto* norms_cmd = app.add_subcommand("check-norms", "exploratory scan of ||T f_j||_1");
  auto* run_cmd = app.add_subcommand("run", "run the configured suites (default: all)");

  std::string matrix_path;
  auto* solve_cmd = app.add_subcommand("solve", "recover p with p(T) = R from a matrix file");
  solve_cmd->add_option("matrix-file", matrix_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto config = resolve(flags);
    if (*validate_cmd) return cmd_validate(config, flags);
    if (*classify_cmd) return cmd_classify(config, index);
    if (*dump_cmd) return cmd_dump(config, op, basis_name);
    if (*chain_cmd) return cmd_suites(config, {"chain-commutators", "non-scalarity", "s2-closed-form"});
    if (*commutant_cmd) return cmd_suites(config, {"commutant-roundtrip", "toeplitz-lemma", "ttilde-shift"});
    if (*norms_cmd) return cmd_suites(config, {"norm-scan"});
    if (*run_cmd) return cmd_suites(config, {});
    if (*solve_cmd) return cmd_solve(config, matrix_path);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const WindowError& e) {
    std::cerr << "window error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
