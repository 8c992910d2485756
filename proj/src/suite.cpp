#include "readop/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "readop/basis.hpp"
#include "readop/errors.hpp"
#include "readop/operators.hpp"

namespace readop {

using json = nlohmann::ordered_json;

const char* const kWindowScopeNote =
    "All identities are exact statements about leading N x N windows. The commutant results "
    "are algebraic on the window; boundedness on l1 is not assessed. Commutation with the "
    "shift is tested only at (i, j) with j + 1 < N, where both sides lie in the window.";

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Refused: return "refused";
    case CheckStatus::Exploratory: return "exploratory";
  }
  return "?";
}

CheckStatus parse_status(const std::string& text) {
  for (auto s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Refused, CheckStatus::Exploratory}) {
    if (text == to_string(s)) return s;
  }
  throw ConfigError("unknown check status '" + text + "'");
}

json entry_json(EntryPosition pos, const ExactScalar& value) {
  return json{{"row", pos.row}, {"col", pos.col}, {"scalar_text", value.to_string()}};
}

std::int64_t SeededSampler::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % span);
}

Rational SeededSampler::rational(bool nonzero) {
  std::int64_t p = 0;
  do {
    p = integer(-9, 9);
  } while (nonzero && p == 0);
  Rational q(static_cast<long>(p), static_cast<unsigned long>(integer(1, 9)));
  q.canonicalize();
  return q;
}

Series SeededSampler::series(std::size_t max_degree) {
  const auto degree = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_degree)));
  Series p;
  for (std::size_t k = 0; k <= degree; ++k) p.emplace_back(rational());
  return p;
}

namespace {

CheckResult make(const std::string& name, CheckStatus status, json witness, std::string summary) {
  CheckResult r;
  r.check = name;
  r.status = status;
  r.witness = std::move(witness);
  r.summary = std::move(summary);
  return r;
}

CheckResult refuse_unless_divisible(const std::string& name, const RunConfig& config) {
  if (config.sequence.divisible_by(config.modulus)) return {};
  return make(name, CheckStatus::Refused,
              json{{"reason", "m does not divide every term of d"}, {"m", config.modulus}},
              "refused: m = " + std::to_string(config.modulus) + " does not divide every a_n, b_n");
}

// -- classify-partition -------------------------------------------------------

struct CaseRange {
  std::int64_t lo;
  std::int64_t hi;
  IndexCase label;
};

std::vector<CaseRange> enumerate_case_ranges(const GrowthSequence& s) {
  std::vector<CaseRange> out;
  out.push_back({0, 0, IndexCase{}});
  for (std::size_t block = 1; block <= s.blocks(); ++block) {
    const auto n = static_cast<std::int64_t>(block);
    const auto an = s.a(block);
    const auto bn = s.b(block);
    const auto half = [](std::int64_t twice) -> mpq_class { return mpq_class(twice) / 2; };
    out.push_back({s.v(block - 1) + 1, an - 1, {CaseKind::B, n, 0, half(an)}});
    for (std::int64_t r = 1; r <= n; ++r) {
      const auto tail = s.v(static_cast<std::size_t>(n - r));
      out.push_back({r * an, r * an + tail, {CaseKind::A, n, r, 0}});
      if (r < n) out.push_back({r * an + tail + 1, (r + 1) * an - 1, {CaseKind::B, n, r, half((2 * r + 1) * an)}});
      out.push_back({r * (an + bn), n * an + r * bn, {CaseKind::C, n, r, 0}});
    }
    for (std::int64_t r = 0; r < n; ++r) {
      out.push_back({n * an + r * bn + 1, (r + 1) * (an + bn) - 1, {CaseKind::D, n, r, half((2 * r + 1) * bn)}});
    }
  }
  return out;
}

CheckResult check_classify_partition(const RunConfig& config) {
  const std::string name = "classify-partition";
  const auto& seq = config.sequence;
  const auto last = seq.last_index();
  constexpr std::int64_t kLimit = 20'000'000;
  if (last > kLimit) {
    return make(name, CheckStatus::Refused, json{{"reason", "v_M too large to enumerate"}, {"v_M", last}},
                "refused: v_M = " + std::to_string(last) + " exceeds the enumeration limit");
  }
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(last) + 1, 0);
  std::vector<const IndexCase*> label(hits.size(), nullptr);
  const auto ranges = enumerate_case_ranges(seq);
  for (const auto& range : ranges) {
    for (auto i = std::max<std::int64_t>(range.lo, 0); i <= std::min(range.hi, last); ++i) {
      auto k = static_cast<std::size_t>(i);
      if (hits[k] < 255) ++hits[k];
      label[k] = &range.label;
    }
  }
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const auto got = classify(seq, static_cast<std::int64_t>(i));
    if (hits[i] != 1 || !(*label[i] == got)) {
      return make(name, CheckStatus::Fail,
                  json{{"index", i}, {"ranges_covering", hits[i]}, {"classified_as", to_string(got)},
                       {"expected", hits[i] == 1 ? to_string(*label[i]) : std::string("<none or several>")}},
                  "index " + std::to_string(i) + " is not classified consistently with the case ranges");
    }
    ++counts[to_string(got.kind)];
  }
  json per_kind = json::object();
  for (const auto& [kind, count] : counts) per_kind[kind] = count;
  return make(name, CheckStatus::Pass, json{{"indices", hits.size()}, {"per_case", per_kind}},
              std::to_string(hits.size()) + " indices, each in exactly one case range");
}

// -- basis-inverse ------------------------------------------------------------

CheckResult check_basis_inverse(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "basis-inverse";
  const auto n = config.window;
  const auto q = basis.q_window(n);
  const auto qinv = basis.qinv_window(n);
  const auto id = Window::identity(n, Basis::F);
  for (const auto& [label, product] : {std::pair{"Q*Qinv - I", window_product(q, qinv) - id},
                                      std::pair{"Qinv*Q - I", window_product(qinv, q) - id}}) {
    if (const auto pos = product.first_nonzero()) {
      auto w = entry_json(*pos, product.at(pos->row, pos->col));
      w["identity"] = label;
      return make(name, CheckStatus::Fail, w, std::string(label) + " has a nonzero entry");
    }
  }
  for (const auto& [label, w] : {std::pair{"Q", &q}, std::pair{"Qinv", &qinv}}) {
    if (!w->is_upper_triangular() || !w->has_nonzero_diagonal()) {
      return make(name, CheckStatus::Fail, json{{"window", label}, {"reason", "not triangular with nonzero diagonal"}},
                  std::string(label) + " is not triangular with a nonzero diagonal");
    }
  }
  const auto profile = basis.support_profile(n);
  return make(name, CheckStatus::Pass,
              json{{"N", n},
                   {"q_nonzeros", q.nonzeros()},
                   {"qinv_nonzeros", qinv.nonzeros()},
                   {"max_chain_length", profile.max_chain_length}},
              "Q*Qinv = Qinv*Q = I exactly on the " + std::to_string(n) + "-window");
}

// -- s2-closed-form -----------------------------------------------------------

CheckResult check_s2_closed_form(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "s2-closed-form";
  if (auto refused = refuse_unless_divisible(name, config); !refused.check.empty()) return refused;
  const auto result = s2_closed_form_check(basis, config.window, config.modulus);
  if (!result.holds) {
    return make(name, CheckStatus::Fail, json{{"index", *result.counterexample}},
                "S2 f_i differs from the closed form at i = " + std::to_string(*result.counterexample));
  }
  return make(name, CheckStatus::Pass, json{{"N", config.window}, {"m", config.modulus}},
              "S2 f_i = f_i for m | i and 0 otherwise, for all i < " + std::to_string(config.window));
}

// -- chain-commutators --------------------------------------------------------

CheckResult check_chain(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "chain-commutators";
  if (auto refused = refuse_unless_divisible(name, config); !refused.check.empty()) return refused;
  const auto n = config.window;
  const auto m = config.modulus;
  const auto t = t_window(basis, n);
  const auto tm = power(t, static_cast<unsigned>(m));
  const auto s2 = s2_window(basis, n, m);
  const auto k = k_window(n);
  const std::string tm_label = "T^" + std::to_string(m);
  const std::vector<std::pair<std::string, Window>> identities = {
      {"[T, T^2]", commutator(t, power(t, 2))},
      {"[" + tm_label + ", S2]", commutator(tm, s2)},
      {"[S2, K]", commutator(s2, k)},
      {"S2^2 - S2", window_product(s2, s2) - s2},
  };
  json checked = json::array();
  for (const auto& [label, w] : identities) {
    if (const auto pos = w.first_nonzero()) {
      auto witness = entry_json(*pos, w.at(pos->row, pos->col));
      witness["identity"] = label;
      return make(name, CheckStatus::Fail, witness, label + " has a nonzero entry");
    }
    checked.push_back(label);
  }

  // The relation on F itself: T^m S2 f_j = S2 T^m f_j, with exact actions.
  const auto last = basis.max_index();
  std::size_t columns = 0;
  for (std::size_t j = 0; j < n && j + static_cast<std::size_t>(m) <= last; ++j) {
    auto lhs = s2_apply(basis, SparseVector::unit(j), m);
    auto rhs = SparseVector::unit(j);
    for (std::int64_t step = 0; step < m; ++step) {
      lhs = t_apply(basis, lhs);
      rhs = t_apply(basis, rhs);
    }
    rhs = s2_apply(basis, rhs, m);
    if (!(lhs == rhs)) {
      auto diff = lhs;
      diff -= rhs;
      const auto& [row, value] = *diff.begin();
      auto witness = entry_json({row, j}, value);
      witness["identity"] = tm_label + " S2 f_j = S2 " + tm_label + " f_j";
      return make(name, CheckStatus::Fail, witness, "exact action of T^m and S2 differ on f_" + std::to_string(j));
    }
    ++columns;
  }
  return make(name, CheckStatus::Pass, json{{"N", n}, {"m", m}, {"zero_windows", checked}, {"exact_action_columns", columns}},
              "all chain commutators vanish exactly; " + std::to_string(columns) +
                  " columns checked with exact actions on F");
}

// -- non-scalarity ------------------------------------------------------------

json witness_json(const NonScalarWitness& w) {
  return json{{"kind", w.off_diagonal ? "off_diagonal" : "diagonal"},
              {"first", entry_json(w.first, w.first_value)},
              {"second", w.off_diagonal ? json(nullptr) : entry_json(w.second, w.second_value)}};
}

CheckResult check_non_scalarity(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "non-scalarity";
  if (auto refused = refuse_unless_divisible(name, config); !refused.check.empty()) return refused;
  const auto n = config.window;
  if (n < 2) {
    return make(name, CheckStatus::Refused, json{{"reason", "window too small"}, {"N", n}},
                "refused: every 1 x 1 window is scalar");
  }
  const auto t = t_window(basis, n);
  const std::vector<std::pair<std::string, Window>> ops = {
      {"T^" + std::to_string(config.modulus), power(t, static_cast<unsigned>(config.modulus))},
      {"S2", s2_window(basis, n, config.modulus)},
      {"K", k_window(n)},
  };
  json witnesses = json::object();
  for (const auto& [label, w] : ops) {
    const auto found = non_scalar_witness(w);
    if (!found) {
      return make(name, CheckStatus::Fail, json{{"operator", label}}, label + " is scalar on the window");
    }
    witnesses[label] = witness_json(*found);
  }
  const auto k_rank = rank(k_window(n));
  if (k_rank != 1) {
    return make(name, CheckStatus::Fail, json{{"operator", "K"}, {"rank", k_rank}}, "K does not have rank one");
  }
  return make(name, CheckStatus::Pass, json{{"witnesses", witnesses}, {"rank_K", k_rank}},
              "T^m, S2 and K are non-scalar; K has rank one");
}

// -- ttilde-shift -------------------------------------------------------------

CheckResult check_ttilde(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "ttilde-shift";
  const auto n = config.window;
  const auto t = t_window(basis, n);
  const auto by_product = t_window_by_conjugation(basis, n);
  if (!(t == by_product)) {
    const auto diff = t - by_product;
    const auto pos = *diff.first_nonzero();
    auto w = entry_json(pos, diff.at(pos.row, pos.col));
    w["identity"] = "chase - Q*S*Qinv";
    return make(name, CheckStatus::Fail, w, "the two constructions of the T window disagree");
  }
  const auto conj = conjugate_to_e_basis(t, basis) - shift_window(n, Basis::E);
  if (const auto pos = conj.first_nonzero()) {
    auto w = entry_json(*pos, conj.at(pos->row, pos->col));
    w["identity"] = "Qinv*T*Q - S";
    return make(name, CheckStatus::Fail, w, "Qinv T Q differs from the shift");
  }
  const auto nil = power(t, static_cast<unsigned>(n));
  if (const auto pos = nil.first_nonzero()) {
    auto w = entry_json(*pos, nil.at(pos->row, pos->col));
    w["identity"] = "T^N";
    return make(name, CheckStatus::Fail, w, "T^N is not zero on the window");
  }
  return make(name, CheckStatus::Pass, json{{"N", n}, {"t_nonzeros", t.nonzeros()}},
              "Qinv T Q = S exactly; both constructions of T agree; T^N = 0");
}

// -- toeplitz-lemma -----------------------------------------------------------

constexpr std::size_t kRandomCases = 100;
constexpr std::size_t kMaxDegree = 10;

CheckResult check_toeplitz(const RunConfig& config) {
  const std::string name = "toeplitz-lemma";
  const auto n = config.window;
  if (n < 2) {
    return make(name, CheckStatus::Refused, json{{"reason", "window too small"}, {"N", n}},
                "refused: a 1 x 1 window has no interior commutation constraint");
  }
  SeededSampler sampler(config.seed);
  const auto s = shift_window(n, Basis::E);
  std::size_t perturbed = 0;
  for (std::size_t c = 0; c < kRandomCases; ++c) {
    const auto p = sampler.series(std::min(kMaxDegree, n - 1));
    const auto a = toeplitz_from_series(p, n);
    const auto comm = commutator(a, s);
    const auto extracted = shift_commutant_extract(a);
    if (!comm.is_zero() || !extracted.residual_zero || extracted.series != trimmed(p)) {
      return make(name, CheckStatus::Fail, json{{"case", c}, {"stage", "toeplitz"}},
                  "random Toeplitz window " + std::to_string(c) + " failed to commute or round trip");
    }
    // (N-1, 0) is the one entry whose perturbation leaves a Toeplitz window.
    std::size_t row = 0;
    std::size_t col = 0;
    do {
      row = static_cast<std::size_t>(sampler.integer(0, static_cast<std::int64_t>(n) - 1));
      col = static_cast<std::size_t>(sampler.integer(0, static_cast<std::int64_t>(n) - 1));
    } while (row == n - 1 && col == 0);
    auto broken = a;
    broken.add(row, col, ExactScalar(sampler.rational(true)));
    const auto broken_comm = commutator(broken, s);
    const auto broken_extract = shift_commutant_extract(broken);
    if (broken_comm.is_zero() || broken_extract.residual_zero || !broken_extract.failure_witness) {
      return make(name, CheckStatus::Fail,
                  json{{"case", c}, {"stage", "perturbation"}, {"row", row}, {"col", col}},
                  "perturbation at (" + std::to_string(row) + ", " + std::to_string(col) +
                      ") still commutes with S");
    }
    ++perturbed;
  }
  return make(name, CheckStatus::Pass,
              json{{"N", n}, {"cases", kRandomCases}, {"perturbations_detected", perturbed}, {"seed", config.seed}},
              std::to_string(kRandomCases) + " Toeplitz windows commute with S and round trip; " +
                  std::to_string(perturbed) + " perturbations detected");
}

// -- commutant-roundtrip ------------------------------------------------------

CheckResult check_roundtrip(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "commutant-roundtrip";
  const auto n = config.window;
  const CommutantLab lab(basis, n);
  SeededSampler sampler(config.seed);
  for (std::size_t c = 0; c < kRandomCases; ++c) {
    const auto p = sampler.series(std::min(kMaxDegree, n - 1));
    const auto r = lab.series_apply(p);
    const auto via_conjugation = lab.conjugate_to_f_basis(toeplitz_from_series(p, n));
    if (!(r == via_conjugation)) {
      return make(name, CheckStatus::Fail, json{{"case", c}, {"stage", "two routes"}},
                  "sum p_k T^k differs from Q p(S) Qinv in case " + std::to_string(c));
    }
    const auto solution = lab.solve(r);
    if (!solution.residual_zero || solution.series != trimmed(p)) {
      json w{{"case", c}, {"stage", "solve"}};
      if (solution.failure_witness) {
        w["entry"] = entry_json(solution.failure_witness->position, solution.failure_witness->value);
      }
      return make(name, CheckStatus::Fail, w, "series not recovered in case " + std::to_string(c));
    }
  }
  const auto k_solution = lab.solve(k_window(n));
  if (!k_solution.failure_witness) {
    return make(name, CheckStatus::Fail, json{{"stage", "K"}}, "K was accepted as commuting with T");
  }
  return make(name, CheckStatus::Pass,
              json{{"N", n},
                   {"cases", kRandomCases},
                   {"seed", config.seed},
                   {"k_commutator_entry",
                    entry_json(k_solution.failure_witness->position, k_solution.failure_witness->value)}},
              std::to_string(kRandomCases) + " random series recovered exactly; [T, K] != 0 at (" +
                  std::to_string(k_solution.failure_witness->position.row) + ", " +
                  std::to_string(k_solution.failure_witness->position.col) + ")");
}

// -- norm-scan ----------------------------------------------------------------

json interval_json(const Interval& x) {
  return json{{"lower", x.lower_string()}, {"upper", x.upper_string()}};
}

CheckResult check_norms(const RunConfig& config, const BasisChange& basis) {
  const std::string name = "norm-scan";
  const auto n = std::min<std::size_t>(config.window, basis.max_index());
  const auto report = norm_scan(basis, n, config.precision_bits, config.precision_cap);
  json columns = json::array();
  std::size_t above = 0;
  for (const auto& col : report.columns) {
    columns.push_back(json{{"column", col.column},
                           {"norm", interval_json(col.norm)},
                           {"flag", to_string(col.flag)},
                           {"precision_bits", col.precision_bits}});
    if (col.flag == NormFlag::AboveOne) ++above;
  }
  json blocks = json::array();
  for (const auto& b : report.blocks) {
    blocks.push_back(json{{"block", b.block}, {"first_column", b.first_column}, {"last_column", b.last_column},
                          {"max", interval_json(b.max)}});
  }
  json w{{"N", n}, {"columns", columns}, {"blocks", blocks}, {"columns_above_one", above}};
  std::string summary = "exploratory: " + std::to_string(above) + " of " + std::to_string(n) +
                        " columns have ||T f_j||_1 > 1";
  if (report.overall_max) {
    w["max"] = interval_json(*report.overall_max);
    w["argmax"] = report.argmax;
    summary += "; max in [" + report.overall_max->lower_string(12) + ", " +
               report.overall_max->upper_string(12) + "] at column " + std::to_string(report.argmax);
  }
  return make(name, CheckStatus::Exploratory, w, summary);
}

}  // namespace

CheckResult run_check(const std::string& name, const RunConfig& config, const BasisChange& basis) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result;
  try {
    if (name == "classify-partition") {
      result = check_classify_partition(config);
    } else if (name == "basis-inverse") {
      result = check_basis_inverse(config, basis);
    } else if (name == "s2-closed-form") {
      result = check_s2_closed_form(config, basis);
    } else if (name == "chain-commutators") {
      result = check_chain(config, basis);
    } else if (name == "non-scalarity") {
      result = check_non_scalarity(config, basis);
    } else if (name == "ttilde-shift") {
      result = check_ttilde(config, basis);
    } else if (name == "toeplitz-lemma") {
      result = check_toeplitz(config);
    } else if (name == "commutant-roundtrip") {
      result = check_roundtrip(config, basis);
    } else if (name == "norm-scan") {
      result = check_norms(config, basis);
    } else {
      throw ConfigError("unknown suite '" + name + "'");
    }
  } catch (const PreconditionError& e) {
    result = make(name, CheckStatus::Refused, json{{"reason", e.what()}}, std::string("refused: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    result = make(name, CheckStatus::Fail, json{{"error", e.what()}}, std::string("error: ") + e.what());
  }
  if (config.timing) {
    result.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

Report run_suite(const RunConfig& config) {
  require_valid(config);
  const BasisChange basis(config.sequence);
  Report report;
  report.config_digest = config.digest();
  report.config = json{{"d", config.sequence.interleaved()},
                       {"N", config.window},
                       {"m", config.modulus},
                       {"precision_bits", config.precision_bits},
                       {"precision_cap", config.precision_cap},
                       {"seed", config.seed},
                       {"suites", config.suites}};
  for (const auto& name : config.suites) report.checks.push_back(run_check(name, config, basis));
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.check < b.check; });
  return report;
}

json Report::to_json() const {
  auto sorted = checks;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.check < b.check; });
  json list = json::array();
  for (const auto& c : sorted) {
    list.push_back(json{{"check", c.check},
                        {"status", to_string(c.status)},
                        {"witness", c.witness},
                        {"duration_ms", c.duration_ms},
                        {"config_digest", config_digest},
                        {"summary", c.summary}});
  }
  return json{{"config_digest", config_digest}, {"config", config}, {"note", kWindowScopeNote}, {"checks", list},
              {"exit_code", exit_code()}};
}

Report Report::from_json(const json& j) {
  Report r;
  r.config_digest = j.at("config_digest").get<std::string>();
  r.config = j.at("config");
  for (const auto& c : j.at("checks")) {
    CheckResult result;
    result.check = c.at("check").get<std::string>();
    result.status = parse_status(c.at("status").get<std::string>());
    result.witness = c.at("witness");
    result.duration_ms = c.at("duration_ms").get<double>();
    result.summary = c.value("summary", std::string());
    r.checks.push_back(std::move(result));
  }
  return r;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "config " << config_digest << "  d=";
  const auto& d = config.value("d", json::array());
  for (std::size_t k = 0; k < d.size(); ++k) out << (k ? "," : "") << d[k].get<std::int64_t>();
  out << "  N=" << config.value("N", 0) << "  m=" << config.value("m", 0) << "  seed=" << config.value("seed", 0)
      << "\n";
  auto sorted = checks;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.check < b.check; });
  for (const auto& c : sorted) {
    std::string status = to_string(c.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    out << status << std::string(status.size() < 12 ? 12 - status.size() : 1, ' ') << c.check;
    if (c.duration_ms > 0) out << "  (" << static_cast<long long>(c.duration_ms + 0.5) << " ms)";
    out << "\n    " << c.summary << "\n";
    if (c.status == CheckStatus::Fail) out << "    witness: " << c.witness.dump() << "\n";
  }
  out << "note: " << kWindowScopeNote << "\n";
  return out.str();
}

int Report::exit_code() const {
  return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; })
             ? 1
             : 0;
}

}  // namespace readop
