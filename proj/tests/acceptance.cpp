// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every exactly computed product and commutator is also
// recomputed numerically from 256-bit enclosures of its factors, and the
// two answers must agree on which entries are zero.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "oracles.hpp"
#include "readop/basis.hpp"
#include "readop/commutant.hpp"
#include "readop/config.hpp"
#include "readop/growth.hpp"
#include "readop/operators.hpp"
#include "readop/suite.hpp"

namespace {

using readop::BasisChange;
using readop::ExactScalar;
using readop::GrowthSequence;
using readop::Interval;
using readop::Series;
using readop::Window;

constexpr unsigned kAuditBits = 256;
constexpr long kZeroWidthExponent = -200;

const GrowthSequence kToy({2, 8}, {4, 10});
const GrowthSequence kLarge({2, 8, 40}, {4, 10, 90});

class NumericAudit {
 public:
  void scalar(const ExactScalar& s) {
    const auto x = s.evaluate(kAuditBits);
    judge(s.is_zero(), x);
  }

  void window(const Window& w) {
    for (const auto& column : w.columns()) {
      for (const auto& [i, value] : column) scalar(value);
    }
  }

  /// Checks the exact product c = a b entry by entry against interval
  /// arithmetic on the factors.
  void product(const Window& a, const Window& b, const Window& c) {
    combination({{&a, &b, 1}}, c);
  }

  /// Checks the exact commutator c = ab - ba.
  void commutator(const Window& a, const Window& b, const Window& c) {
    combination({{&a, &b, 1}, {&b, &a, -1}}, c);
  }

  std::size_t checked() const { return checked_; }
  std::size_t mismatches() const { return mismatches_; }

 private:
  struct Term {
    const Window* left;
    const Window* right;
    int sign;
  };

  void judge(bool exact_zero, const Interval& x) {
    ++checked_;
    const bool ok = exact_zero ? x.contains_zero() && x.width_below_pow2(kZeroWidthExponent) : x.excludes_zero();
    if (!ok) ++mismatches_;
  }

  const Interval& enclosure(const ExactScalar& s) {
    const auto key = s.to_string();
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, s.evaluate(kAuditBits)).first;
    return it->second;
  }

  void combination(const std::vector<Term>& terms, const Window& c) {
    const std::size_t n = c.size();
    for (std::size_t j = 0; j < n; ++j) {
      std::map<std::size_t, Interval> acc;
      for (const auto& term : terms) {
        for (const auto& [k, b_kj] : term.right->column(j)) {
          const auto& y = enclosure(b_kj);
          for (const auto& [i, a_ik] : term.left->column(k)) {
            auto contribution = enclosure(a_ik) * y;
            auto [slot, fresh] = acc.try_emplace(i, Interval::from_rational(0, kAuditBits));
            if (term.sign > 0) {
              slot->second += contribution;
            } else {
              slot->second -= contribution;
            }
          }
        }
      }
      for (const auto& [i, value] : c.column(j)) {
        if (!acc.contains(i)) {
          ++checked_;
          ++mismatches_;
        }
      }
      for (const auto& [i, x] : acc) judge(c.at(i, j).is_zero(), x);
    }
  }

  std::map<std::string, Interval> cache_;
  std::size_t checked_ = 0;
  std::size_t mismatches_ = 0;
};

NumericAudit audit;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Series random_series(std::mt19937_64& rng, std::size_t max_degree) {
  Series p(1 + rng() % (max_degree + 1));
  for (auto& c : p) {
    readop::Rational q(static_cast<long>(rng() % 19) - 9, static_cast<long>(1 + rng() % 9));
    q.canonicalize();
    c = ExactScalar(q);
  }
  return p;
}

bool matches_oracle(const GrowthSequence& seq) {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  for (std::size_t n = 1; n <= seq.blocks(); ++n) {
    a.push_back(seq.a(n));
    b.push_back(seq.b(n));
  }
  for (std::int64_t i = 0; i <= seq.last_index(); ++i) {
    const auto hits = oracle::brute_force_cases(a, b, i);
    if (hits.size() != 1) return false;
    const auto c = readop::classify(seq, i);
    const auto& m = hits.front();
    if (c.kind != m.kind || c.n != m.n || c.r != m.r) return false;
    if ((c.kind == readop::CaseKind::B || c.kind == readop::CaseKind::D) && c.h != m.h) return false;
  }
  return true;
}

std::string criterion_partition() {
  const auto start = std::chrono::steady_clock::now();
  if (!matches_oracle(kToy)) return "FAIL toy sequence disagrees with the oracle";
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    const auto seq = oracle::random_valid_sequence(rng, 1 + rng() % 4);
    if (!matches_oracle(seq)) return "FAIL random sequence " + seq.to_string();
  }
  const double t = seconds_since(start);
  if (t >= 1.0) return "FAIL took " + std::to_string(t) + " s";
  return "PASS toy + 50 random sequences in " + std::to_string(t) + " s";
}

std::string criterion_basis_inversion() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<GrowthSequence, std::size_t>> cases = {{kToy, 37}, {kLarge, 200}};
  for (const auto& [seq, n] : cases) {
    const BasisChange bc(seq);
    const auto q = bc.q_window(n);
    const auto qinv = bc.qinv_window(n);
    const auto id = Window::identity(n, readop::Basis::F);
    const auto left = readop::window_product(q, qinv);
    const auto right = readop::window_product(qinv, q);
    audit.product(q, qinv, left);
    audit.product(qinv, q, right);
    audit.window(q);
    audit.window(qinv);
    if (left != id || right != id) return "FAIL Q Qinv != I at N = " + std::to_string(n);
    // Q and Q^{-1} are upper triangular in the column convention used here.
    if (!q.is_upper_triangular() || !qinv.is_upper_triangular()) return "FAIL not triangular";
    if (!q.has_nonzero_diagonal() || !qinv.has_nonzero_diagonal()) return "FAIL zero on the diagonal";
  }
  const double t = seconds_since(start);
  if (t >= 10.0) return "FAIL took " + std::to_string(t) + " s";
  return "PASS N = 37 toy and N = 200 on " + kLarge.to_string() + " in " + std::to_string(t) + " s";
}

std::string criterion_s2_closed_form() {
  const BasisChange bc(kToy);
  const auto check = readop::s2_closed_form_check(bc, 36, 2);
  audit.window(readop::s2_window(bc, 36, 2));
  return check.holds ? "PASS every entry of S2 matches the closed form" : "FAIL closed form mismatch";
}

std::string criterion_chain() {
  const BasisChange bc(kToy);
  const auto t = readop::t_window(bc, 36);
  const auto t2 = readop::window_product(t, t);
  const auto s2 = readop::s2_window(bc, 36, 2);
  const auto k = readop::k_window(36);
  audit.product(t, t, t2);
  const std::vector<std::pair<const Window*, const Window*>> pairs = {{&t, &t2}, {&t2, &s2}, {&s2, &k}};
  for (const auto& [a, b] : pairs) {
    const auto c = readop::commutator(*a, *b);
    audit.commutator(*a, *b, c);
    if (!c.is_zero()) return "FAIL nonzero commutator";
  }
  for (const auto* w : {&t2, &s2, &k}) {
    const auto witness = readop::non_scalar_witness(*w);
    if (!witness) return "FAIL missing non-scalar witness";
    audit.scalar(witness->first_value);
    audit.scalar(witness->second_value);
  }
  if (readop::rank(k) != 1) return "FAIL rank K != 1";
  return "PASS [T,T^2] = [T^2,S2] = [S2,K] = 0, witnesses for T^2, S2, K, rank K = 1";
}

std::string criterion_modulus_four() {
  const auto d = readop::expand_rule(readop::parse_rule("geometric,first_a=4,ratio=2,blocks=2"));
  const auto seq = GrowthSequence::from_interleaved(d);
  if (!seq.divisible_by(4)) return "FAIL rule output not divisible by 4";
  const BasisChange bc(seq);
  const auto n = static_cast<std::size_t>(seq.last_index());
  const auto t4 = readop::power(readop::t_window(bc, n), 4);
  const auto s2 = readop::s2_window(bc, n, 4);
  const auto c = readop::commutator(t4, s2);
  audit.commutator(t4, s2, c);
  if (!c.is_zero()) return "FAIL [T^4, S2] != 0 on " + seq.to_string();
  return "PASS [T^4, S2] = 0 on " + seq.to_string() + ", N = " + std::to_string(n);
}

std::string criterion_ttilde() {
  const std::vector<std::pair<GrowthSequence, std::size_t>> cases = {{kToy, 36}, {kLarge, 200}};
  for (const auto& [seq, n] : cases) {
    const BasisChange bc(seq);
    if (!readop::verify_ttilde_is_shift(bc, n)) return "FAIL at N = " + std::to_string(n);
    const auto q = bc.q_window(n);
    const auto qinv = bc.qinv_window(n);
    const auto t = readop::t_window(bc, n);
    const auto qinv_t = readop::window_product(qinv, t);
    const auto tilde = readop::window_product(qinv_t, q);
    audit.product(qinv, t, qinv_t);
    audit.product(qinv_t, q, tilde);
    if (tilde != readop::shift_window(n)) return "FAIL explicit conjugation at N = " + std::to_string(n);
  }
  return "PASS Qinv T Q = S at N = 36 and N = 200";
}

std::string criterion_toeplitz() {
  std::mt19937_64 rng(7);
  const std::size_t n = 36;
  const auto s = readop::shift_window(n, readop::Basis::E);
  for (int c = 0; c < 100; ++c) {
    const auto p = random_series(rng, 10);
    const auto a = readop::toeplitz_from_series(p, n);
    const auto comm = readop::commutator(a, s);
    audit.commutator(a, s, comm);
    if (!comm.is_zero()) return "FAIL Toeplitz window does not commute, case " + std::to_string(c);
    const auto extracted = readop::shift_commutant_extract(a);
    if (!extracted.residual_zero || extracted.series != readop::trimmed(p)) {
      return "FAIL extraction, case " + std::to_string(c);
    }
    // The bottom-left corner is the one entry no commutation constraint sees.
    std::size_t row = 0;
    std::size_t col = 0;
    do {
      row = rng() % n;
      col = rng() % n;
    } while (row == n - 1 && col == 0);
    auto broken = a;
    broken.add(row, col, ExactScalar(readop::Rational(1 + static_cast<long>(rng() % 9))));
    const auto broken_comm = readop::commutator(broken, s);
    audit.commutator(broken, s, broken_comm);
    if (broken_comm.is_zero()) return "FAIL perturbation commutes, case " + std::to_string(c);
  }
  return "PASS 100 Toeplitz windows commute and are recovered; 100 perturbations break commutation";
}

std::string criterion_round_trip() {
  const BasisChange bc(kToy);
  const readop::CommutantLab lab(bc, 36);
  std::mt19937_64 rng(11);
  for (int c = 0; c < 100; ++c) {
    const auto p = random_series(rng, 10);
    const auto r = lab.series_apply(p);
    const auto comm = readop::commutator(lab.t(), r);
    audit.commutator(lab.t(), r, comm);
    audit.window(r);
    if (!comm.is_zero()) return "FAIL [T, p(T)] != 0, case " + std::to_string(c);
    const auto solved = lab.solve(r);
    if (!solved.residual_zero || solved.series != readop::trimmed(p)) {
      return "FAIL coefficients not recovered, case " + std::to_string(c);
    }
  }
  const auto k = readop::k_window(36);
  const auto solved = lab.solve(k);
  if (solved.residual_zero || !solved.failure_witness) return "FAIL K accepted as a series in T";
  const auto comm = readop::commutator(lab.t(), k);
  audit.commutator(lab.t(), k, comm);
  const auto& w = *solved.failure_witness;
  if (w.value.is_zero() || comm.at(w.position.row, w.position.col) != w.value) {
    return "FAIL K witness is not an entry of [T, K]";
  }
  return "PASS 100 series recovered; K rejected with [T,K](" + std::to_string(w.position.row) + "," +
         std::to_string(w.position.col) + ") = " + w.value.to_string();
}

std::string criterion_numeric_audit() {
  if (audit.checked() == 0) return "FAIL nothing audited";
  if (audit.mismatches() != 0) {
    return "FAIL " + std::to_string(audit.mismatches()) + " of " + std::to_string(audit.checked()) +
           " entries disagree with the 256-bit evaluation";
  }
  return "PASS " + std::to_string(audit.checked()) + " entries agree with the 256-bit evaluation";
}

std::string criterion_norm_scan() {
  const auto config = readop::parse_config("d=2,4,8,10\nN=36\nsuites=norm-scan");
  const auto report = readop::run_suite(config);
  const auto& check = report.checks.at(0);
  if (check.status != readop::CheckStatus::Exploratory) return "FAIL norm scan not flagged exploratory";
  const auto& columns = check.witness.at("columns");
  const auto exact = [&](std::size_t j, const char* value) {
    const auto& norm = columns.at(j).at("norm");
    return norm.at("lower") == value && norm.at("upper") == value;
  };
  if (!exact(0, "1") || !exact(1, "2")) return "FAIL column norms are not exactly 1 and 2";
  if (columns.at(1).at("flag") != "above_one") return "FAIL column 1 not flagged above one";
  return "PASS exploratory: column 0 norm = 1, column 1 norm = 2 > 1";
}

}  // namespace

int main() {
  const std::vector<std::function<std::string()>> criteria = {
      criterion_partition, criterion_basis_inversion, criterion_s2_closed_form, criterion_chain,
      criterion_modulus_four, criterion_ttilde, criterion_toeplitz, criterion_round_trip,
      criterion_numeric_audit, criterion_norm_scan};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::string line;
    try {
      line = criteria[k]();
    } catch (const std::exception& e) {
      line = std::string("FAIL exception: ") + e.what();
    }
    if (line.rfind("PASS", 0) != 0) ++failures;
    std::printf("criterion %zu: %s\n", k + 1, line.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
