#include "readop/growth.hpp"

#include <sstream>

namespace readop {

GrowthSequence::GrowthSequence(std::vector<std::int64_t> a, std::vector<std::int64_t> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || b_.empty()) {
    throw ConfigError("sequence required: growth sequence is empty");
  }
  if (a_.size() != b_.size()) {
    throw ConfigError("growth sequence needs as many b_n as a_n");
  }
}

GrowthSequence GrowthSequence::from_interleaved(std::span<const std::int64_t> d) {
  if (d.empty()) {
    throw ConfigError("sequence required: growth sequence is empty");
  }
  if (d.size() % 2 != 0) {
    throw ConfigError("growth sequence must list pairs a_n,b_n (odd length " +
                      std::to_string(d.size()) + ")");
  }
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
  for (std::size_t k = 0; k < d.size(); k += 2) {
    a.push_back(d[k]);
    b.push_back(d[k + 1]);
  }
  return GrowthSequence(std::move(a), std::move(b));
}

std::int64_t GrowthSequence::a(std::size_t n) const {
  if (n == 0) return 1;
  if (n > blocks()) throw WindowError("block index " + std::to_string(n) + " exceeds M");
  return a_[n - 1];
}

std::int64_t GrowthSequence::b(std::size_t n) const {
  if (n == 0 || n > blocks()) {
    throw WindowError("b_n defined for 1 <= n <= M, got n=" + std::to_string(n));
  }
  return b_[n - 1];
}

std::int64_t GrowthSequence::v(std::size_t n) const {
  if (n == 0) return 0;
  if (n > blocks()) throw WindowError("v_n defined for 0 <= n <= M, got n=" + std::to_string(n));
  return static_cast<std::int64_t>(n) * (a_[n - 1] + b_[n - 1]);
}

bool GrowthSequence::divisible_by(std::int64_t m) const {
  if (m <= 0) return false;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (a_[k] % m != 0 || b_[k] % m != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> GrowthSequence::interleaved() const {
  std::vector<std::int64_t> d;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    d.push_back(a_[k]);
    d.push_back(b_[k]);
  }
  return d;
}

std::string GrowthSequence::to_string() const {
  std::string out;
  for (auto x : interleaved()) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

bool ValidationReport::ok() const {
  return structurally_valid() && (!require_even || even_ok) && (modulus <= 1 || divisible_ok);
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& v : violations) {
    out.push_back(v.rule + " (n=" + std::to_string(v.block) + "): " + v.detail);
  }
  if (require_even && !even_ok) out.push_back("evenness: some a_n or b_n is odd");
  if (modulus > 1 && !divisible_ok) {
    out.push_back("divisibility: " + std::to_string(modulus) + " does not divide every a_n, b_n");
  }
  return out;
}

ValidationReport validate(const GrowthSequence& seq, bool require_even, std::int64_t m) {
  ValidationReport report;
  report.require_even = require_even;
  report.modulus = m;
  report.even_ok = seq.all_even();
  report.divisible_ok = seq.divisible_by(m);

  const auto d = seq.interleaved();
  if (d.front() <= 0) {
    report.violations.push_back({"positive", 1, "a_1 = " + std::to_string(d.front()) + " <= 0"});
  }
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (d[k] <= d[k - 1]) {
      const std::size_t n = k / 2 + 1;
      std::ostringstream msg;
      msg << (k % 2 == 0 ? "a_" : "b_") << n << " = " << d[k] << " <= previous term " << d[k - 1];
      report.violations.push_back({"strictly increasing", n, msg.str()});
    }
  }
  for (std::size_t n = 1; n <= seq.blocks(); ++n) {
    const auto an = seq.a(n);
    const auto bn = seq.b(n);
    const auto prev = seq.v(n - 1);
    if (an <= prev) {
      std::ostringstream msg;
      msg << "a_" << n << " = " << an << " <= v_" << n - 1 << " = " << prev
          << " (blocks overlap at i = " << an << ")";
      report.violations.push_back({"a_n > v_{n-1}", n, msg.str()});
    }
    const auto bound = static_cast<std::int64_t>(n - 1) * an;
    if (bn <= bound) {
      std::ostringstream msg;
      msg << "b_" << n << " = " << bn << " <= (n-1) a_n = " << bound;
      report.violations.push_back({"b_n > (n-1) a_n", n, msg.str()});
    }
  }
  return report;
}

const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Zero: return "0";
    case CaseKind::A: return "A";
    case CaseKind::B: return "B";
    case CaseKind::C: return "C";
    case CaseKind::D: return "D";
  }
  return "?";
}

std::string to_string(const IndexCase& c) {
  std::ostringstream out;
  out << to_string(c.kind);
  if (c.kind == CaseKind::Zero) return out.str();
  out << "{n=" << c.n << ", r=" << c.r;
  if (c.kind == CaseKind::B || c.kind == CaseKind::D) out << ", h=" << c.h.get_str();
  out << "}";
  return out.str();
}

IndexCase classify(const GrowthSequence& seq, std::int64_t i) {
  if (!validate(seq).structurally_valid()) {
    throw ConfigError("cannot classify against a structurally invalid sequence");
  }
  if (i < 0 || i > seq.last_index()) {
    throw WindowError("window exceeds configured sequence: index " + std::to_string(i) +
                      " > v_M = " + std::to_string(seq.last_index()));
  }
  if (i == 0) return {};

  std::size_t n = 1;
  while (seq.v(n) < i) ++n;
  const auto nn = static_cast<std::int64_t>(n);
  const auto an = seq.a(n);
  const auto bn = seq.b(n);

  IndexCase c;
  c.n = nn;
  if (i < an) {
    c.kind = CaseKind::B;
    c.r = 0;
    c.h = mpq_class(an) / 2;
  } else if (i <= nn * an) {
    const auto r = i / an;
    c.r = r;
    if (i <= r * an + seq.v(n - static_cast<std::size_t>(r))) {
      c.kind = CaseKind::A;
    } else {
      c.kind = CaseKind::B;
      c.h = mpq_class((2 * r + 1) * an) / 2;
    }
  } else {
    const auto r = i / (an + bn);
    c.r = r;
    if (r >= 1 && i <= nn * an + r * bn) {
      c.kind = CaseKind::C;
    } else {
      c.kind = CaseKind::D;
      c.h = mpq_class((2 * r + 1) * bn) / 2;
    }
  }
  c.h.canonicalize();
  return c;
}

}  // namespace readop
