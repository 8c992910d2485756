#include "readop/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace readop {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Rational parse_rational(std::string_view text) {
  const std::string s(trim(text));
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/' || ch == '+')) {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

std::uint64_t parse_radicand(std::string_view text) {
  const std::string s(trim(text));
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("malformed radicand '" + s + "'");
  }
  const auto value = std::stoull(s);
  if (value == 0) throw std::invalid_argument("radicand must be positive");
  return value;
}

/// Splits on " + " outside parentheses.
std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '(') ++depth;
    if (text[k] == ')') --depth;
    if (depth == 0 && text.compare(k, 3, " + ") == 0) {
      parts.push_back(text.substr(start, k - start));
      start = k + 3;
      k += 2;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

void add_radical(DyadicExponent& e, std::uint64_t radicand, const Rational& coefficient) {
  // coefficient / sqrt(k^2 t) = (coefficient / k) / sqrt(t)
  const auto [k, t] = square_free_split(radicand);
  Rational c = coefficient / Rational(static_cast<unsigned long>(k));
  if (c == 0) return;
  DyadicExponent term;
  if (t == 1) {
    term.rational = c;
  } else {
    term.radicals.emplace_back(t, c);
  }
  e += term;
}

void fold_integer_part(Rational& coefficient, DyadicExponent& e) {
  mpz_class floor;
  mpz_fdiv_q(floor.get_mpz_t(), e.rational.get_num_mpz_t(), e.rational.get_den_mpz_t());
  if (floor == 0) return;
  if (!floor.fits_slong_p()) throw std::overflow_error("dyadic exponent out of range");
  const long k = floor.get_si();
  e.rational -= floor;
  if (k > 0) {
    mpq_mul_2exp(coefficient.get_mpq_t(), coefficient.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(coefficient.get_mpq_t(), coefficient.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> square_free_split(std::uint64_t s) {
  if (s == 0) throw std::invalid_argument("radicand must be positive");
  std::uint64_t k = 1;
  std::uint64_t t = 1;
  for (std::uint64_t p = 2; p * p <= s; ++p) {
    unsigned count = 0;
    while (s % p == 0) {
      s /= p;
      ++count;
    }
    for (unsigned c = 0; c < count / 2; ++c) k *= p;
    if (count % 2 == 1) t *= p;
  }
  t *= s;
  return {k, t};
}

DyadicExponent& DyadicExponent::operator+=(const DyadicExponent& rhs) {
  rational += rhs.rational;
  std::vector<std::pair<std::uint64_t, Rational>> merged;
  merged.reserve(radicals.size() + rhs.radicals.size());
  auto lhs_it = radicals.begin();
  auto rhs_it = rhs.radicals.begin();
  while (lhs_it != radicals.end() || rhs_it != rhs.radicals.end()) {
    if (rhs_it == rhs.radicals.end() || (lhs_it != radicals.end() && lhs_it->first < rhs_it->first)) {
      merged.push_back(*lhs_it++);
    } else if (lhs_it == radicals.end() || rhs_it->first < lhs_it->first) {
      merged.push_back(*rhs_it++);
    } else {
      Rational sum = lhs_it->second + rhs_it->second;
      if (sum != 0) merged.emplace_back(lhs_it->first, sum);
      ++lhs_it;
      ++rhs_it;
    }
  }
  radicals = std::move(merged);
  return *this;
}

DyadicExponent DyadicExponent::operator-() const {
  DyadicExponent out = *this;
  out.rational = -out.rational;
  for (auto& [s, c] : out.radicals) c = -c;
  return out;
}

std::strong_ordering operator<=>(const DyadicExponent& lhs, const DyadicExponent& rhs) {
  if (const int c = cmp(lhs.rational, rhs.rational); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto n = std::min(lhs.radicals.size(), rhs.radicals.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& [ls, lc] = lhs.radicals[k];
    const auto& [rs, rc] = rhs.radicals[k];
    if (ls != rs) return ls <=> rs;
    if (const int c = cmp(lc, rc); c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return lhs.radicals.size() <=> rhs.radicals.size();
}

std::string DyadicExponent::to_string() const {
  std::string out = rational.get_str();
  for (const auto& [s, c] : radicals) {
    out += " + " + c.get_str() + "/sqrt(" + std::to_string(s) + ")";
  }
  return out;
}

Interval DyadicExponent::evaluate(unsigned precision_bits) const {
  Interval out = Interval::from_rational(rational, precision_bits);
  for (const auto& [s, c] : radicals) {
    out += Interval::from_rational(c, precision_bits) * Interval::rec_sqrt(s, precision_bits);
  }
  return out;
}

ExactScalar::ExactScalar(const Rational& q) {
  if (q != 0) terms_.push_back({q, {}});
}

ExactScalar ExactScalar::from_power_of_two(std::int64_t numer_halves, std::uint64_t radicand) {
  if (radicand == 0) throw std::invalid_argument("from_power_of_two: radicand must be positive");
  Rational halves(static_cast<long>(numer_halves), 2L);
  halves.canonicalize();
  DyadicExponent e;
  add_radical(e, radicand, halves);
  return monomial(1, std::move(e));
}

ExactScalar ExactScalar::monomial(Rational coefficient, DyadicExponent exponent) {
  ExactScalar out;
  out.terms_.push_back({std::move(coefficient), std::move(exponent)});
  out.normalize();
  return out;
}

ExactScalar ExactScalar::from_terms(std::vector<Term> terms) {
  ExactScalar out;
  out.terms_ = std::move(terms);
  out.normalize();
  return out;
}

void ExactScalar::normalize() {
  for (auto& t : terms_) {
    t.coefficient.canonicalize();
    std::erase_if(t.exponent.radicals, [](const auto& r) { return r.second == 0; });
    fold_integer_part(t.coefficient, t.exponent);
  }
  std::erase_if(terms_, [](const Term& t) { return t.coefficient == 0; });
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& lhs, const Term& rhs) { return lhs.exponent < rhs.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coefficient += t.coefficient;
      if (merged.back().coefficient == 0) merged.pop_back();
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_ = std::move(merged);
}

bool ExactScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_rational() &&
                            terms_.front().exponent.rational == 0);
}

Rational ExactScalar::rational_value() const {
  if (!is_rational()) throw std::domain_error("scalar is not rational: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto lhs_it = terms_.begin();
  auto rhs_it = rhs.terms_.begin();
  while (lhs_it != terms_.end() || rhs_it != rhs.terms_.end()) {
    if (rhs_it == rhs.terms_.end() ||
        (lhs_it != terms_.end() && lhs_it->exponent < rhs_it->exponent)) {
      merged.push_back(std::move(*lhs_it++));
    } else if (lhs_it == terms_.end() || rhs_it->exponent < lhs_it->exponent) {
      merged.push_back(*rhs_it++);
    } else {
      Rational sum = lhs_it->coefficient + rhs_it->coefficient;
      if (sum != 0) merged.push_back({std::move(sum), std::move(lhs_it->exponent)});
      ++lhs_it;
      ++rhs_it;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) { return *this += -rhs; }

ExactScalar ExactScalar::operator-() const {
  ExactScalar out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
  *this = *this * rhs;
  return *this;
}

ExactScalar operator*(const ExactScalar& lhs, const ExactScalar& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<ExactScalar::Term> products;
  products.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& x : lhs.terms_) {
    for (const auto& y : rhs.terms_) {
      ExactScalar::Term t{x.coefficient * y.coefficient, x.exponent};
      t.exponent += y.exponent;
      products.push_back(std::move(t));
    }
  }
  return ExactScalar::from_terms(std::move(products));
}

ExactScalar ExactScalar::inverse() const {
  if (!is_monomial()) {
    throw std::domain_error("inverse requires a single-term scalar, got '" + to_string() + "'");
  }
  const auto& t = terms_.front();
  return monomial(1 / t.coefficient, -t.exponent);
}

Interval ExactScalar::evaluate(unsigned precision_bits) const {
  if (precision_bits < 16) throw std::invalid_argument("evaluate: precision_bits must be >= 16");
  Interval sum(precision_bits);
  for (const auto& t : terms_) {
    sum += Interval::from_rational(t.coefficient, precision_bits) * t.exponent.evaluate(precision_bits).exp2();
  }
  return sum;
}

std::string ExactScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += t.coefficient.get_str() + " * 2^(" + t.exponent.to_string() + ")";
  }
  return out;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar text");
  if (text == "0") return {};
  std::vector<Term> terms;
  for (auto part : split_top_level(text)) {
    part = trim(part);
    const auto star = part.find(" * 2^(");
    if (star == std::string_view::npos) {
      terms.push_back({parse_rational(part), {}});
      continue;
    }
    if (part.back() != ')') throw std::invalid_argument("unterminated exponent in '" + std::string(part) + "'");
    Term term{parse_rational(part.substr(0, star)), {}};
    const auto inner = part.substr(star + 6, part.size() - star - 7);
    for (auto item : split_top_level(inner)) {
      item = trim(item);
      const auto sq = item.find("/sqrt(");
      if (sq == std::string_view::npos) {
        DyadicExponent r;
        r.rational = parse_rational(item);
        term.exponent += r;
      } else {
        if (item.back() != ')') throw std::invalid_argument("malformed radical '" + std::string(item) + "'");
        const auto radicand = parse_radicand(item.substr(sq + 6, item.size() - sq - 7));
        add_radical(term.exponent, radicand, parse_rational(item.substr(0, sq)));
      }
    }
    terms.push_back(std::move(term));
  }
  return from_terms(std::move(terms));
}

bool is_zero(const ExactScalar& x) { return x.is_zero(); }

}  // namespace readop
