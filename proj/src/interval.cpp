#include "readop/interval.hpp"

#include <algorithm>
#include <new>
#include <stdexcept>
#include <utility>

namespace readop {

namespace {

std::string endpoint_string(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*R*g", digits, rnd, x) < 0) throw std::bad_alloc();
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

Interval::Interval(unsigned precision_bits) {
  if (precision_bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  mpfr_init2(lo_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_init2(hi_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_rational(const mpq_class& q, unsigned precision_bits) {
  Interval out(precision_bits);
  mpfr_set_q(out.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_, q.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::rec_sqrt(std::uint64_t s, unsigned precision_bits) {
  if (s == 0) throw std::invalid_argument("rec_sqrt of zero");
  Interval out(precision_bits);
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(s), 0, 0, &s);
  mpfr_t exact;
  mpfr_init2(exact, 72);
  mpfr_set_z(exact, z.get_mpz_t(), MPFR_RNDN);  // s < 2^64 is exact at 72 bits
  mpfr_rec_sqrt(out.lo_, exact, MPFR_RNDD);
  mpfr_rec_sqrt(out.hi_, exact, MPFR_RNDU);
  mpfr_clear(exact);
  return out;
}

Interval& Interval::operator+=(const Interval& rhs) {
  const auto prec = std::max(mpfr_get_prec(lo_), mpfr_get_prec(rhs.lo_));
  if (prec > mpfr_get_prec(lo_)) {
    mpfr_prec_round(lo_, prec, MPFR_RNDD);
    mpfr_prec_round(hi_, prec, MPFR_RNDU);
  }
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  const auto prec = std::max(mpfr_get_prec(lo_), mpfr_get_prec(rhs.lo_));
  if (prec > mpfr_get_prec(lo_)) {
    mpfr_prec_round(lo_, prec, MPFR_RNDD);
    mpfr_prec_round(hi_, prec, MPFR_RNDU);
  }
  // [a, b] - [c, d] = [a - d, b - c]; rhs may alias *this
  mpfr_t lo;
  mpfr_init2(lo, prec);
  mpfr_sub(lo, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_swap(lo_, lo);
  mpfr_clear(lo);
  return *this;
}

Interval operator*(const Interval& lhs, const Interval& rhs) {
  const auto prec = std::max(lhs.precision(), rhs.precision());
  Interval out(prec);
  mpfr_t down;
  mpfr_t up;
  mpfr_init2(down, prec);
  mpfr_init2(up, prec);
  bool first = true;
  for (mpfr_srcptr x : {lhs.lower(), lhs.upper()}) {
    for (mpfr_srcptr y : {rhs.lower(), rhs.upper()}) {
      mpfr_mul(down, x, y, MPFR_RNDD);
      mpfr_mul(up, x, y, MPFR_RNDU);
      if (first || mpfr_less_p(down, out.lo_)) mpfr_set(out.lo_, down, MPFR_RNDD);
      if (first || mpfr_greater_p(up, out.hi_)) mpfr_set(out.hi_, up, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(down);
  mpfr_clear(up);
  return out;
}

Interval Interval::exp2() const {
  Interval out(precision());
  mpfr_exp2(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::abs() const {
  Interval out(precision());
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_set(out.lo_, lo_, MPFR_RNDD);
    mpfr_set(out.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(out.lo_, 1);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    if (mpfr_greater_p(hi_, out.hi_)) mpfr_set(out.hi_, hi_, MPFR_RNDU);
  }
  return out;
}

Interval Interval::max(const Interval& other) const {
  Interval out(std::max(precision(), other.precision()));
  mpfr_max(out.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, hi_, other.hi_, MPFR_RNDU);
  return out;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::at_most(const mpq_class& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0; }

bool Interval::above(const mpq_class& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }

bool Interval::width_below_pow2(long e) const {
  mpfr_t w;
  mpfr_init2(w, mpfr_get_prec(hi_));
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const bool below = mpfr_cmp_si_2exp(w, 1, e) < 0;
  mpfr_clear(w);
  return below;
}

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, mpfr_get_prec(hi_));
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

std::string Interval::lower_string(int digits) const { return endpoint_string(lo_, digits, MPFR_RNDD); }

std::string Interval::upper_string(int digits) const { return endpoint_string(hi_, digits, MPFR_RNDU); }

double Interval::midpoint() const {
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

}  // namespace readop
