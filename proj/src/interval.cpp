#include "emn/interval.hpp"

#include <algorithm>
#include <memory>
#include <utility>

#include "emn/errors.hpp"

namespace emn {

namespace {

std::string format(const __mpfr_struct* v, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "R" + (rnd == MPFR_RNDD ? "D" : (rnd == MPFR_RNDU ? "U" : "N")) + "g";
  mpfr_asprintf(&buf, fmt.c_str(), v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Rational exact_value(const __mpfr_struct* v) {
  mpq_class q;
  // MPFR endpoints are finite dyadic numbers: conversion is exact.
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  if (e >= 0) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(r);
  }
  mpz_class d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(m, d);
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Integer& value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& value, mpfr_prec_t prec) : Interval(prec) {
  mpfr_set_q(lo_, value.mpq().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.mpq().get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_decimal(const char* text, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_str(r.lo_, text, 10, MPFR_RNDD);
  mpfr_set_str(r.hi_, text, 10, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
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

void Interval::set_precision_at_least(mpfr_prec_t prec) {
  if (prec <= precision()) return;
  mpfr_prec_round(lo_, prec, MPFR_RNDD);
  mpfr_prec_round(hi_, prec, MPFR_RNDU);
}

Interval& Interval::operator+=(const Interval& o) {
  set_precision_at_least(o.precision());
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  if (&o == this) {
    const Interval copy(o);
    return *this -= copy;
  }
  set_precision_at_least(o.precision());
  mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const mpfr_prec_t prec = std::max(precision(), o.precision());
  mpfr_t cand_lo, cand_hi, tmp;
  mpfr_inits2(prec, cand_lo, cand_hi, tmp, static_cast<mpfr_ptr>(nullptr));
  const __mpfr_struct* as[2] = {lo_, hi_};
  const __mpfr_struct* bs[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto* a : as) {
    for (auto* b : bs) {
      mpfr_mul(tmp, a, b, MPFR_RNDD);
      if (first || mpfr_less_p(tmp, cand_lo)) mpfr_set(cand_lo, tmp, MPFR_RNDD);
      mpfr_mul(tmp, a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(tmp, cand_hi)) mpfr_set(cand_hi, tmp, MPFR_RNDU);
      first = false;
    }
  }
  set_precision_at_least(prec);
  mpfr_set(lo_, cand_lo, MPFR_RNDD);
  mpfr_set(hi_, cand_hi, MPFR_RNDU);
  mpfr_clears(cand_lo, cand_hi, tmp, static_cast<mpfr_ptr>(nullptr));
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) throw PrecisionError("interval division by an interval containing zero");
  const mpfr_prec_t prec = std::max(precision(), o.precision());
  mpfr_t cand_lo, cand_hi, tmp;
  mpfr_inits2(prec, cand_lo, cand_hi, tmp, static_cast<mpfr_ptr>(nullptr));
  const __mpfr_struct* as[2] = {lo_, hi_};
  const __mpfr_struct* bs[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto* a : as) {
    for (auto* b : bs) {
      mpfr_div(tmp, a, b, MPFR_RNDD);
      if (first || mpfr_less_p(tmp, cand_lo)) mpfr_set(cand_lo, tmp, MPFR_RNDD);
      mpfr_div(tmp, a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(tmp, cand_hi)) mpfr_set(cand_hi, tmp, MPFR_RNDU);
      first = false;
    }
  }
  set_precision_at_least(prec);
  mpfr_set(lo_, cand_lo, MPFR_RNDD);
  mpfr_set(hi_, cand_hi, MPFR_RNDU);
  mpfr_clears(cand_lo, cand_hi, tmp, static_cast<mpfr_ptr>(nullptr));
  return *this;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Rational Interval::lower_exact() const { return exact_value(lo_); }
Rational Interval::upper_exact() const { return exact_value(hi_); }

Interval Interval::midpoint() const {
  Interval r(precision() + 1);
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

double Interval::radius() const {
  const Interval mid = midpoint();
  mpfr_t a, b;
  mpfr_inits2(precision() + 2, a, b, static_cast<mpfr_ptr>(nullptr));
  mpfr_sub(a, hi_, mid.lo_, MPFR_RNDU);
  mpfr_sub(b, mid.lo_, lo_, MPFR_RNDU);
  mpfr_max(a, a, b, MPFR_RNDU);
  const double r = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
  return r;
}

double Interval::width() const {
  mpfr_t a;
  mpfr_init2(a, precision() + 2);
  mpfr_sub(a, hi_, lo_, MPFR_RNDU);
  const double w = mpfr_get_d(a, MPFR_RNDU);
  mpfr_clear(a);
  return w;
}

double Interval::to_double() const { return mpfr_get_d(midpoint().lo_, MPFR_RNDN); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.mpq().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.mpq().get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_) != 0; }
bool certainly_less(const Interval& a, double b) { return mpfr_cmp_d(a.hi_, b) < 0; }
bool certainly_greater(const Interval& a, double b) { return mpfr_cmp_d(a.lo_, b) > 0; }

std::string Interval::to_string(int digits) const {
  return "[" + format(lo_, digits, MPFR_RNDD) + ", " + format(hi_, digits, MPFR_RNDU) + "]";
}

std::string Interval::mid_string(int digits) const { return format(midpoint().lo_, digits, MPFR_RNDN); }

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw PrecisionError("log of an interval not bounded away from zero");
  Interval r(x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.hi_) < 0) throw DomainError("sqrt of a negative interval");
  Interval r(x.precision());
  if (mpfr_sgn(x.lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval cbrt(const Interval& x) {
  Interval r(x.precision());
  mpfr_cbrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_cbrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval zeta(unsigned long s, mpfr_prec_t prec) {
  if (s < 2) throw DomainError("zeta needs s >= 2");
  Interval r(prec);
  mpfr_zeta_ui(r.lo_, s, MPFR_RNDD);
  mpfr_zeta_ui(r.hi_, s, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval r(x.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval sqr(const Interval& x) {
  const Interval a = abs(x);
  Interval r(x.precision());
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, unsigned e) {
  Interval r(1L, x.precision());
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_greater_p(r.lo_, r.hi_)) throw PrecisionError("disjoint enclosures");
  return r;
}

Interval log_of(const Integer& value, mpfr_prec_t prec) {
  if (value <= 0) throw DomainError("log of a non-positive integer");
  return log(Interval(value, prec));
}

}  // namespace emn
