#include "stiet/interval.hpp"

#include <algorithm>
#include <cstdio>

#include "stiet/errors.hpp"

namespace stiet {

RealInterval::RealInterval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const Rational& value, mpfr_prec_t prec) : RealInterval(prec) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

RealInterval::RealInterval(const RealInterval& o) : RealInterval(o.precision()) {
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : RealInterval(o.precision()) {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.precision());
    mpfr_set_prec(hi_, o.precision());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::pi(mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

namespace {

// Enclosure of j pi / d, assumed to lie in (0, pi).
void angle(mpfr_t lo, mpfr_t hi, long j, long d) {
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  mpfr_mul_si(lo, lo, j, MPFR_RNDD);
  mpfr_mul_si(hi, hi, j, MPFR_RNDU);
  mpfr_div_si(lo, lo, d, MPFR_RNDD);
  mpfr_div_si(hi, hi, d, MPFR_RNDU);
}

}  // namespace

RealInterval RealInterval::cos_pi_fraction(long j, long d, mpfr_prec_t prec) {
  if (d <= 0 || j < 0 || j > d) throw PreconditionError("bad-angle", "need 0 <= j <= d");
  if (j == 0) return RealInterval(Rational(1), prec);
  if (j == d) return RealInterval(Rational(-1), prec);
  if (2 * j == d) return RealInterval(Rational(0), prec);
  RealInterval r(prec);
  mpfr_t alo, ahi;
  mpfr_init2(alo, prec + 16);
  mpfr_init2(ahi, prec + 16);
  angle(alo, ahi, j, d);
  // cos decreases on (0, pi).
  mpfr_cos(r.lo_, ahi, MPFR_RNDD);
  mpfr_cos(r.hi_, alo, MPFR_RNDU);
  mpfr_clear(alo);
  mpfr_clear(ahi);
  return r;
}

RealInterval RealInterval::sin_pi_fraction(long j, long d, mpfr_prec_t prec) {
  if (d <= 0 || j < 0 || j > d) throw PreconditionError("bad-angle", "need 0 <= j <= d");
  if (j == 0 || j == d) return RealInterval(Rational(0), prec);
  if (2 * j == d) return RealInterval(Rational(1), prec);
  RealInterval r(prec);
  mpfr_t alo, ahi;
  mpfr_init2(alo, prec + 16);
  mpfr_init2(ahi, prec + 16);
  angle(alo, ahi, j, d);
  if (2 * j < d) {  // increasing branch
    mpfr_sin(r.lo_, alo, MPFR_RNDD);
    mpfr_sin(r.hi_, ahi, MPFR_RNDU);
  } else {
    mpfr_sin(r.lo_, ahi, MPFR_RNDD);
    mpfr_sin(r.hi_, alo, MPFR_RNDU);
  }
  mpfr_clear(alo);
  mpfr_clear(ahi);
  return r;
}

RealInterval RealInterval::tan(const Rational& x, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_t xlo, xhi;
  mpfr_init2(xlo, prec + 16);
  mpfr_init2(xhi, prec + 16);
  mpfr_set_q(xlo, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(xhi, x.get_mpq_t(), MPFR_RNDU);
  mpfr_tan(r.lo_, xlo, MPFR_RNDD);
  mpfr_tan(r.hi_, xhi, MPFR_RNDU);
  mpfr_clear(xlo);
  mpfr_clear(xhi);
  return r;
}

Rational RealInterval::lower() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational RealInterval::upper() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Rational RealInterval::midpoint() const {
  Rational m = (lower() + upper()) / 2;
  m.canonicalize();
  return m;
}

double RealInterval::approx() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

double RealInterval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

RealInterval RealInterval::operator-() const {
  RealInterval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval operator+(const RealInterval& x, const RealInterval& y) {
  RealInterval r(std::max(x.precision(), y.precision()));
  mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
  return r;
}

RealInterval operator-(const RealInterval& x, const RealInterval& y) {
  RealInterval r(std::max(x.precision(), y.precision()));
  mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
  return r;
}

RealInterval operator*(const RealInterval& x, const RealInterval& y) {
  mpfr_prec_t prec = std::max(x.precision(), y.precision());
  RealInterval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr xs[2] = {x.lo_, x.hi_};
  const mpfr_srcptr ys[2] = {y.lo_, y.hi_};
  bool first = true;
  for (auto a : xs)
    for (auto b : ys) {
      mpfr_mul(t, a, b, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

RealInterval operator/(const RealInterval& x, const RealInterval& y) {
  if (y.certain_sign() == 0) throw PrecisionExhausted("interval division by an enclosure of zero");
  RealInterval inv(y.precision());
  mpfr_ui_div(inv.lo_, 1, y.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, y.lo_, MPFR_RNDU);
  return x * inv;
}

RealInterval operator*(long k, const RealInterval& x) {
  RealInterval r(x.precision());
  if (k >= 0) {
    mpfr_mul_si(r.lo_, x.lo_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, x.hi_, k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, x.hi_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, x.lo_, k, MPFR_RNDU);
  }
  return r;
}

std::string RealInterval::to_string(int digits) const {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, lo_);
  std::string s = std::string("[") + buf + ", ";
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, hi_);
  return s + buf + "]";
}

}  // namespace stiet
