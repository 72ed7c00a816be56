#pragma once

// Closed real intervals with MPFR endpoints and outward rounding.

#include <mpfr.h>

#include <string>

#include "stiet/numeric.hpp"

namespace stiet {

class RealInterval {
 public:
  explicit RealInterval(mpfr_prec_t prec = 128);
  RealInterval(const Rational& value, mpfr_prec_t prec);
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(const RealInterval& o);
  RealInterval& operator=(RealInterval&& o) noexcept;
  ~RealInterval();

  /// cos(j pi / d) and sin(j pi / d) for 0 <= j <= d.
  static RealInterval cos_pi_fraction(long j, long d, mpfr_prec_t prec);
  static RealInterval sin_pi_fraction(long j, long d, mpfr_prec_t prec);
  static RealInterval pi(mpfr_prec_t prec);
  /// tan(x) for |x| < pi/2 given as an exact rational.
  static RealInterval tan(const Rational& x, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  Rational lower() const;
  Rational upper() const;
  Rational midpoint() const;
  double approx() const;
  double width() const;

  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  /// +1 / -1 when the sign is certain, 0 when the interval meets 0.
  int certain_sign() const { return certainly_positive() ? 1 : certainly_negative() ? -1 : 0; }
  bool certainly_less(const RealInterval& o) const { return mpfr_less_p(hi_, o.lo_); }

  RealInterval operator-() const;
  friend RealInterval operator+(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator-(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator*(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator/(const RealInterval& x, const RealInterval& y);
  friend RealInterval operator*(long k, const RealInterval& x);

  std::string to_string(int digits = 15) const;

 private:
  mpfr_t lo_, hi_;
};

}  // namespace stiet
