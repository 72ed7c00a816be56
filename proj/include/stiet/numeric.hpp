#pragma once

// Exact and certified arithmetic: rationals, the quadratic field Q(sqrt D),
// the rotation angle alpha (exact quadratic or continued-fraction specified)
// and affine forms c + k*alpha used for every orbit point and breakpoint.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stiet {

using Integer = mpz_class;
using Rational = mpq_class;

/// Floor division for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor(const Rational& x);
/// Exact parse of "p", "p/q" or a decimal such as "-0.125".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

/// a + b*sqrt(D) with a, b rational and D a square-free integer >= 2.
/// Rational values are stored with b == 0 and D == 1.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit QuadraticNumber(Rational a) : a_(std::move(a)) { a_.canonicalize(); }
  QuadraticNumber(Rational a, Rational b, const Integer& radicand);

  static QuadraticNumber sqrt(const Integer& n);
  /// Parses expressions such as "sqrt2-1", "(3-sqrt5)/2", "1/2+3/4*sqrt(7)".
  static QuadraticNumber parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  Integer floor() const;
  QuadraticNumber conjugate() const;
  double to_double() const;
  std::string to_string() const;

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);

 private:
  const Integer& common_radicand(const QuadraticNumber& o) const;
  void normalize();

  Rational a_;
  Rational b_;
  Integer d_ = 1;
};

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Generator for continued-fraction terms beyond an explicit prefix.
struct TermRule {
  enum class Kind { None, RepeatLast, Affine };
  Kind kind = Kind::None;
  // Affine: t_k = slope * k + intercept, with k the index in [t0; t1, t2, ...].
  Integer slope = 0;
  Integer intercept = 0;
};

/// The rotation angle alpha in (0,1), irrational.
///
/// Exact mode stores a quadratic irrational and decides every comparison
/// exactly. Continued-fraction mode stores the standard expansion
/// [0; t1, t2, ...] (prefix plus generator rule) and decides comparisons by
/// refining convergent enclosures along the ladder 64, 256, 1024, 4096 bits;
/// it never certifies equality of distinct affine forms and raises
/// PrecisionExhausted when the ladder cannot separate.
///
/// Values are immutable and may be shared across threads.
class AlphaValue {
 public:
  static constexpr unsigned kDefaultMaxBits = 4096;
  static constexpr unsigned kLadder[] = {64, 256, 1024, 4096};

  static AlphaValue exact(QuadraticNumber value);
  static AlphaValue continued_fraction(std::vector<Integer> prefix, TermRule rule = {});
  /// "quad:<expr>" or "cf:t0,t1,...[,...][,then:<affine in n>]".
  static AlphaValue parse(std::string_view text);

  bool is_exact() const;
  const QuadraticNumber& exact_value() const;

  /// Term t_k of the standard expansion [t0; t1, ...]; throws PrecisionExhausted
  /// when a continued-fraction prefix runs out.
  Integer term(std::size_t k) const;
  std::vector<Integer> partial_quotients(std::size_t n) const;

  /// Closed rational interval of width <= 2^-bits containing alpha strictly
  /// inside; endpoints are consecutive convergents.
  RationalInterval enclosure(unsigned bits) const;

  /// sign(alpha - r).
  int compare(const Rational& r) const;
  /// sign(c + k*alpha).
  int sign_affine(const Rational& c, const Rational& k) const;

  AlphaValue complement() const;  // 1 - alpha
  AlphaValue with_max_bits(unsigned bits) const;
  unsigned max_bits() const { return max_bits_; }

  bool less_than_half() const;
  double approx() const;
  std::string describe() const;

 private:
  struct Impl;
  explicit AlphaValue(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
  unsigned max_bits_ = kDefaultMaxBits;
};

/// Standard convergents p_k/q_k of [t0; t1, ...] via p_k = t_k p_{k-1} + p_{k-2}.
std::vector<Rational> convergents(const std::vector<Integer>& terms);

/// The value c + k*alpha.
struct AlphaAffine {
  Rational c;
  Rational k;

  AlphaAffine() = default;
  AlphaAffine(Rational constant, Rational coefficient)
      : c(std::move(constant)), k(std::move(coefficient)) {}
  static AlphaAffine constant(const Rational& v) { return {v, 0}; }
  static AlphaAffine alpha() { return {0, 1}; }

  AlphaAffine& operator+=(const AlphaAffine& o) {
    c += o.c;
    k += o.k;
    return *this;
  }
  AlphaAffine& operator-=(const AlphaAffine& o) {
    c -= o.c;
    k -= o.k;
    return *this;
  }
  friend AlphaAffine operator+(AlphaAffine x, const AlphaAffine& y) { return x += y; }
  friend AlphaAffine operator-(AlphaAffine x, const AlphaAffine& y) { return x -= y; }
  friend AlphaAffine operator*(const Rational& s, const AlphaAffine& x) { return {s * x.c, s * x.k}; }
  AlphaAffine operator-() const { return {-c, -k}; }
  // Structural equality is value equality because alpha is irrational.
  friend bool operator==(const AlphaAffine& x, const AlphaAffine& y) { return x.c == y.c && x.k == y.k; }
};

int sign(const AlphaAffine& x, const AlphaValue& alpha);
int compare(const AlphaAffine& x, const AlphaAffine& y, const AlphaValue& alpha);
Integer floor(const AlphaAffine& x, const AlphaValue& alpha);
/// frac(c1 + k1 alpha) versus frac(c2 + k2 alpha).
std::strong_ordering compare_affine_mod1(const AlphaAffine& x, const AlphaAffine& y,
                                         const AlphaValue& alpha);
double approx(const AlphaAffine& x, const AlphaValue& alpha);
/// "c + k·α (≈ d)" with 12 significant digits.
std::string render(const AlphaAffine& x, const AlphaValue& alpha);
std::string format_decimal(double v);

/// 128-bit fixed-point shadow of alpha for long orbits. Every answer is
/// certified from an explicit error bound; undecided cases fall back to the
/// exact routines above.
class FixedRotation {
 public:
  using u128 = unsigned __int128;

  /// frac(x) * 2^128 lies within `error` units of `value`.
  struct Approx {
    u128 value = 0;
    u128 error = 0;
  };

  explicit FixedRotation(AlphaValue alpha);

  const AlphaValue& alpha() const { return alpha_; }
  bool has_fast_path() const { return fast_; }

  Approx approx(const Rational& c, std::int64_t k) const;
  Approx multiple(std::int64_t k) const { return approx_multiple(k); }
  static std::optional<int> compare(const Approx& x, const Approx& y);

  /// frac(c1 + k1 alpha) versus frac(c2 + k2 alpha); certified.
  int compare_points(const Rational& c1, std::int64_t k1, const Rational& c2, std::int64_t k2) const;
  int compare_multiples(std::int64_t k1, std::int64_t k2) const;
  /// frac(c + k alpha) < 1 - alpha.
  bool is_left(const Rational& c, std::int64_t k) const;
  bool is_left_multiple(std::int64_t k) const;
  /// floor(k alpha), exact.
  std::int64_t floor_multiple(std::int64_t k) const;

 private:
  Approx approx_multiple(std::int64_t k) const;

  AlphaValue alpha_;
  bool fast_ = false;
  u128 alpha_fixed_ = 0;
  u128 alpha_error_ = 0;
  Approx one_minus_alpha_{};
};

}  // namespace stiet
