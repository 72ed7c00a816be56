#include "stiet/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>

#include "stiet/errors.hpp"

namespace stiet {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw PreconditionError("parse-error", "empty number");
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  Rational value;
  auto digits_only = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) throw PreconditionError("parse-error", "bad rational '" + s + "'");
    Integer d(den, 10);
    if (d == 0) throw PreconditionError("parse-error", "zero denominator in '" + s + "'");
    value = Rational(Integer(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole) || (!frac.empty() && !digits_only(frac)))
      throw PreconditionError("parse-error", "bad decimal '" + s + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(Integer(whole + frac, 10), scale);
  } else {
    if (!digits_only(body)) throw PreconditionError("parse-error", "bad number '" + s + "'");
    value = Rational(Integer(body, 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& x) { return x.get_str(); }

// ---------------------------------------------------------------------------
// QuadraticNumber

namespace {

// Splits n = s^2 * m with m square-free; returns {s, m}.
std::pair<Integer, Integer> square_free_split(Integer n) {
  Integer s = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
  }
  return {s, n};
}

int sgn(const Rational& x) { return sgn(x.get_num()); }

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, const Integer& radicand) : a_(std::move(a)), b_(std::move(b)) {
  if (radicand < 0) throw PreconditionError("negative-radicand", "radicand must be non-negative");
  if (radicand == 0) {
    b_ = 0;
  } else {
    auto [s, m] = square_free_split(radicand);
    b_ *= s;
    d_ = m;
  }
  normalize();
}

void QuadraticNumber::normalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

QuadraticNumber QuadraticNumber::sqrt(const Integer& n) { return QuadraticNumber(0, 1, n); }

const Integer& QuadraticNumber::common_radicand(const QuadraticNumber& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw PreconditionError("radicand-mismatch", "cannot combine sqrt(" + d_.get_str() + ") and sqrt(" + o.d_.get_str() + ")");
}

int QuadraticNumber::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b*sqrt(D) have opposite signs; a^2 != b^2 D since D is square-free.
  Rational a2 = a_ * a_, b2 = b_ * b_ * Rational(d_);
  return a2 > b2 ? sa : sb;
}

Integer QuadraticNumber::floor() const {
  if (is_rational()) return stiet::floor(a_);
  Integer den = lcm(a_.get_den(), b_.get_den());
  Integer A = a_.get_num() * (den / a_.get_den());
  Integer B = b_.get_num() * (den / b_.get_den());
  Integer radicand = B * B * d_;
  Integer s = ::sqrt(radicand);
  // sqrt(B^2 D) lies strictly between s and s + 1.
  if (B > 0) return floor_div(A + s, den);
  return floor_div(A - s - 1, den);
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber r = *this;
  r.b_ = -r.b_;
  return r;
}

double QuadraticNumber::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string QuadraticNumber::to_string() const {
  if (is_rational()) return stiet::to_string(a_);
  std::string out;
  if (a_ != 0) out = stiet::to_string(a_) + (b_ > 0 ? "+" : "-");
  else if (b_ < 0) out = "-";
  Rational mag = abs(b_);
  if (mag != 1) out += stiet::to_string(mag) + "*";
  out += "sqrt(" + d_.get_str() + ")";
  return out;
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) { return *this += -o; }

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  Integer d = common_radicand(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  Integer d = common_radicand(o);
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d);
  if (norm == 0) throw PreconditionError("division-by-zero", "division by zero in Q(sqrt D)");
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  normalize();
  return *this;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

namespace {

// Recursive-descent parser over + - * / ( ) numbers and sqrt.
class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  QuadraticNumber parse() {
    QuadraticNumber v = expression();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw PreconditionError("parse-error", "cannot parse '" + std::string(text_) + "': " + why);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  QuadraticNumber expression() {
    QuadraticNumber v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  QuadraticNumber term() {
    QuadraticNumber v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  QuadraticNumber unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  QuadraticNumber primary() {
    skip();
    if (eat('(')) {
      QuadraticNumber v = expression();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      QuadraticNumber arg = eat('(') ? parenthesised_rest() : QuadraticNumber(Rational(integer_literal()));
      if (!arg.is_rational() || arg.rational_part().get_den() != 1 || arg.rational_part() < 0)
        fail("sqrt needs a non-negative integer");
      return QuadraticNumber::sqrt(arg.rational_part().get_num());
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a number");
    return QuadraticNumber(parse_rational(text_.substr(start, pos_ - start)));
  }
  QuadraticNumber parenthesised_rest() {
    QuadraticNumber v = expression();
    if (!eat(')')) fail("missing ')'");
    return v;
  }
  Integer integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer after sqrt");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadraticNumber QuadraticNumber::parse(std::string_view text) { return ExpressionParser(text).parse(); }

// ---------------------------------------------------------------------------
// AlphaValue

struct AlphaValue::Impl {
  std::optional<QuadraticNumber> exact;
  std::vector<Integer> prefix;
  TermRule rule;

  mutable std::mutex mu;
  mutable std::vector<Integer> terms;
  mutable std::optional<QuadraticNumber> tail;  // complete quotient after `terms`
  mutable std::vector<Integer> p, q;            // convergents
  mutable std::map<unsigned, RationalInterval> enclosures;

  // Requires mu held.
  void extend_terms(std::size_t n) const {
    while (terms.size() < n) {
      std::size_t k = terms.size();
      if (exact) {
        if (!tail) tail = *exact;
        Integer t = tail->floor();
        terms.push_back(t);
        *tail = QuadraticNumber(1) / (*tail - QuadraticNumber(Rational(t)));
        continue;
      }
      Integer t;
      if (k < prefix.size()) {
        t = prefix[k];
      } else if (rule.kind == TermRule::Kind::RepeatLast) {
        t = prefix.back();
      } else if (rule.kind == TermRule::Kind::Affine) {
        t = rule.slope * Integer(static_cast<unsigned long>(k)) + rule.intercept;
        if (t < 1) throw PreconditionError("invalid-term", "continued-fraction rule produced term " + t.get_str() + " at index " + std::to_string(k));
      } else {
        throw PrecisionExhausted("continued fraction has only " + std::to_string(prefix.size()) + " terms; term " + std::to_string(k) + " requested");
      }
      terms.push_back(t);
    }
  }

  // Requires mu held; convergents p_k/q_k for k < n.
  void extend_convergents(std::size_t n) const {
    extend_terms(n);
    while (p.size() < n) {
      std::size_t k = p.size();
      const Integer& t = terms[k];
      Integer pm1 = k >= 1 ? p[k - 1] : Integer(1), qm1 = k >= 1 ? q[k - 1] : Integer(0);
      Integer pm2 = k >= 2 ? p[k - 2] : (k == 1 ? Integer(1) : Integer(0));
      Integer qm2 = k >= 2 ? q[k - 2] : (k == 1 ? Integer(0) : Integer(1));
      p.push_back(t * pm1 + pm2);
      q.push_back(t * qm1 + qm2);
    }
  }
};

AlphaValue AlphaValue::exact(QuadraticNumber value) {
  if (value.is_rational()) throw PreconditionError("rational-alpha", "alpha must be irrational; got " + value.to_string());
  if (value.sign() <= 0 || (value - QuadraticNumber(1)).sign() >= 0)
    throw PreconditionError("alpha-out-of-range", "alpha must lie in (0,1); got " + value.to_string());
  auto impl = std::make_shared<Impl>();
  impl->exact = std::move(value);
  return AlphaValue(std::move(impl));
}

AlphaValue AlphaValue::continued_fraction(std::vector<Integer> prefix, TermRule rule) {
  if (prefix.empty()) prefix.push_back(0);
  if (prefix[0] != 0) throw PreconditionError("alpha-out-of-range", "alpha must lie in (0,1): leading term must be 0");
  if (rule.kind == TermRule::Kind::RepeatLast && prefix.size() < 2)
    throw PreconditionError("parse-error", "'...' needs at least one partial quotient to repeat");
  for (std::size_t k = 1; k < prefix.size(); ++k)
    if (prefix[k] < 1) throw PreconditionError("invalid-term", "partial quotients must be positive");
  auto impl = std::make_shared<Impl>();
  impl->prefix = std::move(prefix);
  impl->rule = std::move(rule);
  AlphaValue a(std::move(impl));
  if (a.impl_->prefix.size() < 2 && a.impl_->rule.kind == TermRule::Kind::None)
    throw PreconditionError("rational-alpha", "continued fraction [0] is rational");
  a.term(1);  // validates the first rule term
  return a;
}

namespace {

TermRule parse_affine_rule(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw PreconditionError("parse-error", "empty continued-fraction rule");
  TermRule rule;
  rule.kind = TermRule::Kind::Affine;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    Integer coeff = start == pos ? Integer(1) : Integer(s.substr(start, pos - start));
    bool has_digits = start != pos;
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos < s.size() && s[pos] == 'n') {
      ++pos;
      rule.slope += sign * coeff;
    } else {
      if (!has_digits) throw PreconditionError("parse-error", "bad continued-fraction rule '" + std::string(text) + "'");
      rule.intercept += sign * coeff;
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
      throw PreconditionError("parse-error", "bad continued-fraction rule '" + std::string(text) + "'");
  }
  return rule;
}

}  // namespace

AlphaValue AlphaValue::parse(std::string_view text) {
  if (text.rfind("quad:", 0) == 0) return exact(QuadraticNumber::parse(text.substr(5)));
  if (text.rfind("cf:", 0) != 0) throw PreconditionError("parse-error", "alpha must start with 'quad:' or 'cf:'");
  std::vector<Integer> prefix;
  TermRule rule;
  std::string body(text.substr(3));
  std::stringstream ss(body);
  std::string tok;
  bool closed = false;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
    if (closed) throw PreconditionError("parse-error", "nothing may follow '...' or 'then:' in '" + std::string(text) + "'");
    if (tok == "...") {
      rule.kind = TermRule::Kind::RepeatLast;
      closed = true;
    } else if (tok.rfind("then:", 0) == 0) {
      rule = parse_affine_rule(tok.substr(5));
      closed = true;
    } else {
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw PreconditionError("parse-error", "bad continued-fraction term '" + tok + "'");
      prefix.emplace_back(tok);
    }
  }
  return continued_fraction(std::move(prefix), std::move(rule));
}

bool AlphaValue::is_exact() const { return impl_->exact.has_value(); }

const QuadraticNumber& AlphaValue::exact_value() const {
  if (!impl_->exact) throw PreconditionError("not-exact", "alpha is given by a continued fraction");
  return *impl_->exact;
}

Integer AlphaValue::term(std::size_t k) const {
  std::lock_guard lock(impl_->mu);
  impl_->extend_terms(k + 1);
  return impl_->terms[k];
}

std::vector<Integer> AlphaValue::partial_quotients(std::size_t n) const {
  std::lock_guard lock(impl_->mu);
  impl_->extend_terms(n);
  return {impl_->terms.begin(), impl_->terms.begin() + static_cast<std::ptrdiff_t>(n)};
}

RationalInterval AlphaValue::enclosure(unsigned bits) const {
  std::lock_guard lock(impl_->mu);
  if (auto it = impl_->enclosures.find(bits); it != impl_->enclosures.end()) return it->second;
  Integer target = Integer(1) << bits;
  for (std::size_t k = 0;; ++k) {
    impl_->extend_convergents(k + 2);
    if (impl_->q[k] * impl_->q[k + 1] >= target) {
      Rational a(impl_->p[k], impl_->q[k]), b(impl_->p[k + 1], impl_->q[k + 1]);
      a.canonicalize();
      b.canonicalize();
      RationalInterval iv = a < b ? RationalInterval{a, b} : RationalInterval{b, a};
      impl_->enclosures.emplace(bits, iv);
      return iv;
    }
  }
}

int AlphaValue::compare(const Rational& r) const {
  if (impl_->exact) return (*impl_->exact - QuadraticNumber(r)).sign();
  std::vector<unsigned> tiers;
  for (unsigned b : kLadder)
    if (b < max_bits_) tiers.push_back(b);
  tiers.push_back(max_bits_);
  for (unsigned bits : tiers) {
    RationalInterval iv;
    try {
      iv = enclosure(bits);
    } catch (const PrecisionExhausted&) {
      break;
    }
    // alpha lies strictly inside the enclosure.
    if (r <= iv.lo) return 1;
    if (r >= iv.hi) return -1;
  }
  throw PrecisionExhausted("cannot separate alpha from " + to_string(r) + " within " + std::to_string(max_bits_) + " bits");
}

int AlphaValue::sign_affine(const Rational& c, const Rational& k) const {
  if (k == 0) return sgn(c);
  if (impl_->exact) return (QuadraticNumber(c) + QuadraticNumber(k) * *impl_->exact).sign();
  Rational r = -c / k;
  return sgn(k) * compare(r);
}

AlphaValue AlphaValue::complement() const {
  AlphaValue out = [&] {
    if (impl_->exact) return exact(QuadraticNumber(1) - *impl_->exact);
    const Impl& im = *impl_;
    std::size_t want = std::max<std::size_t>(im.prefix.size(), 4);
    std::vector<Integer> old;
    for (std::size_t k = 0; k < want; ++k) {
      try {
        old.push_back(term(k));
      } catch (const PrecisionExhausted&) {
        break;
      }
    }
    if (old.size() < 2) throw PrecisionExhausted("not enough terms to form 1 - alpha");
    std::vector<Integer> fresh{0};
    TermRule rule = im.rule;
    if (old[1] >= 2) {
      fresh.push_back(1);
      fresh.push_back(old[1] - 1);
      fresh.insert(fresh.end(), old.begin() + 2, old.end());
      if (rule.kind == TermRule::Kind::Affine) rule.intercept -= rule.slope;
    } else {
      if (old.size() < 3) throw PrecisionExhausted("not enough terms to form 1 - alpha");
      fresh.push_back(old[2] + 1);
      fresh.insert(fresh.end(), old.begin() + 3, old.end());
      if (rule.kind == TermRule::Kind::Affine) rule.intercept += rule.slope;
    }
    return continued_fraction(std::move(fresh), rule);
  }();
  out.max_bits_ = max_bits_;
  return out;
}

AlphaValue AlphaValue::with_max_bits(unsigned bits) const {
  if (bits < 16) throw PreconditionError("bad-precision", "precision cap must be at least 16 bits");
  AlphaValue a = *this;
  a.max_bits_ = bits;
  return a;
}

bool AlphaValue::less_than_half() const { return compare(Rational(1, 2)) < 0; }

double AlphaValue::approx() const {
  if (impl_->exact) return impl_->exact->to_double();
  RationalInterval iv = enclosure(64);
  return Rational((iv.lo + iv.hi) / 2).get_d();
}

std::string AlphaValue::describe() const {
  if (impl_->exact) return "quad:" + impl_->exact->to_string();
  std::string out = "cf:";
  for (std::size_t k = 0; k < impl_->prefix.size(); ++k) out += (k ? "," : "") + impl_->prefix[k].get_str();
  if (impl_->rule.kind == TermRule::Kind::RepeatLast) out += ",...";
  if (impl_->rule.kind == TermRule::Kind::Affine) {
    out += ",then:";
    const Integer& s = impl_->rule.slope;
    const Integer& c = impl_->rule.intercept;
    if (s != 0) out += (s == 1 ? std::string() : s.get_str() + "*") + "n";
    if (c != 0 || s == 0) out += (c >= 0 && s != 0 ? "+" : "") + c.get_str();
  }
  return out;
}

std::vector<Rational> convergents(const std::vector<Integer>& terms) {
  std::vector<Rational> out;
  Integer p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (const Integer& t : terms) {
    Integer p = t * p1 + p2, q = t * q1 + q2;
    out.emplace_back(p, q);
    out.back().canonicalize();
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlphaAffine

int sign(const AlphaAffine& x, const AlphaValue& alpha) { return alpha.sign_affine(x.c, x.k); }

int compare(const AlphaAffine& x, const AlphaAffine& y, const AlphaValue& alpha) { return sign(x - y, alpha); }

Integer floor(const AlphaAffine& x, const AlphaValue& alpha) {
  if (x.k == 0) return floor(x.c);
  if (alpha.is_exact()) return (QuadraticNumber(x.c) + QuadraticNumber(x.k) * alpha.exact_value()).floor();
  std::vector<unsigned> tiers;
  for (unsigned b : AlphaValue::kLadder)
    if (b < alpha.max_bits()) tiers.push_back(b);
  tiers.push_back(alpha.max_bits());
  for (unsigned bits : tiers) {
    RationalInterval iv;
    try {
      iv = alpha.enclosure(bits);
    } catch (const PrecisionExhausted&) {
      break;
    }
    Rational a = x.c + x.k * iv.lo, b = x.c + x.k * iv.hi;
    if (a > b) std::swap(a, b);
    Integer f = floor(a);
    // The true value lies strictly inside (a, b).
    if (b <= Rational(f + 1)) return f;
  }
  throw PrecisionExhausted("cannot certify floor within " + std::to_string(alpha.max_bits()) + " bits");
}

std::strong_ordering compare_affine_mod1(const AlphaAffine& x, const AlphaAffine& y, const AlphaValue& alpha) {
  AlphaAffine fx = x - AlphaAffine::constant(Rational(floor(x, alpha)));
  AlphaAffine fy = y - AlphaAffine::constant(Rational(floor(y, alpha)));
  int s = compare(fx, fy, alpha);
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

double approx(const AlphaAffine& x, const AlphaValue& alpha) {
  if (x.k == 0) return x.c.get_d();
  unsigned need = 64 + static_cast<unsigned>(mpz_sizeinbase(x.k.get_num().get_mpz_t(), 2)) + 16;
  for (unsigned bits : {need, 256u, 64u}) {
    try {
      RationalInterval iv = alpha.enclosure(bits);
      Rational mid = (iv.lo + iv.hi) / 2;
      return Rational(x.c + x.k * mid).get_d();
    } catch (const PrecisionExhausted&) {
    }
  }
  return std::nan("");
}

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render(const AlphaAffine& x, const AlphaValue& alpha) {
  std::string out = to_string(x.c) + (x.k < 0 ? " - " : " + ") + to_string(abs(x.k)) + "·α";
  return out + " (≈ " + format_decimal(approx(x, alpha)) + ")";
}

// ---------------------------------------------------------------------------
// FixedRotation

namespace {

using u128 = FixedRotation::u128;
constexpr u128 kMax = ~static_cast<u128>(0);

u128 to_u128(const Integer& z) {
  Integer mask = (Integer(1) << 64) - 1;
  Integer lo = z & mask, hi = z >> 64;
  return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
}

u128 magnitude(std::int64_t k) {
  return k < 0 ? static_cast<u128>(-static_cast<__int128>(k)) : static_cast<u128>(k);
}

bool interior(const FixedRotation::Approx& a) { return a.value >= a.error && a.value <= kMax - a.error; }

}  // namespace

FixedRotation::FixedRotation(AlphaValue alpha) : alpha_(std::move(alpha)) {
  Integer scale = Integer(1) << 128;
  try {
    if (alpha_.is_exact()) {
      alpha_fixed_ = to_u128((alpha_.exact_value() * QuadraticNumber(Rational(scale))).floor());
      alpha_error_ = 1;
    } else {
      RationalInterval iv = alpha_.enclosure(140);
      alpha_fixed_ = to_u128(floor(Rational(iv.lo * scale)));
      alpha_error_ = 2;
    }
    fast_ = true;
  } catch (const PrecisionExhausted&) {
    fast_ = false;
  }
  one_minus_alpha_ = approx_multiple(-1);
}

FixedRotation::Approx FixedRotation::approx_multiple(std::int64_t k) const {
  if (!fast_) return {0, kMax};
  Approx a;
  a.value = static_cast<u128>(static_cast<__int128>(k)) * alpha_fixed_;
  a.error = k == 0 ? 0 : magnitude(k) * alpha_error_ + 1;
  return a;
}

FixedRotation::Approx FixedRotation::approx(const Rational& c, std::int64_t k) const {
  if (!fast_) return {0, kMax};
  Rational frac = c - Rational(floor(c));
  Approx base;
  base.value = to_u128(floor(Rational(frac * Rational(Integer(1) << 128))));
  base.error = frac == 0 ? 0 : 1;
  Approx m = approx_multiple(k);
  return {base.value + m.value, base.error + m.error};
}

std::optional<int> FixedRotation::compare(const Approx& x, const Approx& y) {
  if (!interior(x) || !interior(y)) return std::nullopt;
  if (x.value + x.error < y.value - y.error) return -1;
  if (y.value + y.error < x.value - x.error) return 1;
  return std::nullopt;
}

int FixedRotation::compare_points(const Rational& c1, std::int64_t k1, const Rational& c2, std::int64_t k2) const {
  if (k1 == k2) {
    Rational diff = c1 - c2;
    if (diff.get_den() == 1) return 0;
  }
  if (fast_) {
    if (auto r = compare(approx(c1, k1), approx(c2, k2))) return *r;
  }
  auto ord = compare_affine_mod1(AlphaAffine(c1, k1), AlphaAffine(c2, k2), alpha_);
  return ord < 0 ? -1 : ord > 0 ? 1 : 0;
}

int FixedRotation::compare_multiples(std::int64_t k1, std::int64_t k2) const {
  if (k1 == k2) return 0;
  if (fast_) {
    if (auto r = compare(approx_multiple(k1), approx_multiple(k2))) return *r;
  }
  return compare_points(0, k1, 0, k2);
}

bool FixedRotation::is_left(const Rational& c, std::int64_t k) const { return compare_points(c, k, 0, -1) < 0; }

bool FixedRotation::is_left_multiple(std::int64_t k) const {
  if (k == -1) return false;
  if (fast_) {
    if (auto r = compare(approx_multiple(k), one_minus_alpha_)) return *r < 0;
  }
  return compare_points(0, k, 0, -1) < 0;
}

std::int64_t FixedRotation::floor_multiple(std::int64_t k) const {
  if (k == 0) return 0;
  if (fast_) {
    Approx a = approx_multiple(k);
    if (interior(a)) {
      u128 mask = (static_cast<u128>(1) << 64) - 1;
      __int128 ah = static_cast<__int128>(alpha_fixed_ >> 64);
      __int128 al = static_cast<__int128>(alpha_fixed_ & mask);
      __int128 t1 = static_cast<__int128>(k) * ah;
      __int128 t2 = static_cast<__int128>(k) * al;
      __int128 s = t1 + (t2 >> 64);
      return static_cast<std::int64_t>(s >> 64);
    }
  }
  return floor(AlphaAffine(0, k), alpha_).get_si();
}

}  // namespace stiet
