#include <doctest.h>

#include <random>

#include "stiet/errors.hpp"
#include "stiet/numeric.hpp"

using namespace stiet;

TEST_CASE("rationals parse from integers, fractions and decimals") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK_THROWS_AS(parse_rational("1/0"), PreconditionError);
}

TEST_CASE("quadratic numbers: parsing, sign and floor") {
  auto s2 = QuadraticNumber::parse("sqrt2-1");
  CHECK(s2.radicand() == 2);
  CHECK(s2.rational_part() == -1);
  CHECK(s2.floor() == 0);
  CHECK(QuadraticNumber::parse("(3-sqrt5)/2").floor() == 0);
  CHECK(QuadraticNumber::parse("sqrt8").radical_coefficient() == 2);
  CHECK(QuadraticNumber::parse("sqrt(9)").is_rational());
  CHECK((QuadraticNumber::sqrt(2) * QuadraticNumber::sqrt(2)) == QuadraticNumber(2));
  // 7/5 < sqrt2 < 3/2 and |sqrt2 - 7/5| < 1/25
  auto err = QuadraticNumber::sqrt(2) - QuadraticNumber(Rational(7, 5));
  CHECK(err.sign() > 0);
  CHECK(err < QuadraticNumber(Rational(1, 25)));
  CHECK(QuadraticNumber::parse("-sqrt2").floor() == -2);
}

TEST_CASE("quadratic field identities on random elements") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-50, 50);
  auto rnd = [&] {
    long b = coef(rng);
    return QuadraticNumber(Rational(coef(rng), 1 + std::abs(coef(rng))), Rational(b == 0 ? 1 : b, 1 + std::abs(coef(rng))), 5);
  };
  for (int t = 0; t < 200; ++t) {
    auto x = rnd(), y = rnd(), z = rnd();
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) / y == x);
    CHECK((x - x).sign() == 0);
    CHECK(x * x.conjugate() == QuadraticNumber(x.rational_part() * x.rational_part() -
                                               5 * x.radical_coefficient() * x.radical_coefficient()));
    // floor agrees with a double evaluation away from integers
    double v = x.to_double();
    if (std::abs(v - std::round(v)) > 1e-9) CHECK(x.floor().get_d() == std::floor(v));
  }
}

TEST_CASE("continued fractions of quadratic alphas") {
  auto a = AlphaValue::parse("quad:sqrt2-1");
  auto pq = a.partial_quotients(8);
  std::vector<long> expect{0, 2, 2, 2, 2, 2, 2, 2};
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(pq[k] == expect[k]);
  auto g = AlphaValue::parse("quad:(3-sqrt5)/2").partial_quotients(8);
  std::vector<long> gexp{0, 2, 1, 1, 1, 1, 1, 1};
  for (std::size_t k = 0; k < gexp.size(); ++k) CHECK(g[k] == gexp[k]);
  auto conv = convergents(std::vector<Integer>{1, 2, 2, 2, 2, 2});
  CHECK(conv[2] == Rational(7, 5));
  CHECK(conv[5] == Rational(99, 70));
}

TEST_CASE("continued-fraction alpha with a generated tail") {
  auto a = AlphaValue::parse("cf:0,2,then:n");
  std::vector<long> expect{0, 2, 2, 3, 4, 5, 6, 7};
  auto pq = a.partial_quotients(8);
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(pq[k] == expect[k]);
  auto c = a.complement().partial_quotients(8);
  std::vector<long> cexp{0, 1, 1, 2, 3, 4, 5, 6};
  for (std::size_t k = 0; k < cexp.size(); ++k) CHECK(c[k] == cexp[k]);
  CHECK(a.less_than_half());
  auto e = a.enclosure(64);
  CHECK(e.lo < e.hi);
  CHECK(a.compare(e.lo) > 0);
  CHECK(a.compare(e.hi) < 0);
  // a finite prefix runs out
  auto finite = AlphaValue::parse("cf:0,3,1,4");
  CHECK_THROWS_AS(finite.term(10), PrecisionExhausted);
  auto rep = AlphaValue::parse("cf:0,2,...");
  CHECK(rep.term(40) == 2);
}

TEST_CASE("alpha preconditions") {
  CHECK_THROWS_WITH_AS(AlphaValue::parse("quad:1/2"), doctest::Contains("rational"), PreconditionError);
  CHECK_THROWS_AS(AlphaValue::parse("quad:sqrt2"), PreconditionError);
  try {
    AlphaValue::parse("quad:1/2");
  } catch (const Error& e) {
    CHECK(e.code() == "rational-alpha");
  }
}

TEST_CASE("affine comparisons in alpha") {
  auto a = AlphaValue::parse("quad:sqrt2-1");
  AlphaAffine x{Rational(0), Rational(5)};  // 5 alpha = 2.0710...
  CHECK(floor(x, a) == 2);
  CHECK(sign(AlphaAffine{Rational(-2), Rational(5)}, a) > 0);
  CHECK(compare(AlphaAffine{Rational(1, 2), 0}, AlphaAffine::alpha(), a) > 0);
  CHECK(render(AlphaAffine{Rational(-4), Rational(10)}, a) == "-4 + 10·α (≈ 0.142135623731)");
  FixedRotation rot(a);
  for (std::int64_t k = -300; k <= 300; ++k) CHECK(rot.floor_multiple(k) == floor(AlphaAffine{0, Rational(k)}, a));
  // frac(5 alpha) = 0.0710678118654752440 from the oracle
  CHECK(approx(AlphaAffine{Rational(-2), Rational(5)}, a) == doctest::Approx(0.071067811865475244).epsilon(1e-15));
}

TEST_CASE("fixed-point shadow agrees with exact comparisons in CF mode") {
  auto a = AlphaValue::parse("cf:0,2,then:n");
  FixedRotation rot(a);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> k(-100000, 100000);
  for (int t = 0; t < 300; ++t) {
    std::int64_t k1 = k(rng), k2 = k(rng);
    int fast = rot.compare_multiples(k1, k2);
    auto slow = compare_affine_mod1(AlphaAffine{0, Rational(k1)}, AlphaAffine{0, Rational(k2)}, a);
    int expect = slow < 0 ? -1 : slow > 0 ? 1 : 0;
    CHECK(fast == expect);
  }
}
