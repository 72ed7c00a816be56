#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "stiet/errors.hpp"
#include "stiet/iet.hpp"
#include "stiet/origami.hpp"
#include "stiet/rigidity.hpp"

using namespace stiet;

namespace {

// Defects computed pointwise at 200 digits by tests/oracles/rotation_oracle.py.
struct DefectOracle {
  const char* surface;
  const char* alpha;
  std::int64_t q;
  std::vector<double> defects;
};

const std::vector<DefectOracle> kDefectOracles = {
    {"fig1", "quad:(3-sqrt5)/2", 5,
     {0.3147573033330529285, 0.1573786516665264643, 0.2546440075000701012, 0.1573786516665264643, 0.3147573033330529285,
      0.2546440075000701012}},
    {"fig1", "quad:(3-sqrt5)/2", 13,
     {0.2776052433324921190, 0.1945307116670872738, 0.2917960675006309108, 0.1945307116670872738, 0.2776052433324921190,
      0.1431878274983876725}},
    {"fig2", "quad:sqrt2-1", 12,
     {0.2761423749153966992, 0.1813852924280963739, 0.2483886680203194794, 0.2091389993231735936, 0.2761423749153966992,
      0.1813852924280963739}},
    {"fig2", "quad:sqrt2-1", 3,
     {0.2761423749153966992, 0.2761423749153966992, 0.3905242917512699675, 0.1617604580795234309, 0.2761423749153966992,
      0.2761423749153966992}},
    {"d4-cycle", "quad:sqrt2-1", 7,
     {0.1213203435596425732, 0.2071067811865475244, 0.2928932188134524756, 0.08578643762690495120, 0.1360389693210722804,
      0.1360389693210722804, 0.1360389693210722804, 0.08578643762690495120}},
    {"torus-d1", "quad:sqrt2-1", 12, {0.05887450304571882876, 0.05887450304571882876}},
};

}  // namespace

TEST_CASE("T from an origami is a valid exchange with merged pieces kept apart") {
  auto a = AlphaValue::parse("quad:sqrt2-1");
  auto t = IntervalMap::from_origami(Origami::registry("fig2"), a);
  CHECK(t.pieces() == 6);
  CHECK(t.length() == 3);
  // (0, square 1) goes to square sigma(1) = 3 at alpha
  auto img = t.apply(AlphaAffine::constant(0));
  CHECK(img == AlphaAffine(Rational(2), Rational(1)));
  CHECK(t.compose(t.inverse()) == IntervalMap::identity(a, 3));
}

TEST_CASE("powers: exact defect of the torus rotation") {
  auto a = AlphaValue::parse("quad:sqrt2-1");
  auto t5 = IntervalMap::from_origami(Origami::registry("torus-d1"), a).power(5);
  auto m = symdiff_measure(t5, 1, 1);
  CHECK(m == AlphaAffine(Rational(-4), Rational(10)));
  CHECK(IntervalMap::from_origami(Origami::registry("torus-d1"), a).power(0) == IntervalMap::identity(a, 1));
}

TEST_CASE("powers against the pointwise skew product on random points") {
  std::mt19937_64 rng(11);
  for (const auto& key : Origami::registry_keys()) {
    auto o = Origami::registry(key);
    auto a = AlphaValue::parse("quad:sqrt2-1");
    auto t = IntervalMap::from_origami(o, a);
    auto t7 = t.power(7), tm3 = t.power(-3);
    std::uniform_int_distribution<long> num(0, 9999);
    for (int k = 0; k < 200; ++k) {
      SkewPoint p;
      p.x = AlphaAffine::constant(Rational(num(rng), 10000));
      p.square = 1 + static_cast<int>(num(rng) % o.d());
      CHECK(SkewPoint::from_flat(t.apply(p.flat()), a).square == skew_apply(o, a, p).square);
      CHECK(t.apply(p.flat()) == skew_apply(o, a, p).flat());
      SkewPoint q = p;
      for (int j = 0; j < 7; ++j) q = skew_apply(o, a, q);
      CHECK(t7.apply(p.flat()) == q.flat());
      CHECK(t.power(3).apply(tm3.apply(p.flat())) == p.flat());
    }
  }
}

TEST_CASE("fast defect path equals breakpoint composition") {
  for (const auto& key : Origami::registry_keys()) {
    auto o = Origami::registry(key);
    auto a = AlphaValue::parse("quad:(3-sqrt5)/2");
    FixedRotation rot(a);
    auto t = IntervalMap::from_origami(o, a);
    for (std::int64_t q : {-9, -1, 1, 2, 5, 8, 21}) {
      auto tq = t.power(q);
      auto fast = skew_power_defects(o, rot, q);
      for (int atom = 1; atom <= 2 * o.d(); ++atom) CHECK(fast.defect[atom - 1] == symdiff_measure(tq, o.d(), atom));
    }
  }
}

TEST_CASE("defects match the 200-digit pointwise oracle") {
  for (const auto& c : kDefectOracles) {
    auto o = Origami::registry(c.surface);
    auto a = AlphaValue::parse(c.alpha);
    auto row = defect_row(o, FixedRotation(a), c.q);
    REQUIRE(row.defect.size() == c.defects.size());
    for (std::size_t k = 0; k < c.defects.size(); ++k) CHECK(approx(row.defect[k], a) == doctest::Approx(c.defects[k]).epsilon(1e-14));
  }
}

TEST_CASE("three-distance successor order equals sorting") {
  auto a = AlphaValue::parse("quad:(3-sqrt5)/2");
  FixedRotation rot(a);
  for (std::int64_t n : {2, 3, 5, 8, 13, 40, 97}) {
    auto less = [&](std::int64_t i, std::int64_t j) { return rot.compare_multiples(-i, -j) < 0; };
    auto next = circle_successors(n, less);
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) CHECK(next[static_cast<std::size_t>(order[k])] == order[k + 1]);
    CHECK(next[static_cast<std::size_t>(order.back())] == order.front());
  }
}
