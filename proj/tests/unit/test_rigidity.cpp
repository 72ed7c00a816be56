#include <doctest.h>

#include <map>

#include "stiet/errors.hpp"
#include "stiet/rigidity.hpp"

using namespace stiet;

TEST_CASE("cycle structure and lcm") {
  auto c = cycle_structure(Permutation::parse("2,1,4,5,3"));
  CHECK(c.cycle_lengths == std::vector<int>{2, 3});
  CHECK(c.s == 6);
}

TEST_CASE("rigidity times for fig2 along a_n = n") {
  auto o = Origami::registry("fig2");
  auto a = AlphaValue::parse("cf:0,2,then:n");
  auto times = rigidity_times(o, a, 10);
  std::map<int, std::int64_t> expect{{4, 34}, {5, 219}, {6, 764}, {7, 7095}, {8, 33874}};
  for (const auto& t : times)
    if (expect.count(t.k)) {
      CHECK(t.time == expect[t.k]);
      CHECK(t.time == t.cycles.s * t.block_length);
      CHECK(t.bound == Rational(2 + t.cycles.s) / Rational(t.a) + Rational(1, t.block_length));
    }
  FixedRotation rot(a);
  for (const auto& t : times) {
    if (t.k < 4 || t.k > 8) continue;
    auto row = defect_row(o, rot, t.time);
    for (const auto& v : row.defect) CHECK(approx(v, a) <= t.bound.get_d());
  }
}

TEST_CASE("defect scan is deterministic across worker counts") {
  auto o = Origami::registry("fig1");
  auto a = AlphaValue::parse("quad:(3-sqrt5)/2");
  auto one = defect_scan(o, a, 0, 300, 1);
  auto four = defect_scan(o, a, 0, 300, 4);
  CHECK(defect_csv(one, a) == defect_csv(four, a));
  CHECK(one.argmin_q == four.argmin_q);
  CHECK(one.rows.size() == 301);
  // q = 0 has no defect and is excluded from the running minimum
  CHECK(one.rows[0].max_defect == AlphaAffine());
  CHECK(approx(one.min_max_defect, a) > 0.1);
  auto csv = defect_csv(one, a);
  CHECK(csv.rfind("q,atom,defect,exact\n", 0) == 0);
}

TEST_CASE("torus defects decay along convergent denominators") {
  auto o = Origami::registry("torus-d1");
  auto a = AlphaValue::parse("quad:(3-sqrt5)/2");
  FixedRotation rot(a);
  double last = 1;
  for (std::int64_t q : {3, 8, 21, 55, 144, 377}) {
    double v = approx(defect_row(o, rot, q).max_defect, a);
    CHECK(v < last);
    last = v;
  }
  CHECK(last < 1e-2);
}

TEST_CASE("flow times round trip") {
  auto rho = QuadraticNumber::parse("1+sqrt2");
  std::vector<std::int64_t> q{0, 1, 7, -3, 12345};
  auto Q = flow_times(q, rho);
  auto back = nearest_integer_times(Q, rho);
  for (std::size_t k = 0; k < q.size(); ++k) CHECK(back[k] == q[k]);
  CHECK_THROWS_AS(flow_times(q, QuadraticNumber(-1)), PreconditionError);
}
