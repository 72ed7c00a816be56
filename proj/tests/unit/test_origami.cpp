#include <doctest.h>

#include <set>

#include "stiet/errors.hpp"
#include "stiet/origami.hpp"

using namespace stiet;

TEST_CASE("permutations") {
  auto p = Permutation::parse("2,3,1");
  CHECK(p(1) == 2);
  CHECK(p.inverse()(2) == 1);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.cycle_lengths() == std::vector<int>{3});
  CHECK(p.to_string() == "(2,3,1)");
  CHECK_THROWS_AS(Permutation::parse("1,1,2"), PreconditionError);
  // (a*b)(i) = a(b(i))
  auto a = Permutation::parse("2,1,3"), b = Permutation::parse("1,3,2");
  CHECK((a * b)(2) == a(b(2)));
}

TEST_CASE("registry surfaces") {
  auto fig1 = Origami::registry("fig1");
  auto s = singularities(fig1);
  CHECK(s.lengths == std::vector<int>{3});
  CHECK(s.genus == 2);
  CHECK(s.stratum == "H(2)");
  CHECK(s.cone_angles() == std::vector<std::string>{"6π"});
  CHECK_FALSE(is_torus_cover(fig1));

  auto torus = Origami::registry("torus-d1");
  CHECK(singularities(torus).genus == 1);
  CHECK(singularities(torus).stratum == "H(0)");
  CHECK(is_torus_cover(torus));

  auto fig2 = Origami::registry("fig2");
  CHECK(singularities(fig2).genus == 2);
  auto d4 = Origami::registry("d4-cycle");
  CHECK(is_connected(d4));
  CHECK(d4.describe() == "4;tau=2,3,4,1;sigma=2,1,3,4");
  CHECK(Origami::parse("3;tau=2,1,3;sigma=3,2,1").tau() == fig1.tau());
  CHECK_THROWS_AS(Origami::registry("nope"), PreconditionError);
}

TEST_CASE("cyclic shift commuting with itself is a torus cover") {
  auto c = Permutation::parse("2,3,1");
  Origami o(c, c);
  CHECK(is_torus_cover(o));
  CHECK(singularities(o).genus == 1);
}

TEST_CASE("disconnected origami is rejected for singularity data") {
  Origami o(Permutation::identity(2), Permutation::identity(2));
  CHECK_FALSE(is_connected(o));
  CHECK_FALSE(minimality_witness(o));
  CHECK_THROWS_AS(singularities(o), PreconditionError);
}

TEST_CASE("exhaustive small origamis: Euler characteristic and strata") {
  for (int d = 1; d <= 4; ++d) {
    for (const auto& o : enumerate_origamis(d)) {
      CHECK(is_connected(o) == minimality_witness(o));
      if (!is_connected(o)) continue;
      auto s = singularities(o);
      int excess = 0;
      for (int k : s.lengths) excess += k - 1;
      // 2g - 2 = sum (k_j - 1)
      CHECK(2 * s.genus - 2 == excess);
      int total = 0;
      for (int k : s.lengths) total += k;
      CHECK(total == d);
      CHECK(is_torus_cover(o) == (s.genus == 1));
    }
  }
}
