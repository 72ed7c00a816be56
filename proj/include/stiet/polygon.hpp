#pragma once

// Interval exchanges from billiards in the regular double 2d-gon, the
// renormalizing map g, the M/P word induction and octagon flow arithmetic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stiet/interval.hpp"
#include "stiet/numeric.hpp"

namespace stiet {

/// Working precisions tried in turn before giving up.
inline constexpr mpfr_prec_t kPolygonLadder[] = {128, 256, 1024, 4096};

/// lambda = 1 + cos(pi / d).
RealInterval polygon_lambda(int d, mpfr_prec_t prec);

/// The d-interval exchange on [-1, 1) with discontinuities
/// gamma_j = -cos(j pi/d) + tan(theta) sin(j pi/d) and reversing permutation.
class PolygonIet {
 public:
  /// theta > 0 with tan(theta) = sin(pi/d) / (2y + lambda); `negative` selects
  /// -theta: the +theta exchange conjugated by x -> -x, so its discontinuities
  /// are the beta_j of +theta and letters read j -> d + 1 - j.
  static PolygonIet from_y(int d, const Rational& y, bool negative = false);
  /// |theta| < pi / (2d); theta = 0 is accepted only for discontinuities().
  static PolygonIet from_theta(int d, const Rational& theta);

  int d() const { return d_; }
  bool negative() const { return negative_; }
  RealInterval tan_theta(mpfr_prec_t prec) const;
  /// gamma_1..gamma_{d-1} and beta_j = -gamma_{d-j}.
  std::vector<RealInterval> gammas(mpfr_prec_t prec) const;
  std::vector<RealInterval> betas(mpfr_prec_t prec) const;

  /// Letters 1..d (piece j = [gamma_{j-1}, gamma_j), gamma_0 = -1, gamma_d = 1)
  /// of the first n points of the orbit of x0, certified.
  std::vector<int> coding(const Rational& x0, std::size_t n) const;

 private:
  PolygonIet(int d, std::optional<Rational> y, std::optional<Rational> theta, bool negative)
      : d_(d), y_(std::move(y)), theta_(std::move(theta)), negative_(negative) {}

  int d_;
  std::optional<Rational> y_;
  std::optional<Rational> theta_;
  bool negative_ = false;
};

enum class GRegime : char { m = 'm', q = 'q' };

struct GOrbit {
  std::vector<RealInterval> values;  // g^n(y), n = 0..N-1
  std::string labels;                // 'm' when above lambda, 'q' when in (0, 1/2)
  std::vector<std::int64_t> regimes; // run lengths m1, q1, m2, q2, ...
};

/// Iterates g(y) = y - lambda on (lambda, inf), y / (1 - 2y) on (0, 1/2).
/// Throws orbit-escapes when an iterate lands in [1/2, lambda].
GOrbit g_orbit(const Rational& y, int d, int N);

/// Run lengths -> labels "mmqmmq"; the first entry counts m-steps.
std::string regime_labels(const std::vector<std::int64_t>& regimes);
std::vector<std::int64_t> regime_runs(const std::string& labels);

/// One component of the set of admissible y; `upper` absent means +infinity.
struct YInterval {
  RealInterval lower;
  std::optional<RealInterval> upper;
};

/// The y whose g-orbit follows `regimes` and then switches regime.
std::vector<YInterval> y_from_symbols(const std::vector<std::int64_t>& regimes, int d,
                                      mpfr_prec_t prec = 256);
/// A rational strictly inside the (first) admissible interval.
Rational y_midpoint(const std::vector<std::int64_t>& regimes, int d);

using PolygonWord = std::vector<int>;
std::string to_string(const PolygonWord& w);

struct PolygonWords {
  int level = 0;
  char step = '-';              // rule that produced this level
  std::vector<PolygonWord> M;   // M_{n,1..d-1}
  std::vector<PolygonWord> P;   // P_{n,1..d-1}
};

/// Levels 0..N of the word induction driven by `regimes`.
std::vector<PolygonWords> word_induction(int d, const std::vector<std::int64_t>& regimes, int N);

/// lcm of |P_{n,d-i+1}| + |P_{n,i}| (2 <= i <= d-1) and |P_{n,1}|.
Integer lcm_times(const PolygonWords& w);

struct TilingParse {
  bool ok = false;
  std::size_t head = 0, tail = 0;  // letters covered by partial words
  std::size_t blocks = 0;          // complete M/P words used
  std::vector<std::string> labels; // "M2", "P1", ...
};

/// Splits `coding` into complete level words, allowing a partial word at
/// each end.
TilingParse parse_tiling(const std::vector<int>& coding, const PolygonWords& words);

struct FlowCheckInput {
  Rational theta, theta_n;
  Integer l_n, p_n, q_n;
  int a = 2;
  int d = 4;
};

struct FlowCheckReport {
  bool diophantine_ok = false;   // |sqrt2 - p/q| < 1/q^2
  QuadraticNumber sqrt2_error;   // |sqrt2 - p/q|
  bool speed_ok = false;         // |theta - theta_n| < 1 / l^(2+a)
  Rational escape_bound;         // p l^2 |theta - theta_n|
  Rational escape_limit;         // p / l^a
  Rational translation_offset;   // l / q
  bool window_ok = false;        // l < p < l^a
  bool compatible = false;       // a > d - 3
};

/// Throws inconsistent-inputs when the sqrt 2 approximation fails.
FlowCheckReport octagon_flow_check(const FlowCheckInput& in);

/// Periodic directions of the regular octagon of unit side obtained from the
/// horizontal one by the rotation by pi/4 and the horizontal parabolic
/// [[1, 2(1+sqrt2)], [0, 1]].
struct OctagonDirection {
  std::string word;               // group element applied to the horizontal
  QuadraticNumber x, y;           // direction vector
  QuadraticNumber short_length2;  // squared length of the shorter cylinder
  QuadraticNumber long_length2;   // squared length of the longer cylinder
  double angle = 0;               // atan2(y, x)
};
std::vector<OctagonDirection> octagon_directions();

}  // namespace stiet
