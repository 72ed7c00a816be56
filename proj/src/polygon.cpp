#include "stiet/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stiet/errors.hpp"

namespace stiet {

RealInterval polygon_lambda(int d, mpfr_prec_t prec) {
  return RealInterval(Rational(1), prec) + RealInterval::cos_pi_fraction(1, d, prec);
}

namespace {

void check_d(int d) {
  if (d < 3) throw PreconditionError("bad-d", "the polygon family needs d >= 3");
}

}  // namespace

PolygonIet PolygonIet::from_y(int d, const Rational& y, bool negative) {
  check_d(d);
  if (y <= 0) throw PreconditionError("bad-y", "y must be positive");
  return PolygonIet(d, y, std::nullopt, negative);
}

PolygonIet PolygonIet::from_theta(int d, const Rational& theta) {
  check_d(d);
  RealInterval limit = RealInterval::pi(128) / RealInterval(Rational(2 * d), 128);
  RealInterval mag(abs(theta), 128);
  if (!mag.certainly_less(limit))
    throw PreconditionError("theta-out-of-window", "|theta| must be below pi/(2d)");
  return PolygonIet(d, std::nullopt, theta, theta < 0);
}

RealInterval PolygonIet::tan_theta(mpfr_prec_t prec) const {
  if (theta_) return RealInterval::tan(abs(*theta_), prec);
  RealInterval denom = 2 * RealInterval(*y_, prec) + polygon_lambda(d_, prec);
  return RealInterval::sin_pi_fraction(1, d_, prec) / denom;
}

std::vector<RealInterval> PolygonIet::gammas(mpfr_prec_t prec) const {
  RealInterval t = tan_theta(prec);
  if (negative_) t = -t;
  std::vector<RealInterval> g;
  for (int j = 1; j < d_; ++j)
    g.push_back(t * RealInterval::sin_pi_fraction(j, d_, prec) - RealInterval::cos_pi_fraction(j, d_, prec));
  return g;
}

std::vector<RealInterval> PolygonIet::betas(mpfr_prec_t prec) const {
  auto g = gammas(prec);
  std::vector<RealInterval> b;
  for (int j = 1; j < d_; ++j) b.push_back(-g[static_cast<std::size_t>(d_ - j - 1)]);
  return b;
}

std::vector<int> PolygonIet::coding(const Rational& x0, std::size_t n) const {
  if (theta_ && *theta_ == 0) throw PreconditionError("theta-zero", "theta = 0 does not define a minimal exchange");
  if (x0 < -1 || x0 >= 1) throw PreconditionError("out-of-domain", "x0 must lie in [-1, 1)");
  const int d = d_;
  // Orbit points are kept symbolically as x0 + r + sum_j c_j gamma_j and
  // evaluated at whatever precision the comparison needs.
  Integer r = 0;
  std::vector<std::int64_t> c(static_cast<std::size_t>(d - 1), 0);

  struct Level {
    mpfr_prec_t prec;
    std::vector<RealInterval> gamma;
    RealInterval x0;
  };
  std::vector<Level> levels;
  auto level = [&](std::size_t k) -> const Level& {
    while (levels.size() <= k)
      levels.push_back({kPolygonLadder[levels.size()], gammas(kPolygonLadder[levels.size()]),
                        RealInterval(x0, kPolygonLadder[levels.size()])});
    return levels[k];
  };

  std::vector<int> out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    int letter = -1;
    for (std::size_t k = 0; k < std::size(kPolygonLadder) && letter < 0; ++k) {
      const Level& L = level(k);
      RealInterval x = L.x0 + RealInterval(Rational(r), L.prec);
      for (int j = 0; j < d - 1; ++j)
        if (c[static_cast<std::size_t>(j)] != 0) x = x + static_cast<long>(c[static_cast<std::size_t>(j)]) * L.gamma[static_cast<std::size_t>(j)];
      // Count gamma_j <= x; every comparison must be certain.
      int lo = 0, hi = d - 1;  // answer in [lo, hi]
      bool certain = true;
      while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        int s = (x - L.gamma[static_cast<std::size_t>(mid - 1)]).certain_sign();
        if (s == 0) {
          certain = false;
          break;
        }
        if (s > 0) lo = mid;
        else hi = mid - 1;
      }
      if (certain) letter = lo + 1;
    }
    if (letter < 0)
      throw PrecisionExhausted("orbit point " + std::to_string(step) + " is too close to a discontinuity");
    out.push_back(letter);
    // x -> x - gamma_{j-1} - gamma_j
    if (letter == 1) r += 1;
    else c[static_cast<std::size_t>(letter - 2)] -= 1;
    if (letter == d) r -= 1;
    else c[static_cast<std::size_t>(letter - 1)] -= 1;
  }
  return out;
}

GOrbit g_orbit(const Rational& y, int d, int N) {
  check_d(d);
  if (y <= 0) throw PreconditionError("bad-y", "y must be positive");
  if (N < 0) throw PreconditionError("bad-count", "N must be non-negative");
  for (mpfr_prec_t prec : kPolygonLadder) {
    RealInterval lambda = polygon_lambda(d, prec);
    RealInterval half(Rational(1, 2), prec);
    GOrbit orbit;
    // Exact while the orbit stays rational: before any subtraction of an
    // irrational lambda (every lambda is irrational for d >= 4).
    std::optional<Rational> exact = y;
    RealInterval z(y, prec);
    bool undecided = false;
    for (int n = 0; n < N; ++n) {
      orbit.values.push_back(z);
      if (exact && d == 3) {
        const Rational lam(3, 2);
        if (*exact > lam) {
          orbit.labels += 'm';
          *exact -= lam;
        } else if (*exact > 0 && *exact < Rational(1, 2)) {
          orbit.labels += 'q';
          *exact = *exact / (1 - 2 * *exact);
        } else {
          throw PreconditionError("orbit-escapes", "g-orbit leaves the domain at step " + std::to_string(n));
        }
        exact->canonicalize();
        z = RealInterval(*exact, prec);
        continue;
      }
      if (exact && *exact > 0 && *exact < Rational(1, 2)) {
        orbit.labels += 'q';
        *exact = *exact / (1 - 2 * *exact);
        exact->canonicalize();
        z = RealInterval(*exact, prec);
        continue;
      }
      if (exact && *exact == Rational(1, 2))
        throw PreconditionError("orbit-escapes", "g-orbit hits 1/2 at step " + std::to_string(n));
      if (lambda.certainly_less(z)) {
        orbit.labels += 'm';
        z = z - lambda;
        exact.reset();
      } else if (z.certainly_positive() && z.certainly_less(half)) {
        orbit.labels += 'q';
        z = z / (RealInterval(Rational(1), prec) - 2 * z);
      } else if (!z.certainly_less(half) && !lambda.certainly_less(z) && half.lower() <= z.lower() &&
                 z.upper() <= lambda.upper() && !(z.upper() > lambda.lower())) {
        throw PreconditionError("orbit-escapes", "g-orbit lands in [1/2, lambda] at step " + std::to_string(n));
      } else if (half.upper() <= z.lower() && z.upper() < lambda.lower()) {
        throw PreconditionError("orbit-escapes", "g-orbit lands in [1/2, lambda] at step " + std::to_string(n));
      } else {
        undecided = true;
        break;
      }
    }
    if (undecided) continue;
    orbit.regimes = regime_runs(orbit.labels);
    return orbit;
  }
  throw PrecisionExhausted("g-orbit iterate too close to 1/2 or lambda");
}

std::string regime_labels(const std::vector<std::int64_t>& regimes) {
  std::string out;
  for (std::size_t k = 0; k < regimes.size(); ++k) {
    if (regimes[k] < 0) throw PreconditionError("bad-regimes", "regime counts must be non-negative");
    out.append(static_cast<std::size_t>(regimes[k]), k % 2 == 0 ? 'm' : 'q');
  }
  return out;
}

std::vector<std::int64_t> regime_runs(const std::string& labels) {
  std::vector<std::int64_t> runs;
  char want = 'm';
  std::size_t k = 0;
  while (k < labels.size()) {
    std::int64_t count = 0;
    while (k < labels.size() && labels[k] == want) {
      ++count;
      ++k;
    }
    runs.push_back(count);
    want = want == 'm' ? 'q' : 'm';
  }
  return runs;
}

std::vector<YInterval> y_from_symbols(const std::vector<std::int64_t>& regimes, int d, mpfr_prec_t prec) {
  check_d(d);
  std::string labels = regime_labels(regimes);
  RealInterval lambda = polygon_lambda(d, prec);
  RealInterval zero(Rational(0), prec), half(Rational(1, 2), prec), one(Rational(1), prec);
  if (labels.empty()) return {{zero, half}, {lambda, std::nullopt}};
  // After the prescribed block the orbit switches regime.
  YInterval cur = labels.back() == 'm' ? YInterval{zero, half} : YInterval{lambda, std::nullopt};
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    if (*it == 'm') {
      cur.lower = cur.lower + lambda;
      if (cur.upper) cur.upper = *cur.upper + lambda;
    } else {
      // y = z / (1 + 2z) is increasing and sends +infinity to 1/2.
      cur.lower = cur.lower / (one + 2 * cur.lower);
      cur.upper = cur.upper ? *cur.upper / (one + 2 * *cur.upper) : half;
    }
  }
  return {cur};
}

Rational y_midpoint(const std::vector<std::int64_t>& regimes, int d) {
  for (mpfr_prec_t prec : kPolygonLadder) {
    auto iv = y_from_symbols(regimes, d, prec).front();
    Rational lo = iv.lower.upper();
    if (!iv.upper) return lo + 1;
    Rational hi = iv.upper->lower();
    if (lo < hi) {
      Rational m = (lo + hi) / 2;
      m.canonicalize();
      return m;
    }
  }
  throw PrecisionExhausted("admissible interval too thin to pick a point");
}

std::string to_string(const PolygonWord& w) {
  bool digits = std::all_of(w.begin(), w.end(), [](int v) { return v >= 1 && v <= 9; });
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!digits && k) out += '.';
    out += std::to_string(w[k]);
  }
  return out;
}

namespace {

PolygonWord cat(std::initializer_list<const PolygonWord*> parts) {
  PolygonWord out;
  for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

std::vector<PolygonWords> word_induction(int d, const std::vector<std::int64_t>& regimes, int N) {
  check_d(d);
  std::string labels = regime_labels(regimes);
  if (N < 0 || static_cast<std::size_t>(N) > labels.size())
    throw PreconditionError("bad-level", "regime string covers only " + std::to_string(labels.size()) + " steps");
  const auto idx = [](int i) { return static_cast<std::size_t>(i - 1); };
  PolygonWords w;
  for (int i = 1; i <= d - 1; ++i) {
    w.M.push_back({i});
    w.P.push_back(i == 1 ? PolygonWord{d, 1} : PolygonWord{i});
  }
  std::vector<PolygonWords> out{w};
  for (int n = 0; n < N; ++n) {
    PolygonWords next = w;
    next.level = n + 1;
    next.step = labels[static_cast<std::size_t>(n)];
    if (next.step == 'm') {
      next.M[0] = cat({&w.M[0], &w.P[0]});
      for (int i = 2; i <= d - 1; ++i) next.M[idx(i)] = cat({&w.M[idx(i)], &w.P[idx(d - i + 1)], &w.P[idx(i)]});
    } else {
      // M is unchanged on q-steps, so M_{n+1} = M_n.
      for (int i = 1; i <= d - 1; ++i) next.P[idx(i)] = cat({&w.P[idx(i)], &next.M[idx(d - i)], &next.M[idx(i)]});
    }
    out.push_back(next);
    w = std::move(next);
  }
  return out;
}

Integer lcm_times(const PolygonWords& w) {
  const int d = static_cast<int>(w.P.size()) + 1;
  Integer s = static_cast<unsigned long>(w.P[0].size());
  for (int i = 2; i <= d - 1; ++i) {
    Integer len = static_cast<unsigned long>(w.P[static_cast<std::size_t>(d - i)].size() + w.P[static_cast<std::size_t>(i - 1)].size());
    s = lcm(s, len);
  }
  return s;
}

TilingParse parse_tiling(const std::vector<int>& coding, const PolygonWords& words) {
  struct Entry {
    const PolygonWord* word;
    std::string label;
  };
  std::vector<Entry> dict;
  for (std::size_t i = 0; i < words.M.size(); ++i) dict.push_back({&words.M[i], "M" + std::to_string(i + 1)});
  for (std::size_t i = 0; i < words.P.size(); ++i) dict.push_back({&words.P[i], "P" + std::to_string(i + 1)});

  const std::size_t n = coding.size();
  auto matches_at = [&](const PolygonWord& w, std::size_t pos, std::size_t from, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k)
      if (coding[pos + k] != w[from + k]) return false;
    return true;
  };
  // reach[p]: coding[0, p) splits as a word suffix followed by whole words.
  std::vector<int> from(n + 1, -2);  // -2 unreachable, -1 start, else dict index
  std::vector<std::size_t> back(n + 1, 0);
  for (std::size_t p = 0; p <= n; ++p) {
    if (p == 0) {
      from[0] = -1;
      continue;
    }
    for (const auto& e : dict) {
      const PolygonWord& w = *e.word;
      if (p < w.size() && matches_at(w, 0, w.size() - p, p)) {
        from[p] = -1;  // proper suffix of a word
        break;
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (from[p] == -2) continue;
    for (std::size_t k = 0; k < dict.size(); ++k) {
      const PolygonWord& w = *dict[k].word;
      if (p + w.size() <= n && from[p + w.size()] == -2 && matches_at(w, p, 0, w.size())) {
        from[p + w.size()] = static_cast<int>(k);
        back[p + w.size()] = p;
      }
    }
  }
  TilingParse out;
  for (std::size_t p = n + 1; p-- > 0;) {
    if (from[p] == -2) continue;
    bool tail_ok = p == n;
    for (const auto& e : dict)
      if (!tail_ok && n - p < e.word->size() && matches_at(*e.word, p, 0, n - p)) tail_ok = true;
    if (!tail_ok) continue;
    out.ok = true;
    out.tail = n - p;
    std::size_t q = p;
    while (from[q] >= 0) {
      out.labels.push_back(dict[static_cast<std::size_t>(from[q])].label);
      q = back[q];
    }
    out.head = q;
    out.blocks = out.labels.size();
    std::reverse(out.labels.begin(), out.labels.end());
    break;
  }
  return out;
}

FlowCheckReport octagon_flow_check(const FlowCheckInput& in) {
  if (in.l_n <= 0 || in.p_n <= 0 || in.q_n <= 0) throw PreconditionError("inconsistent-inputs", "l_n, p_n, q_n must be positive");
  if (in.a < 0) throw PreconditionError("inconsistent-inputs", "speed a must be non-negative");
  FlowCheckReport r;
  QuadraticNumber diff = QuadraticNumber::sqrt(2) - QuadraticNumber(Rational(in.p_n, in.q_n));
  r.sqrt2_error = diff.sign() < 0 ? -diff : diff;
  r.diophantine_ok = r.sqrt2_error < QuadraticNumber(Rational(Integer(1), in.q_n * in.q_n));
  if (!r.diophantine_ok)
    throw PreconditionError("inconsistent-inputs", "|sqrt2 - " + in.p_n.get_str() + "/" + in.q_n.get_str() + "| is not below 1/q^2");
  Rational gap = abs(Rational(in.theta - in.theta_n));
  Integer l_pow_a, l_pow_2a;
  mpz_pow_ui(l_pow_a.get_mpz_t(), in.l_n.get_mpz_t(), static_cast<unsigned long>(in.a));
  l_pow_2a = l_pow_a * in.l_n * in.l_n;
  r.speed_ok = gap * Rational(l_pow_2a) < 1;
  r.escape_bound = Rational(in.p_n * in.l_n * in.l_n) * gap;
  r.escape_limit = Rational(in.p_n, l_pow_a);
  r.escape_limit.canonicalize();
  r.translation_offset = Rational(in.l_n, in.q_n);
  r.translation_offset.canonicalize();
  r.window_ok = in.l_n < in.p_n && in.p_n < l_pow_a;
  r.compatible = in.a > in.d - 3;
  return r;
}

std::vector<OctagonDirection> octagon_directions() {
  using Q = QuadraticNumber;
  const Q h = QuadraticNumber::sqrt(2) / Q(2);
  const Q shear = Q(2) * (Q(1) + QuadraticNumber::sqrt(2));
  const Q short_len = Q(1) + QuadraticNumber::sqrt(2);
  const Q long_len = Q(2) + QuadraticNumber::sqrt(2);
  struct M2 {
    Q a, b, c, e;
  };
  auto mul = [](const M2& x, const M2& y) {
    return M2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.e, x.c * y.a + x.e * y.c, x.c * y.b + x.e * y.e};
  };
  const M2 I{Q(1), Q(0), Q(0), Q(1)};
  const M2 R{h, -h, h, h};
  const M2 T{Q(1), shear, Q(0), Q(1)};
  const M2 Ti{Q(1), -shear, Q(0), Q(1)};
  std::vector<std::pair<std::string, M2>> words = {
      {"I", I}, {"R", R}, {"T R", mul(T, R)}, {"T^-1 R", mul(Ti, R)}, {"T^2 R", mul(mul(T, T), R)}, {"R T R", mul(R, mul(T, R))}};
  std::vector<OctagonDirection> out;
  for (auto& [name, g] : words) {
    OctagonDirection dir;
    dir.word = name;
    dir.x = g.a;
    dir.y = g.c;
    Q norm2 = g.a * g.a + g.c * g.c;
    dir.short_length2 = norm2 * short_len * short_len;
    dir.long_length2 = norm2 * long_len * long_len;
    dir.angle = std::atan2(dir.y.to_double(), dir.x.to_double());
    out.push_back(dir);
  }
  return out;
}

}  // namespace stiet
