// Acceptance run: one PASS/FAIL line per criterion, with timings.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stiet/coding.hpp"
#include "stiet/errors.hpp"
#include "stiet/iet.hpp"
#include "stiet/origami.hpp"
#include "stiet/polygon.hpp"
#include "stiet/rigidity.hpp"

using namespace stiet;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail.clear();
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome origami_classification() {
  Outcome out;
  auto s = singularities(Origami::registry("fig1"));
  if (s.lengths != std::vector<int>{3} || s.cone_angles() != std::vector<std::string>{"6π"} || s.genus != 2)
    fail(out, "fig1 singularity data wrong");
  if (singularities(Origami::registry("torus-d1")).genus != 1) fail(out, "torus-d1 genus is not 1");

  // Dynamical cross-check: on a connected origami the orbit of (0, 1) visits
  // every atom; on a disconnected one it cannot leave its component.
  FixedRotation rot(AlphaValue::parse("quad:sqrt2-1"));
  int checked = 0, disagreements = 0;
  for (int d = 1; d <= 4; ++d)
    for (const auto& o : enumerate_origamis(d)) {
      bool conn = is_connected(o);
      if (conn != minimality_witness(o)) ++disagreements;
      SkewPoint p;
      auto w = trajectory(o, rot, p, 400);
      std::set<int> atoms;
      for (const auto& l : w) atoms.insert(l.atom());
      bool visits_all = static_cast<int>(atoms.size()) == 2 * d;
      if (visits_all != conn) ++disagreements;
      ++checked;
    }
  if (disagreements) fail(out, std::to_string(disagreements) + " disagreements");
  if (out.pass)
    out.detail = "fig1: one orbit of length 3, 6π, genus 2; torus genus 1; " + std::to_string(checked) +
                 " origamis d<=4 agree (witness, connectivity, orbit visits)";
  return out;
}

std::vector<std::string> bispecials_from(const std::string& w, std::size_t maxlen) {
  std::vector<std::string> out;
  for (std::size_t m = 1; m <= maxlen; ++m) {
    std::unordered_map<std::string_view, int> ext;  // bit 0/1 left l/r, bit 2/3 right l/r
    std::string_view sv(w);
    for (std::size_t i = 0; i + m + 2 <= w.size(); ++i) {
      int& e = ext[sv.substr(i + 1, m)];
      e |= (w[i] == 'l' ? 1 : 2) | (w[i + m + 1] == 'l' ? 4 : 8);
    }
    std::vector<std::string> found;
    for (auto& [f, e] : ext)
      if (e == 15) found.emplace_back(f);
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

Outcome sturmian_vs_brute_force() {
  Outcome out;
  std::ostringstream note;
  for (const char* alpha_text : {"quad:sqrt2-1", "quad:(3-sqrt5)/2"}) {
    auto a = AlphaValue::parse(alpha_text);
    FixedRotation rot(a);
    std::string coding;
    coding.reserve(100000);
    for (std::int64_t k = 0; k < 100000; ++k) coding += rot.is_left_multiple(k) ? 'l' : 'r';
    auto states = sturmian_run(a, 8);
    auto bis = bispecials_from(coding, states.back().w.size());
    bool same = bis.size() == states.size();
    for (std::size_t k = 0; same && k < states.size(); ++k) same = bis[k] == states[k].w;
    if (!same) fail(out, std::string(alpha_text) + ": w_n differ from the bispecial words");
    for (const auto& s : sturmian_run(a, 30, 0))
      if (s.M_len + s.P_len != s.w_len + 2) fail(out, std::string(alpha_text) + ": |P|+|M| != |w|+2 at n=" + std::to_string(s.n));
    note << alpha_text << " |w_8|=" << states.back().w_len << " ";
  }
  if (out.pass) out.detail = note.str() + "; identity holds n<=30";
  return out;
}

Outcome homologous_exhaustive() {
  Outcome out;
  auto o = Origami::registry("fig2");
  auto a = AlphaValue::parse("quad:sqrt2-1");
  FixedRotation rot(a);
  SkewPoint p;
  const std::size_t n = 100000;
  auto traj = trajectory(o, rot, p, n);
  const bool below = a.less_than_half();

  // Polynomial hashes of letters and of their l/r projection.
  const std::uint64_t B = 1000003;
  std::vector<std::uint64_t> code(n), side(n);
  for (std::size_t k = 0; k < n; ++k) {
    code[k] = static_cast<std::uint64_t>(traj[k].atom());
    side[k] = traj[k].side == Side::l ? 1 : 2;
  }
  auto hash_word = [&](const SymbolicWord& w) {
    std::uint64_t h = 0;
    for (const auto& l : w) h = h * B + static_cast<std::uint64_t>(l.atom());
    return h;
  };

  std::size_t factors = 0, exceptions = 0;
  std::vector<std::uint64_t> hw(n, 0), hs(n, 0);
  for (std::size_t m = 1; m <= 100; ++m) {
    // hw[i] = hash of traj[i, i+m)
    std::unordered_map<std::uint64_t, std::size_t> words;  // hash -> first position
    std::unordered_map<std::uint64_t, int> per_projection;
    for (std::size_t i = 0; i + m <= n; ++i) {
      hw[i] = hw[i] * B + code[i + m - 1];
      hs[i] = hs[i] * B + side[i + m - 1];
      if (words.emplace(hw[i], i).second) ++per_projection[hs[i]];
    }
    for (const auto& [h, pos] : words) {
      ++factors;
      SymbolicWord w(traj.begin() + static_cast<std::ptrdiff_t>(pos), traj.begin() + static_cast<std::ptrdiff_t>(pos + m));
      std::uint64_t proj = hs[pos];
      auto set = homologous(o, w, below);
      bool ok = set.size() == 3 && per_projection[proj] == 3;
      for (std::size_t i = 0; ok && i < set.size(); ++i) {
        ok = words.count(hash_word(set[i])) == 1;
        for (std::size_t j = i + 1; ok && j < set.size(); ++j) ok = dbar(set[i], set[j]) == 1;
      }
      if (!ok) ++exceptions;
    }
  }
  if (exceptions) fail(out, std::to_string(exceptions) + " exceptions among " + std::to_string(factors) + " factors");
  else out.detail = std::to_string(factors) + " distinct factors of length <= 100, each with exactly 3 homologous words in the language, pairwise dbar 1";
  return out;
}

Outcome rigidity_direction() {
  Outcome out;
  auto o = Origami::registry("fig2");
  auto a = AlphaValue::parse("cf:0,2,then:n");
  FixedRotation rot(a);
  auto times = rigidity_times(o, a, 10, 1);
  std::ostringstream note;
  std::vector<double> measured;
  for (const auto& t : times) {
    if (t.k < 4 || t.k > 10) continue;
    auto row = defect_row(o, rot, t.time);
    double worst = 0;
    for (const auto& v : row.defect) {
      double x = approx(v, a);
      worst = std::max(worst, x);
      if (!(x <= t.bound.get_d())) fail(out, "bound violated at k=" + std::to_string(t.k));
    }
    measured.push_back(worst);
    note << "k=" << t.k << " " << t.block << " s=" << t.cycles.s << " t=" << t.time << " defect=" << fmt(worst, 4)
         << " bound=" << fmt(t.bound.get_d(), 4) << "; ";
  }
  if (measured.size() != 7) fail(out, "expected strings 4..10");
  bool decreasing = true;
  for (std::size_t k = 1; k < measured.size(); ++k) decreasing = decreasing && measured[k] < measured[k - 1];
  bool small = !measured.empty() && measured.back() < 0.05;
  std::string detail = note.str();
  if (!small) fail(out, "defect at k=10 not below 0.05");
  if (!decreasing) {
    // Odd strings use the M block (cocycle cycles of length 3), even ones the
    // P block (length 2); each parity is decreasing on its own.
    bool even_dec = true, odd_dec = true;
    for (std::size_t k = 2; k < measured.size(); ++k)
      ((k % 2 == 0) ? even_dec : odd_dec) = ((k % 2 == 0) ? even_dec : odd_dec) && measured[k] < measured[k - 2];
    fail(out, std::string("defects not strictly decreasing (they alternate with the block type; per-parity decreasing: ") +
                  (even_dec && odd_dec ? "yes" : "no") + ")");
  }
  out.detail += (out.detail.empty() ? "" : " | ") + detail;
  return out;
}

Outcome non_rigidity_evidence() {
  Outcome out;
  auto o = Origami::registry("fig1");
  auto a = AlphaValue::parse("quad:(3-sqrt5)/2");
  auto report = defect_scan(o, a, 0, 2000, 4);
  double at1000 = approx(report.running_min[1000], a);
  double at2000 = approx(report.running_min[2000], a);
  double change = (at1000 - at2000) / at1000;
  if (!(change < 0.05)) fail(out, "running minimum moved by " + fmt(100 * change, 3) + "%");
  if (!(at2000 > 0)) fail(out, "running minimum reached 0");

  // Contrast: the rotation itself (d = 1) at convergent denominators.
  auto torus = Origami::registry("torus-d1");
  FixedRotation rot(a);
  std::vector<std::int64_t> dens{1, 2};
  while (dens.back() < 2000) dens.push_back(dens[dens.size() - 1] + dens[dens.size() - 2]);
  double last = 1;
  std::int64_t below_at = -1;
  for (auto q : dens) {
    last = approx(defect_row(torus, rot, q).max_defect, a);
    if (last < 1e-2 && below_at < 0) below_at = q;
  }
  if (below_at < 0) fail(out, "torus defects did not fall below 1e-2");
  std::ostringstream note;
  note << "running min " << fmt(at1000) << " (Q=1000) -> " << fmt(at2000) << " (Q=2000), change " << fmt(100 * change, 3)
       << "%, floor " << render(report.min_max_defect, a) << " at q=" << report.argmin_q << "; d=1 contrast below 1e-2 from q="
       << below_at << ", " << fmt(last, 3) << " at q=" << dens.back();
  out.detail += (out.detail.empty() ? "" : " | ") + note.str();
  return out;
}

Outcome lmr_structure() {
  Outcome out;
  std::mt19937_64 rng(20261015);
  int accepted = 0, attempts = 0, successes = 0, bound_ok = 0;
  std::map<std::string, int> per_surface;
  struct Source {
    const char* surface;
    const char* alpha;
  };
  const Source sources[] = {{"fig1", "quad:(3-sqrt5)/2"}, {"fig2", "quad:sqrt2-1"}};
  const Rational C(1, 5);
  for (const auto& src : sources) {
    auto o = Origami::registry(src.surface);
    auto a = AlphaValue::parse(src.alpha);
    FixedRotation rot(a);
    SkewPoint p;
    auto traj = trajectory(o, rot, p, 60000);
    std::vector<std::int64_t> shifts;
    auto conv = convergents(a.partial_quotients(20));
    for (const auto& c : conv)
      if (c.get_den() > 1 && c.get_den() < 5000) shifts.push_back(c.get_den().get_si());
    const bool below = a.less_than_half();
    int want = accepted + 50;
    while (accepted < want && attempts < 200000) {
      ++attempts;
      std::size_t q = 20 + rng() % 181;
      std::int64_t shift = shifts[rng() % shifts.size()] * static_cast<std::int64_t>(1 + rng() % 3);
      std::size_t i = rng() % (traj.size() - q - static_cast<std::size_t>(shift));
      SymbolicWord w1(traj.begin() + static_cast<std::ptrdiff_t>(i), traj.begin() + static_cast<std::ptrdiff_t>(i + q));
      SymbolicWord w2(traj.begin() + static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(shift)),
                      traj.begin() + static_cast<std::ptrdiff_t>(i + static_cast<std::size_t>(shift) + q));
      auto v = homologous(o, w1, below), vp = homologous(o, w2, below);
      Rational total;
      for (std::size_t k = 0; k < v.size(); ++k) total += dbar(v[k], vp[k]);
      if (!(total < C) || total == 0) continue;
      ++accepted;
      ++per_surface[src.surface];
      try {
        auto r = decompose_neighbors(v, vp, C, &o);
        ++successes;
        if (r.j1_bound_holds) ++bound_ok;
      } catch (const DecompositionNotFound&) {
      }
    }
  }
  if (accepted < 100) fail(out, "only " + std::to_string(accepted) + " window pairs with sum dbar < 0.2 found");
  if (successes != accepted) fail(out, std::to_string(accepted - successes) + " of " + std::to_string(accepted) + " pairs not decomposed");
  if (bound_ok != successes) fail(out, std::to_string(successes - bound_ok) + " successes violate #J1 >= (1 - sum dbar) q");

  auto fam = ctex_generate(Origami::registry("d4-cycle"), AlphaValue::parse("quad:sqrt2-1"), 6);
  if (!(fam.sum_dbar <= Rational(1, 20))) fail(out, "ctex sum dbar " + to_string(fam.sum_dbar) + " above 0.05");
  if (!fam.decomposition_fails) fail(out, "ctex family decomposes");
  if (fam.v.size() != 1) fail(out, "ctex family size is not 1");
  std::ostringstream note;
  note << accepted << " nonidentical pairs (fig1 " << per_surface["fig1"] << ", fig2 " << per_surface["fig2"] << ", "
       << attempts << " draws), " << successes << " decomposed, bound held in " << bound_ok << "; ctex d4-cycle |w|="
       << fam.w.size() << " sum dbar " << to_string(fam.sum_dbar) << ", e=1 decomposition fails: "
       << (fam.decomposition_fails ? "yes" : "no");
  out.detail += (out.detail.empty() ? "" : " | ") + note.str();
  return out;
}

Outcome polygon_tiling() {
  Outcome out;
  const std::vector<std::int64_t> regimes{2, 1, 2, 1};
  Rational y = y_midpoint(regimes, 4);
  auto orbit = g_orbit(y, 4, 6);
  if (orbit.labels != regime_labels(regimes)) fail(out, "midpoint y does not realize the regimes");
  auto words = word_induction(4, regimes, 6);
  auto coding = PolygonIet::from_y(4, y).coding(Rational(1, 7), 10000);
  auto parse = parse_tiling(coding, words[6]);
  if (!parse.ok) fail(out, "level-6 words do not tile the coding");
  if (lcm_times(words[0]) != 2 || lcm_times(word_induction(4, {1}, 1)[1]) != 2) fail(out, "lcm_times level 0/1 not 2");
  std::ostringstream note;
  note << "y=" << to_string(y) << " (≈" << fmt(y.get_d()) << "), 10^4 letters = " << parse.head << " head + " << parse.blocks
       << " level-6 blocks + " << parse.tail << " tail; s_0 = s_1 = 2";
  out.detail += (out.detail.empty() ? "" : " | ") + note.str();
  return out;
}

Outcome flow_arithmetic() {
  Outcome out;
  // Convergents of sqrt2 = [1; 2, 2, ...]
  std::vector<Integer> terms(10, 2);
  terms[0] = 1;
  auto conv = convergents(terms);
  int ok = 0;
  for (const auto& c : conv) {
    FlowCheckInput in;
    in.theta = in.theta_n = Rational(1, 7);
    in.p_n = c.get_num();
    in.q_n = c.get_den();
    in.l_n = 2;
    auto r = octagon_flow_check(in);
    if (r.diophantine_ok) ++ok;
    if (r.escape_bound != 0) fail(out, "escape bound not 0 for theta = theta_n");
  }
  if (ok != 10) fail(out, std::to_string(10 - ok) + " convergents fail the inequality");

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> qd(-1000000, 1000000);
  std::uniform_int_distribution<long> small(1, 40);
  int round_trips = 0;
  for (int t = 0; t < 1000; ++t) {
    long D = 2 + small(rng) % 7;
    QuadraticNumber rho(Rational(small(rng), small(rng)), Rational(small(rng), small(rng)), D);
    std::vector<std::int64_t> q{qd(rng)};
    auto back = nearest_integer_times(flow_times(q, rho), rho);
    if (back[0] == q[0]) ++round_trips;
  }
  if (round_trips != 1000) fail(out, std::to_string(1000 - round_trips) + " round trips failed");
  out.detail += (out.detail.empty() ? "" : " | ") + std::string("10/10 convergents p/q of sqrt2 with |sqrt2-p/q| < 1/q^2; escape bound 0; ") +
                std::to_string(round_trips) + "/1000 exact round trips";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "origami classification", 5, origami_classification},
      {2, "Sturmian induction vs brute force", 30, sturmian_vs_brute_force},
      {3, "homologous words, exhaustive", 60, homologous_exhaustive},
      {4, "rigidity times along a_n = n", 300, rigidity_direction},
      {5, "non-rigidity evidence", 600, non_rigidity_evidence},
      {6, "neighbour decomposition structure", 120, lmr_structure},
      {7, "polygon word tiling", 120, polygon_tiling},
      {8, "flow arithmetic", 5, flow_arithmetic},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " | runtime " + fmt(secs, 3) + " s exceeds " + fmt(c.limit_seconds, 3) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s (%.2f s / %.0f s) %s\n", c.id, c.title, o.pass ? "PASS" : "FAIL", secs, c.limit_seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
