#include "stiet/coding.hpp"

#include <algorithm>
#include <set>

namespace stiet {

std::string serialize(const SymbolicWord& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '.';
    out += w[k].to_string();
  }
  return out;
}

SymbolicWord parse_word(std::string_view text) {
  SymbolicWord w;
  if (text.empty()) return w;
  std::size_t start = 0;
  for (;;) {
    std::size_t dot = text.find('.', start);
    std::string_view tok = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (tok.size() < 2 || (tok.back() != 'l' && tok.back() != 'r'))
      throw PreconditionError("parse-error", "bad letter '" + std::string(tok) + "'");
    Letter a;
    a.side = tok.back() == 'l' ? Side::l : Side::r;
    a.square = 0;
    for (char ch : tok.substr(0, tok.size() - 1)) {
      if (ch < '0' || ch > '9') throw PreconditionError("parse-error", "bad letter '" + std::string(tok) + "'");
      a.square = a.square * 10 + (ch - '0');
    }
    if (a.square < 1) throw PreconditionError("parse-error", "squares are numbered from 1");
    w.push_back(a);
    if (dot == std::string_view::npos) return w;
    start = dot + 1;
  }
}

std::string phi(const SymbolicWord& w) {
  std::string out(w.size(), 'l');
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k].side == Side::r) out[k] = 'r';
  return out;
}

SymbolicWord lift(const Origami& o, std::string_view lr, int start) {
  if (start < 1 || start > o.d()) throw PreconditionError("bad-square", "square out of range");
  SymbolicWord w;
  w.reserve(lr.size());
  int i = start;
  for (char ch : lr) {
    if (ch != 'l' && ch != 'r') throw PreconditionError("parse-error", "expected an {l,r}-word");
    Side s = ch == 'l' ? Side::l : Side::r;
    w.push_back({i, s});
    i = s == Side::l ? o.step_l()(i) : o.step_r()(i);
  }
  return w;
}

SymbolicWord trajectory(const Origami& o, const FixedRotation& rot, const SkewPoint& start, std::size_t n) {
  if (start.x.k.get_den() != 1) throw PreconditionError("bad-point", "start point must be c + k alpha with integer k");
  if (start.square < 1 || start.square > o.d()) throw PreconditionError("bad-square", "square out of range");
  const AlphaValue& alpha = rot.alpha();
  if (sign(start.x, alpha) < 0 || compare(start.x, AlphaAffine::constant(1), alpha) >= 0)
    throw PreconditionError("out-of-domain", "start point must satisfy 0 <= x < 1");
  const std::int64_t k0 = start.x.k.get_num().get_si();
  const bool on_orbit_of_zero = start.x.c.get_den() == 1;  // x = k alpha mod 1
  SymbolicWord w;
  w.reserve(n);
  int i = start.square;
  for (std::size_t m = 0; m < n; ++m) {
    std::int64_t k = k0 + static_cast<std::int64_t>(m);
    bool left = on_orbit_of_zero ? rot.is_left_multiple(k) : rot.is_left(start.x.c, k);
    w.push_back({i, left ? Side::l : Side::r});
    i = left ? o.step_l()(i) : o.step_r()(i);
  }
  return w;
}

std::vector<Letter> successors(const Origami& o, const Letter& a, bool below_half) {
  int next = a.side == Side::l ? o.step_l()(a.square) : o.step_r()(a.square);
  // Below 1/2 an r-letter is always followed by an l-letter; above 1/2 an
  // l-letter is always followed by an r-letter.
  if (below_half && a.side == Side::r) return {{next, Side::l}};
  if (!below_half && a.side == Side::l) return {{next, Side::r}};
  return {{next, Side::l}, {next, Side::r}};
}

bool respects_successors(const Origami& o, const SymbolicWord& w, bool below_half) {
  for (const Letter& a : w)
    if (a.square < 1 || a.square > o.d()) return false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    auto s = successors(o, w[k], below_half);
    if (std::find(s.begin(), s.end(), w[k + 1]) == s.end()) return false;
  }
  return true;
}

std::vector<SymbolicWord> homologous(const Origami& o, const SymbolicWord& w, bool below_half) {
  if (!respects_successors(o, w, below_half))
    throw PreconditionError("not-in-language", "word " + serialize(w) + " is not in the language");
  if (w.empty()) return {w};
  std::string lr = phi(w);
  std::vector<SymbolicWord> out;
  for (int x = 1; x <= o.d(); ++x) out.push_back(lift(o, lr, x));
  return out;
}

Permutation cocycle_permutation(const Origami& o, std::string_view lr) {
  std::vector<int> img(static_cast<std::size_t>(o.d()));
  for (int i = 1; i <= o.d(); ++i) {
    int j = i;
    for (char ch : lr) {
      if (ch == 'l') j = o.step_l()(j);
      else if (ch == 'r') j = o.step_r()(j);
      else throw PreconditionError("parse-error", "expected an {l,r}-word");
    }
    img[static_cast<std::size_t>(i - 1)] = j;
  }
  return Permutation(std::move(img));
}

namespace {

std::string swap_lr(std::string s) {
  for (char& ch : s) ch = ch == 'l' ? 'r' : 'l';
  return s;
}

// c + k alpha' with alpha' = 1 - alpha, rewritten in alpha.
AlphaAffine from_complement(const AlphaAffine& x) { return {x.c + x.k, -x.k}; }

}  // namespace

std::vector<SturmianState> sturmian_run(const AlphaValue& alpha, int N, std::int64_t word_cap) {
  if (N < 1) throw PreconditionError("bad-count", "need at least one state");
  const bool mirrored = !alpha.less_than_half();
  const AlphaValue base = mirrored ? alpha.complement() : alpha;

  std::vector<SturmianState> out;
  SturmianState s;
  s.n = 1;
  s.l = AlphaAffine::alpha();
  s.r = AlphaAffine(1, -2);
  s.w = "l";
  s.M = "l";
  s.P = "rl";
  s.w_len = 1;
  s.M_len = 1;
  s.P_len = 2;
  bool keep = true;
  int string_index = 0;
  bool prev_regime = false;
  for (int n = 1; n <= N; ++n) {
    s.n = n;
    s.l_greater = compare(s.l, s.r, base) > 0;
    if (n == 1) string_index = s.l_greater ? 2 : 1;
    else if (s.l_greater != prev_regime) ++string_index;
    s.string_position = (n == 1 || s.l_greater != prev_regime) ? 1 : s.string_position + 1;
    s.string_index = string_index;
    prev_regime = s.l_greater;
    out.push_back(s);

    if (s.l_greater) {
      s.l -= s.r;
      s.w_len += s.P_len;
      s.M_len += s.P_len;
      if (keep) {
        s.w += s.P;
        s.M += s.P;
      }
    } else {
      s.r -= s.l;
      s.w_len += s.M_len;
      s.P_len += s.M_len;
      if (keep) {
        s.w += s.M;
        s.P += s.M;
      }
    }
    if (keep && std::max({s.w_len, s.M_len, s.P_len}) > word_cap) {
      keep = false;
      s.w.clear();
      s.M.clear();
      s.P.clear();
    }
  }

  if (mirrored) {
    for (auto& st : out) {
      AlphaAffine l = from_complement(st.r), r = from_complement(st.l);
      st.l = l;
      st.r = r;
      st.l_greater = !st.l_greater;
      st.w = swap_lr(st.w);
      std::string m = swap_lr(st.M), p = swap_lr(st.P);
      st.M = m;
      st.P = p;
    }
  }
  return out;
}

std::vector<Integer> induction_quotients(const AlphaValue& alpha, std::size_t count) {
  const AlphaValue base = alpha.less_than_half() ? alpha : alpha.complement();
  auto t = base.partial_quotients(count + 1);
  std::vector<Integer> a(t.begin() + 1, t.end());
  a[0] -= 1;
  return a;
}

std::vector<int> commuting_squares(const Origami& o) {
  Permutation ts = o.tau() * o.sigma(), st = o.sigma() * o.tau();
  std::vector<int> out;
  for (int t = 1; t <= o.d(); ++t)
    if (ts(t) == st(t)) out.push_back(t);
  return out;
}

NeighborDecomposition decompose_neighbors(const std::vector<SymbolicWord>& v, const std::vector<SymbolicWord>& vp,
                                          const Rational& C, const Origami* o) {
  if (v.empty() || v.size() != vp.size())
    throw PreconditionError("hypothesis-violation", "need two families of the same positive size");
  const std::size_t e = v.size();
  const std::size_t q = v[0].size();
  if (q == 0) throw PreconditionError("hypothesis-violation", "words must be nonempty");
  for (std::size_t i = 0; i < e; ++i)
    if (v[i].size() != q || vp[i].size() != q)
      throw PreconditionError("hypothesis-violation", "all words must have the same length");
  const std::string u = phi(v[0]), up = phi(vp[0]);
  for (std::size_t i = 1; i < e; ++i) {
    if (phi(v[i]) != u) throw PreconditionError("hypothesis-violation", "the v_i do not share one phi-image");
    if (phi(vp[i]) != up) throw PreconditionError("hypothesis-violation", "the v'_i do not share one phi-image");
  }
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = i + 1; j < e; ++j)
      if (v[i] == v[j]) throw PreconditionError("hypothesis-violation", "the v_i are not pairwise distinct");

  NeighborDecomposition out;
  out.q = static_cast<std::int64_t>(q);
  out.e = static_cast<int>(e);
  for (std::size_t i = 0; i < e; ++i) out.sum_dbar += dbar(v[i], vp[i]);
  if (out.sum_dbar >= C)
    throw PreconditionError("hypothesis-violation", "sum of dbar " + to_string(out.sum_dbar) + " is not below C = " + to_string(C));
  if (o) {
    int equal = static_cast<int>(commuting_squares(*o).size());
    out.e_condition_corrected = static_cast<int>(e) >= 1 + equal && static_cast<int>(e) <= o->d();
    out.e_condition_printed = static_cast<int>(e) >= 1 + (o->d() - equal) && static_cast<int>(e) <= o->d();
  }
  for (std::size_t h = 0; h < q; ++h) {
    bool agree = u[h] == up[h];
    if (agree && (h == 0 || u[h - 1] != up[h - 1])) ++out.u_agreement_runs;
  }

  // disagreements[h] summed over the family; prefix sums give each
  // candidate block's total dbar as (mismatches / length).
  std::vector<std::int64_t> prefix(q + 1, 0);
  for (std::size_t h = 0; h < q; ++h) {
    std::int64_t dis = 0;
    for (std::size_t i = 0; i < e; ++i)
      if (!(v[i][h] == vp[i][h])) ++dis;
    prefix[h + 1] = prefix[h] + dis;
  }
  auto heavy = [&](std::int64_t first, std::int64_t last) {  // 1-based, closed
    if (first > last) return true;
    return prefix[static_cast<std::size_t>(last)] - prefix[static_cast<std::size_t>(first - 1)] >= last - first + 1;
  };
  auto finish = [&](IntegerInterval I1, IntegerInterval J1, IntegerInterval I2) {
    out.I1 = I1;
    out.J1 = J1;
    out.I2 = I2;
    out.j1_bound_holds = Rational(J1.size()) >= (1 - out.sum_dbar) * Rational(out.q);
    return out;
  };

  std::vector<IntegerInterval> runs;
  for (std::int64_t h = 1; h <= out.q;) {
    auto agree_at = [&](std::int64_t x) { return prefix[static_cast<std::size_t>(x)] == prefix[static_cast<std::size_t>(x - 1)]; };
    if (!agree_at(h)) {
      ++h;
      continue;
    }
    std::int64_t s = h;
    while (h <= out.q && agree_at(h)) ++h;
    runs.push_back({s, h - 1});
  }
  std::stable_sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& J : runs)
    if (heavy(1, J.first - 1) && heavy(J.last + 1, out.q))
      return finish({1, J.first - 1}, J, {J.last + 1, out.q});
  for (std::int64_t h = 0; h <= out.q; ++h)
    if (heavy(1, h) && heavy(h + 1, out.q)) return finish({1, h}, {h + 1, h}, {h + 1, out.q});
  throw DecompositionNotFound("no decomposition I1, J1, I2 exists for this family (sum dbar = " + to_string(out.sum_dbar) + ")");
}

CtexFamily ctex_generate(const Origami& o, const AlphaValue& alpha, int n) {
  auto commuting = commuting_squares(o);
  if (commuting.empty())
    throw PreconditionError("no-fixed-letter", "no square t with tau sigma t = sigma tau t on " + o.describe());
  auto states = sturmian_run(alpha, n);
  const SturmianState& st = states.back();
  if (st.w_len < 4) throw PreconditionError("degenerate", "|w_n| = " + std::to_string(st.w_len) + " is below 4; take n larger");
  if (st.w.empty()) throw PreconditionError("too-long", "induction level too deep to materialize words");

  CtexFamily fam;
  fam.n = n;
  fam.w = st.w;
  fam.u = st.w + st.M + st.P;
  fam.u_prime = st.w + st.P + st.M;
  const char last = st.w.back();
  const Permutation& last_step = last == 'l' ? o.step_l() : o.step_r();
  Permutation reach = cocycle_permutation(o, std::string_view(st.w).substr(0, st.w.size() - 1));
  for (int t : commuting) {
    int s = last_step.inverse()(t);
    fam.fixed_letters.push_back(s);
    int start = reach.inverse()(s);
    fam.v.push_back(lift(o, fam.u, start));
    fam.vp.push_back(lift(o, fam.u_prime, start));
  }
  for (std::size_t i = 0; i < fam.v.size(); ++i) fam.sum_dbar += dbar(fam.v[i], fam.vp[i]);
  try {
    decompose_neighbors(fam.v, fam.vp, Rational(1) + fam.sum_dbar, &o);
  } catch (const DecompositionNotFound&) {
    fam.decomposition_fails = true;
  }
  return fam;
}

}  // namespace stiet
