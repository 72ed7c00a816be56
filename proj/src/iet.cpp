#include "stiet/iet.hpp"

#include <algorithm>
#include <array>

#include "stiet/errors.hpp"

namespace stiet {

namespace {

const AlphaAffine& max_of(const AlphaAffine& x, const AlphaAffine& y, const AlphaValue& a) {
  return compare(x, y, a) >= 0 ? x : y;
}
const AlphaAffine& min_of(const AlphaAffine& x, const AlphaAffine& y, const AlphaValue& a) {
  return compare(x, y, a) <= 0 ? x : y;
}

}  // namespace

IntervalMap::IntervalMap(AlphaValue alpha, Rational length, std::vector<AlphaAffine> breaks,
                         std::vector<AlphaAffine> shifts)
    : alpha_(std::move(alpha)), length_(std::move(length)), breaks_(std::move(breaks)), shifts_(std::move(shifts)) {
  validate();
  merge_equal_neighbours();
}

void IntervalMap::validate() const {
  if (breaks_.size() != shifts_.size() + 1 || shifts_.empty())
    throw PreconditionError("bad-iet", "need one more breakpoint than pieces");
  if (!(breaks_.front() == AlphaAffine::constant(0)) || !(breaks_.back() == AlphaAffine::constant(length_)))
    throw PreconditionError("bad-iet", "breakpoints must run from 0 to the total length");
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k)
    if (compare(breaks_[k], breaks_[k + 1], alpha_) >= 0)
      throw PreconditionError("bad-iet", "breakpoints must increase strictly");
  std::vector<std::pair<AlphaAffine, AlphaAffine>> images;
  images.reserve(shifts_.size());
  for (std::size_t k = 0; k < shifts_.size(); ++k)
    images.emplace_back(breaks_[k] + shifts_[k], breaks_[k + 1] + shifts_[k]);
  std::sort(images.begin(), images.end(),
            [&](const auto& x, const auto& y) { return compare(x.first, y.first, alpha_) < 0; });
  AlphaAffine cursor = AlphaAffine::constant(0);
  for (const auto& [lo, hi] : images) {
    if (!(lo == cursor)) throw PreconditionError("bad-iet", "image pieces do not tile the interval");
    cursor = hi;
  }
  if (!(cursor == AlphaAffine::constant(length_)))
    throw PreconditionError("bad-iet", "image pieces do not tile the interval");
}

void IntervalMap::merge_equal_neighbours() {
  std::vector<AlphaAffine> breaks{breaks_.front()};
  std::vector<AlphaAffine> shifts;
  for (std::size_t k = 0; k < shifts_.size(); ++k) {
    if (!shifts.empty() && shifts.back() == shifts_[k]) {
      breaks.back() = breaks_[k + 1];
      continue;
    }
    shifts.push_back(shifts_[k]);
    breaks.push_back(breaks_[k + 1]);
  }
  breaks_ = std::move(breaks);
  shifts_ = std::move(shifts);
}

IntervalMap IntervalMap::identity(AlphaValue alpha, Rational length) {
  AlphaAffine end = AlphaAffine::constant(length);
  return IntervalMap(std::move(alpha), std::move(length), {AlphaAffine::constant(0), end}, {AlphaAffine{}});
}

IntervalMap IntervalMap::from_origami(const Origami& o, const AlphaValue& alpha) {
  std::vector<AlphaAffine> breaks{AlphaAffine::constant(0)};
  std::vector<AlphaAffine> shifts;
  for (int i = 1; i <= o.d(); ++i) {
    breaks.emplace_back(i, -1);
    breaks.push_back(AlphaAffine::constant(i));
    shifts.emplace_back(o.step_l()(i) - i, 1);
    shifts.emplace_back(o.step_r()(i) - i - 1, 1);
  }
  IntervalMap t(alpha, o.d());
  t.breaks_ = std::move(breaks);
  t.shifts_ = std::move(shifts);
  t.validate();  // no merging: the 2d natural atoms stay visible
  return t;
}

std::size_t IntervalMap::locate(const AlphaAffine& p) const {
  if (sign(p, alpha_) < 0 || compare(p, AlphaAffine::constant(length_), alpha_) >= 0)
    throw PreconditionError("out-of-domain", "point " + render(p, alpha_) + " is outside [0, " + to_string(length_) + ")");
  // First breakpoint strictly greater than p, minus one.
  auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, p,
                             [&](const AlphaAffine& x, const AlphaAffine& b) { return compare(x, b, alpha_) < 0; });
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

AlphaAffine IntervalMap::apply(const AlphaAffine& p) const { return p + shifts_[locate(p)]; }

IntervalMap IntervalMap::inverse() const {
  std::vector<std::pair<AlphaAffine, std::size_t>> order;
  for (std::size_t k = 0; k < shifts_.size(); ++k) order.emplace_back(breaks_[k] + shifts_[k], k);
  std::sort(order.begin(), order.end(),
            [&](const auto& x, const auto& y) { return compare(x.first, y.first, alpha_) < 0; });
  IntervalMap inv(alpha_, length_);
  inv.breaks_.push_back(AlphaAffine::constant(0));
  for (const auto& [start, k] : order) {
    inv.breaks_.push_back(breaks_[k + 1] + shifts_[k]);
    inv.shifts_.push_back(-shifts_[k]);
  }
  inv.breaks_.back() = AlphaAffine::constant(length_);
  inv.validate();
  inv.merge_equal_neighbours();
  return inv;
}

IntervalMap IntervalMap::compose(const IntervalMap& first) const {
  IntervalMap out(alpha_, length_);
  out.breaks_.push_back(AlphaAffine::constant(0));
  for (std::size_t k = 0; k < first.pieces(); ++k) {
    const AlphaAffine& u = first.shifts_[k];
    const AlphaAffine& end = first.breaks_[k + 1];
    std::size_t p = locate(first.breaks_[k] + u);
    for (;;) {
      AlphaAffine pulled = breaks_[p + 1] - u;
      out.shifts_.push_back(u + shifts_[p]);
      if (compare(pulled, end, alpha_) < 0) {
        out.breaks_.push_back(pulled);
        ++p;
      } else {
        out.breaks_.push_back(end);
        break;
      }
    }
  }
  out.validate();
  out.merge_equal_neighbours();
  return out;
}

IntervalMap IntervalMap::power(std::int64_t q) const {
  if (q < 0) return inverse().power(-q);
  IntervalMap result = identity(alpha_, length_);
  IntervalMap base = *this;
  bool first = true;
  while (q > 0) {
    if (q & 1) {
      result = first ? base : base.compose(result);
      first = false;
    }
    q >>= 1;
    if (q > 0) base = base.compose(base);
  }
  return result;
}

AlphaAffine IntervalMap::image_overlap(const AlphaAffine& a0, const AlphaAffine& a1, const AlphaAffine& b0,
                                       const AlphaAffine& b1) const {
  AlphaAffine total;
  for (std::size_t k = 0; k < pieces(); ++k) {
    const AlphaAffine& lo = max_of(a0, breaks_[k], alpha_);
    const AlphaAffine& hi = min_of(a1, breaks_[k + 1], alpha_);
    if (compare(lo, hi, alpha_) >= 0) continue;
    AlphaAffine ilo = lo + shifts_[k], ihi = hi + shifts_[k];
    AlphaAffine width = min_of(ihi, b1, alpha_) - max_of(ilo, b0, alpha_);
    if (sign(width, alpha_) > 0) total += width;
  }
  return total;
}

std::pair<AlphaAffine, AlphaAffine> natural_atom(int d, int atom) {
  if (atom < 1 || atom > 2 * d) throw PreconditionError("bad-atom", "atom index must lie in 1.." + std::to_string(2 * d));
  int i = (atom + 1) / 2;
  if (atom % 2 == 1) return {AlphaAffine::constant(i - 1), AlphaAffine(i, -1)};
  return {AlphaAffine(i, -1), AlphaAffine::constant(i)};
}

AlphaAffine atom_measure(int atom) { return atom % 2 == 1 ? AlphaAffine(1, -1) : AlphaAffine(0, 1); }

AlphaAffine symdiff_measure(const IntervalMap& tq, int d, int atom) {
  auto [a0, a1] = natural_atom(d, atom);
  AlphaAffine overlap = tq.image_overlap(a0, a1, a0, a1);
  return Rational(2, d) * (a1 - a0 - overlap);
}

SkewPoint SkewPoint::from_flat(const AlphaAffine& p, const AlphaValue& alpha) {
  Integer n = floor(p, alpha);
  return {p - AlphaAffine::constant(Rational(n)), static_cast<int>(n.get_si()) + 1};
}

SkewPoint skew_apply(const Origami& o, const AlphaValue& alpha, const SkewPoint& s) {
  if (s.square < 1 || s.square > o.d() || sign(s.x, alpha) < 0 || compare(s.x, AlphaAffine::constant(1), alpha) >= 0)
    throw PreconditionError("out-of-domain", "skew point outside [0,1) x {1.." + std::to_string(o.d()) + "}");
  AlphaAffine moved = s.x + AlphaAffine::alpha();
  if (compare(moved, AlphaAffine::constant(1), alpha) < 0) return {moved, o.step_l()(s.square)};
  return {moved - AlphaAffine::constant(1), o.step_r()(s.square)};
}

SkewDefects skew_power_defects(const Origami& o, const FixedRotation& rot, std::int64_t q) {
  const int d = o.d();
  SkewDefects out;
  out.q = q;
  out.overlap.resize(static_cast<std::size_t>(2 * d));
  out.defect.resize(static_cast<std::size_t>(2 * d));
  if (q < 0) q = -q;  // mu(A symdiff T^-q A) = mu(T^q A symdiff A)
  if (q == 0) {
    for (int a = 1; a <= 2 * d; ++a) out.overlap[static_cast<std::size_t>(a - 1)] = atom_measure(a);
    return out;
  }

  // On the circle, T^q restricted to a fibre is constant between the cut
  // points y_j = frac(-j alpha), 0 <= j <= q + 1. Arc [y_j, next) is
  // evaluated at its left end, where the orbit hits 0 at time j.
  const std::int64_t n = q + 2;
  auto next = circle_successors(n, [&](std::int64_t i, std::int64_t j) { return rot.compare_multiples(-i, -j) < 0; });
  std::int64_t a = next[0];  // the point just after 0
  std::int64_t b = 0;
  for (std::int64_t j = 0; j < n; ++j)
    if (next[static_cast<std::size_t>(j)] == 0) b = j;
  // Three gap lengths: frac(-a alpha), frac(b alpha) and their sum.
  AlphaAffine gap_a(rot.floor_multiple(a) + 1, -a);
  AlphaAffine gap_b(-rot.floor_multiple(b), b);
  AlphaAffine gaps[3] = {gap_a, gap_b, gap_a + gap_b};
  auto gap_kind = [&](std::int64_t j) {
    std::int64_t nx = next[static_cast<std::size_t>(j)];
    return nx == j + a ? 0 : nx == j - b ? 1 : 2;
  };

  const Permutation& sig = o.step_l();
  const Permutation& tau = o.step_r();
  std::vector<int> left(static_cast<std::size_t>(d)), right(static_cast<std::size_t>(d));
  std::vector<int> left_inv(static_cast<std::size_t>(d)), right_inv(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    left[static_cast<std::size_t>(i)] = sig(i + 1) - 1;
    right[static_cast<std::size_t>(i)] = tau(i + 1) - 1;
  }
  for (int i = 0; i < d; ++i) {
    left_inv[static_cast<std::size_t>(left[static_cast<std::size_t>(i)])] = i;
    right_inv[static_cast<std::size_t>(right[static_cast<std::size_t>(i)])] = i;
  }
  auto step_of = [&](std::int64_t k) -> const std::vector<int>& { return rot.is_left_multiple(k) ? left : right; };
  auto step_inv_of = [&](std::int64_t k) -> const std::vector<int>& {
    return rot.is_left_multiple(k) ? left_inv : right_inv;
  };

  // B_j = phi(y_1) o ... o phi(y_j), built forward up to j = q + 1.
  std::vector<int> back(static_cast<std::size_t>(d)), tmp(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) back[static_cast<std::size_t>(i)] = i;
  for (std::int64_t j = 1; j <= q + 1; ++j) {
    const auto& s = step_of(-j);
    for (int i = 0; i < d; ++i) tmp[static_cast<std::size_t>(i)] = back[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    back.swap(tmp);
  }
  // F_m = phi(frac((m-1) alpha)) o ... o phi(0).
  std::vector<int> fwd(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) fwd[static_cast<std::size_t>(i)] = i;

  // counts[atom][gap kind]
  std::vector<std::array<std::int64_t, 3>> counts(static_cast<std::size_t>(2 * d), {0, 0, 0});
  for (std::int64_t j = q + 1; j >= 0; --j) {
    bool start_left = rot.is_left_multiple(-j);
    bool end_left = rot.is_left_multiple(q - j);
    if (start_left == end_left) {
      int kind = gap_kind(j);
      for (int i = 0; i < d; ++i) {
        int image = back[static_cast<std::size_t>(i)];
        // j = q + 1 ends one step past the origin: undo phi(y_1) = tau.
        image = j == q + 1 ? right_inv[static_cast<std::size_t>(image)] : fwd[static_cast<std::size_t>(image)];
        if (image == i) ++counts[static_cast<std::size_t>(2 * i + (start_left ? 0 : 1))][static_cast<std::size_t>(kind)];
      }
    }
    if (j == 0) break;
    // B_{j-1} = B_j o phi(y_j)^-1
    const auto& si = step_inv_of(-j);
    for (int i = 0; i < d; ++i) tmp[static_cast<std::size_t>(i)] = back[static_cast<std::size_t>(si[static_cast<std::size_t>(i)])];
    back.swap(tmp);
    // Advance F_m to F_{m+1} with m = q - j once j <= q.
    if (j <= q) {
      const auto& s = step_of(q - j);
      for (int i = 0; i < d; ++i) tmp[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(fwd[static_cast<std::size_t>(i)])];
      fwd.swap(tmp);
    }
  }

  for (int atom = 1; atom <= 2 * d; ++atom) {
    const auto& c = counts[static_cast<std::size_t>(atom - 1)];
    AlphaAffine ov;
    for (int k = 0; k < 3; ++k) ov += Rational(Integer(static_cast<long>(c[static_cast<std::size_t>(k)]))) * gaps[k];
    out.overlap[static_cast<std::size_t>(atom - 1)] = ov;
    out.defect[static_cast<std::size_t>(atom - 1)] = Rational(2, d) * (atom_measure(atom) - ov);
  }
  return out;
}

}  // namespace stiet
