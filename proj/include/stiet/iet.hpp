#pragma once

// Exact interval exchanges on [0, length) whose breakpoints and translations
// are affine in alpha, plus the skew-product view of square-tiled exchanges.

#include <cstdint>
#include <vector>

#include "stiet/numeric.hpp"
#include "stiet/origami.hpp"

namespace stiet {

class IntervalMap {
 public:
  /// Pieces [breaks[k], breaks[k+1]) translate by shifts[k]. Validates that
  /// breaks increase from 0 to `length` and that the images tile [0, length).
  IntervalMap(AlphaValue alpha, Rational length, std::vector<AlphaAffine> breaks,
              std::vector<AlphaAffine> shifts);

  static IntervalMap identity(AlphaValue alpha, Rational length);
  /// The 2d-interval exchange of an origami: Delta_{2i-1} = [i-1, i-alpha)
  /// moves to square sigma(i), Delta_{2i} = [i-alpha, i) to square tau(i).
  static IntervalMap from_origami(const Origami& o, const AlphaValue& alpha);

  const AlphaValue& alpha() const { return alpha_; }
  const Rational& length() const { return length_; }
  std::size_t pieces() const { return shifts_.size(); }
  const std::vector<AlphaAffine>& breakpoints() const { return breaks_; }
  const std::vector<AlphaAffine>& shifts() const { return shifts_; }

  /// Index of the piece containing p; throws unless 0 <= p < length.
  std::size_t locate(const AlphaAffine& p) const;
  AlphaAffine apply(const AlphaAffine& p) const;
  IntervalMap inverse() const;
  /// (*this)(first(x)).
  IntervalMap compose(const IntervalMap& first) const;
  /// q-fold iterate; negative q iterates the inverse.
  IntervalMap power(std::int64_t q) const;

  /// Lebesgue measure of T([a0, a1)) intersected with [b0, b1).
  AlphaAffine image_overlap(const AlphaAffine& a0, const AlphaAffine& a1, const AlphaAffine& b0,
                            const AlphaAffine& b1) const;

  friend bool operator==(const IntervalMap& x, const IntervalMap& y) {
    return x.length_ == y.length_ && x.breaks_ == y.breaks_ && x.shifts_ == y.shifts_;
  }

 private:
  IntervalMap(AlphaValue alpha, Rational length) : alpha_(std::move(alpha)), length_(std::move(length)) {}
  void merge_equal_neighbours();
  void validate() const;

  AlphaValue alpha_;
  Rational length_;
  std::vector<AlphaAffine> breaks_;
  std::vector<AlphaAffine> shifts_;
};

/// Endpoints of the natural atom Delta_atom, atom in 1..2d.
std::pair<AlphaAffine, AlphaAffine> natural_atom(int d, int atom);
AlphaAffine atom_measure(int atom);

/// mu(Delta_atom symdiff T_q Delta_atom) with mu = Lebesgue / d.
AlphaAffine symdiff_measure(const IntervalMap& tq, int d, int atom);

/// The point (x, i) = i - 1 + x with 0 <= x < 1.
struct SkewPoint {
  AlphaAffine x;
  int square = 1;

  AlphaAffine flat() const { return x + AlphaAffine::constant(square - 1); }
  static SkewPoint from_flat(const AlphaAffine& p, const AlphaValue& alpha);
  friend bool operator==(const SkewPoint&, const SkewPoint&) = default;
};

/// (x + alpha, sigma(i)) if x < 1 - alpha, else (x + alpha - 1, tau(i)).
SkewPoint skew_apply(const Origami& o, const AlphaValue& alpha, const SkewPoint& s);

/// Exact atom statistics of T^q computed on the base circle in O(|q| d) time,
/// without building T^q. Atoms are indexed 1..2d as in natural_atom.
struct SkewDefects {
  std::int64_t q = 0;
  std::vector<AlphaAffine> overlap;  // Lebesgue mu(Delta_a cap T^q Delta_a), index a-1
  std::vector<AlphaAffine> defect;   // 2 (|Delta_a| - overlap) / d, index a-1
};
SkewDefects skew_power_defects(const Origami& o, const FixedRotation& rotation, std::int64_t q);

/// Successor of each point in the circular order of frac(j beta), 0 <= j < n,
/// for irrational beta; result[j] is the index of the next point clockwise.
/// `less(i, j)` must compare frac(i beta) with frac(j beta).
template <class Less>
std::vector<std::int64_t> circle_successors(std::int64_t n, Less less) {
  std::vector<std::int64_t> next(static_cast<std::size_t>(n), 0);
  if (n < 2) return next;
  std::int64_t a = 1, b = 1;
  for (std::int64_t j = 2; j < n; ++j) {
    if (less(j, a)) a = j;
    if (less(b, j)) b = j;
  }
  for (std::int64_t j = 0; j < n; ++j) {
    if (j + a <= n - 1) next[static_cast<std::size_t>(j)] = j + a;
    else if (j >= b) next[static_cast<std::size_t>(j)] = j - b;
    else next[static_cast<std::size_t>(j)] = j + a - b;
  }
  return next;
}

}  // namespace stiet
