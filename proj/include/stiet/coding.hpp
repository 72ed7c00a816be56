#pragma once

// Symbolic codings of square-tiled exchanges: letters i_l / i_r, the
// projection phi onto {l, r}, homologous words, the self-dual Sturmian
// induction and the neighbour-decomposition checker.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stiet/errors.hpp"
#include "stiet/iet.hpp"
#include "stiet/numeric.hpp"
#include "stiet/origami.hpp"

namespace stiet {

enum class Side : std::uint8_t { l, r };

/// i_l codes Delta_{2i-1}, i_r codes Delta_{2i}.
struct Letter {
  int square = 1;
  Side side = Side::l;

  int atom() const { return 2 * square - (side == Side::l ? 1 : 0); }
  std::string to_string() const { return std::to_string(square) + (side == Side::l ? "l" : "r"); }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using SymbolicWord = std::vector<Letter>;

/// "1l.3l.2r"
std::string serialize(const SymbolicWord& w);
SymbolicWord parse_word(std::string_view text);

/// Projection i_l -> l, i_r -> r.
std::string phi(const SymbolicWord& w);

/// The unique word with phi-image `lr` whose first letter sits on square
/// `start`; squares advance by sigma after l and by tau after r.
SymbolicWord lift(const Origami& o, std::string_view lr, int start);

/// Natural coding of n steps from `start`; start.x must be c + k alpha with
/// integer k.
SymbolicWord trajectory(const Origami& o, const FixedRotation& rotation, const SkewPoint& start, std::size_t n);

/// Letters that may follow `a` in the language (alpha < 1/2 or alpha > 1/2).
std::vector<Letter> successors(const Origami& o, const Letter& a, bool alpha_below_half);
/// Every 2-letter factor of w is allowed by `successors`.
bool respects_successors(const Origami& o, const SymbolicWord& w, bool alpha_below_half);

/// The d words sharing phi(w), ordered by first square; throws unless w
/// passes the successor check.
std::vector<SymbolicWord> homologous(const Origami& o, const SymbolicWord& w, bool alpha_below_half);

/// Permutation of squares effected by reading an {l, r}-word.
Permutation cocycle_permutation(const Origami& o, std::string_view lr);

struct SturmianState {
  int n = 1;
  AlphaAffine l, r;  // l_n, r_n
  std::string w, M, P;
  std::int64_t w_len = 0, M_len = 0, P_len = 0;
  bool l_greater = false;  // l_n > r_n
  int string_index = 1;    // k-th run of equal regime; odd k means r_n > l_n
  int string_position = 1;
};

/// States 1..N of the self-dual induction. For alpha > 1/2 the induction runs
/// on 1 - alpha with l and r exchanged throughout. Words are kept while
/// their length stays below `word_cap` letters; lengths are always exact.
std::vector<SturmianState> sturmian_run(const AlphaValue& alpha, int N, std::int64_t word_cap = std::int64_t{1} << 26);

/// Partial quotients in the induction convention: alpha = [0; a_1 + 1, a_2, ...]
/// (after mirroring when alpha > 1/2).
std::vector<Integer> induction_quotients(const AlphaValue& alpha, std::size_t count);

template <class Seq>
Rational dbar(const Seq& a, const Seq& b) {
  if (a.size() != b.size() || a.empty())
    throw PreconditionError("length-mismatch", "dbar needs two nonempty words of equal length");
  long mismatches = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) ++mismatches;
  Rational out(mismatches, static_cast<long>(a.size()));
  out.canonicalize();
  return out;
}

/// 1-based closed integer interval; empty when first > last.
struct IntegerInterval {
  std::int64_t first = 1, last = 0;
  bool empty() const { return first > last; }
  std::int64_t size() const { return empty() ? 0 : last - first + 1; }
  friend bool operator==(const IntegerInterval&, const IntegerInterval&) = default;
};

struct NeighborDecomposition {
  IntegerInterval I1, J1, I2;
  std::int64_t q = 0;
  int e = 0;
  Rational sum_dbar;
  bool j1_bound_holds = false;  // #J1 >= (1 - sum dbar) q
  int u_agreement_runs = 0;     // maximal runs where phi-images agree
  // Hypothesis on e, read with "=" (used) and with the printed inequality.
  std::optional<bool> e_condition_corrected;
  std::optional<bool> e_condition_printed;
};

class DecompositionNotFound : public Error {
 public:
  explicit DecompositionNotFound(const std::string& what) : Error("decomposition-not-found", what) {}
};

/// Squares t with tau sigma t = sigma tau t.
std::vector<int> commuting_squares(const Origami& o);

NeighborDecomposition decompose_neighbors(const std::vector<SymbolicWord>& v, const std::vector<SymbolicWord>& vp,
                                          const Rational& C, const Origami* o = nullptr);

struct CtexFamily {
  int n = 0;
  std::string w, u, u_prime;
  std::vector<int> fixed_letters;  // squares s at position |w_n|
  std::vector<SymbolicWord> v, vp;
  Rational sum_dbar;
  bool decomposition_fails = false;
};

/// Pairs with phi-images w_n M_n P_n and w_n P_n M_n that differ in exactly two
/// places yet admit no single-block decomposition.
CtexFamily ctex_generate(const Origami& o, const AlphaValue& alpha, int n);

}  // namespace stiet
