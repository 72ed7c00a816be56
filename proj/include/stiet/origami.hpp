#pragma once

// Square-tiled surfaces given by a pair of permutations of {1, ..., d}.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stiet {

/// Permutation of {1, ..., d}, stored as a 1-indexed image table.
class Permutation {
 public:
  Permutation() = default;
  /// images[k] is the image of k + 1; throws unless bijective onto {1..d}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int d);
  /// "2,1,3"
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::vector<std::vector<int>> cycles() const;
  std::vector<int> cycle_lengths() const;
  std::string to_string() const;

  /// (a * b)(i) = a(b(i)): b is applied first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> img_;
};

struct SingularityData {
  std::vector<std::vector<int>> orbits;  // commutator orbits
  std::vector<int> lengths;              // k_j
  int genus = 1;
  std::string stratum;                   // "H(2)", "H(1,1)", "H(0)" for tori
  /// Cone angle of orbit j is 2 k_j pi.
  std::vector<std::string> cone_angles() const;
};

/// tau glues squares horizontally (right neighbour of i is tau(i)), sigma
/// vertically (top neighbour of i is sigma(i)).
///
/// The interval exchange moves square i to sigma(i) when the base point stays
/// in [0, 1 - alpha) and to tau(i) when it wraps, so p_l = sigma^-1 and
/// p_r = tau^-1.
class Origami {
 public:
  Origami(Permutation tau, Permutation sigma, std::string name = {});
  /// "3;tau=2,1,3;sigma=3,2,1" or a registry key.
  static Origami parse(std::string_view text);
  static Origami registry(std::string_view key);
  static std::vector<std::string> registry_keys();

  int d() const { return tau_.size(); }
  const Permutation& tau() const { return tau_; }
  const Permutation& sigma() const { return sigma_; }
  Permutation p_l() const { return sigma_.inverse(); }
  Permutation p_r() const { return tau_.inverse(); }
  /// Square reached after a letter with side l (resp. r).
  const Permutation& step_l() const { return sigma_; }
  const Permutation& step_r() const { return tau_; }
  const std::string& name() const { return name_; }
  std::string describe() const;

 private:
  Permutation tau_;
  Permutation sigma_;
  std::string name_;
};

bool is_connected(const Origami& o);
/// Commutator orbits, cone angles, genus and stratum; throws unless connected.
SingularityData singularities(const Origami& o);
bool is_torus_cover(const Origami& o);
/// No strict nonempty subset of squares invariant under both p_l and p_r.
bool minimality_witness(const Origami& o);

/// All origamis on d squares (every ordered pair of permutations).
std::vector<Origami> enumerate_origamis(int d);

}  // namespace stiet
