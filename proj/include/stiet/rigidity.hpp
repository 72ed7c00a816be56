#pragma once

// Rigidity times from the self-dual induction, exact defect scans over q,
// and the correspondence with the suspension flow of constant roof.

#include <cstdint>
#include <string>
#include <vector>

#include "stiet/coding.hpp"
#include "stiet/iet.hpp"
#include "stiet/numeric.hpp"
#include "stiet/origami.hpp"

namespace stiet {

struct CycleStructure {
  Permutation perm;
  std::vector<int> cycle_lengths;
  std::int64_t s = 1;  // lcm of the cycle lengths
};
CycleStructure cycle_structure(const Permutation& p);

struct RigidityTime {
  int k = 0;              // string index
  int b = 0;              // first induction state of the string
  Integer a;              // string length (partial quotient)
  char block = 'P';       // P for strings with l > r, M otherwise
  std::int64_t block_length = 0;
  CycleStructure cycles;
  std::int64_t time = 0;  // s * block_length
  Rational bound;         // 2/a + s/a + L/block_length
  bool certifying = false;
};

/// Candidate rigidity times for strings k = 1..strings (string 1 is skipped
/// when empty). L is the cylinder length in the bound.
std::vector<RigidityTime> rigidity_times(const Origami& o, const AlphaValue& alpha, int strings, int L = 1);

struct DefectRow {
  std::int64_t q = 0;
  std::vector<AlphaAffine> defect;  // per natural atom 1..2d, normalized
  AlphaAffine max_defect;
  AlphaAffine sum_defect;
  int argmax_atom = 1;
};

struct DefectReport {
  std::int64_t q_first = 0, q_last = 0;
  std::vector<DefectRow> rows;
  // running_min[k] = min over rows[1..k] with q >= 1 of max_defect (or 0 row).
  std::vector<AlphaAffine> running_min;
  AlphaAffine min_max_defect;
  std::int64_t argmin_q = 0;
};

/// Exact defects mu(Delta_i symdiff T^q Delta_i) for q_first <= q <= q_last,
/// fanned out over `jobs` workers and merged in q order.
DefectReport defect_scan(const Origami& o, const AlphaValue& alpha, std::int64_t q_first, std::int64_t q_last,
                         int jobs = 1);
DefectRow defect_row(const Origami& o, const FixedRotation& rotation, std::int64_t q);

std::string defect_csv(const DefectReport& r, const AlphaValue& alpha);

/// Forward map q -> rho q and inverse Q -> nearest integer to Q / rho.
std::vector<QuadraticNumber> flow_times(const std::vector<std::int64_t>& q, const QuadraticNumber& rho);
std::vector<Integer> nearest_integer_times(const std::vector<QuadraticNumber>& Q, const QuadraticNumber& rho);

}  // namespace stiet
