#include "stiet/rigidity.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

#include "stiet/errors.hpp"

namespace stiet {

CycleStructure cycle_structure(const Permutation& p) {
  CycleStructure c;
  c.perm = p;
  c.cycle_lengths = p.cycle_lengths();
  for (int k : c.cycle_lengths) c.s = std::lcm(c.s, static_cast<std::int64_t>(k));
  return c;
}

std::vector<RigidityTime> rigidity_times(const Origami& o, const AlphaValue& alpha, int strings, int L) {
  if (strings < 1) throw PreconditionError("bad-count", "need at least one string");
  if (L < 1) throw PreconditionError("bad-cylinder", "cylinder length must be positive");
  auto a = induction_quotients(alpha, static_cast<std::size_t>(strings));
  // String 1 spans states 1..a_1 - 1, string k >= 2 spans a_k states from
  // b_k = a_1 + ... + a_{k-1}.
  std::vector<std::int64_t> b(static_cast<std::size_t>(strings) + 1, 0);
  b[1] = 1;
  std::int64_t acc = 0;
  for (int k = 2; k <= strings; ++k) {
    acc += a[static_cast<std::size_t>(k - 2)].get_si();
    b[static_cast<std::size_t>(k)] = acc;
  }
  const int states_needed = static_cast<int>(b[static_cast<std::size_t>(strings)]);
  auto states = sturmian_run(alpha, std::max(states_needed, 1), 0);

  // Replay the induction on square permutations: reading P then M acts by
  // perm(M) o perm(P).
  const bool mirrored = !alpha.less_than_half();
  const char lch = mirrored ? 'r' : 'l';
  std::string p1{mirrored ? 'l' : 'r', lch};
  Permutation permM = cocycle_permutation(o, std::string(1, lch));
  Permutation permP = cocycle_permutation(o, p1);
  std::vector<Permutation> Ms, Ps;
  for (const auto& st : states) {
    Ms.push_back(permM);
    Ps.push_back(permP);
    // Mirrored states report the regime after exchanging l and r.
    bool l_greater = mirrored ? !st.l_greater : st.l_greater;
    if (l_greater) permM = permP * permM;
    else permP = permM * permP;
  }

  std::vector<RigidityTime> out;
  for (int k = 1; k <= strings; ++k) {
    RigidityTime t;
    t.k = k;
    t.a = k == 1 ? Integer(a[0] - 1) : a[static_cast<std::size_t>(k - 1)];
    if (t.a <= 0) continue;
    t.b = static_cast<int>(b[static_cast<std::size_t>(k)]);
    const auto& st = states[static_cast<std::size_t>(t.b - 1)];
    t.block = k % 2 == 0 ? 'P' : 'M';
    t.block_length = t.block == 'P' ? st.P_len : st.M_len;
    t.cycles = cycle_structure(t.block == 'P' ? Ps[static_cast<std::size_t>(t.b - 1)] : Ms[static_cast<std::size_t>(t.b - 1)]);
    t.time = t.cycles.s * t.block_length;
    Rational ar(t.a);
    t.bound = Rational(2) / ar + Rational(Integer(static_cast<long>(t.cycles.s))) / ar +
              Rational(L, 1) / Rational(Integer(static_cast<long>(t.block_length)));
    t.bound.canonicalize();
    t.certifying = t.bound < 1;
    out.push_back(std::move(t));
  }
  return out;
}

DefectRow defect_row(const Origami& o, const FixedRotation& rot, std::int64_t q) {
  auto sd = skew_power_defects(o, rot, q);
  DefectRow row;
  row.q = q;
  row.defect = std::move(sd.defect);
  row.max_defect = row.defect[0];
  for (std::size_t k = 0; k < row.defect.size(); ++k) {
    row.sum_defect += row.defect[k];
    if (compare(row.defect[k], row.max_defect, rot.alpha()) > 0) {
      row.max_defect = row.defect[k];
      row.argmax_atom = static_cast<int>(k) + 1;
    }
  }
  return row;
}

DefectReport defect_scan(const Origami& o, const AlphaValue& alpha, std::int64_t q_first, std::int64_t q_last,
                         int jobs) {
  if (q_last < q_first) throw PreconditionError("bad-range", "empty q range");
  FixedRotation rot(alpha);
  DefectReport rep;
  rep.q_first = q_first;
  rep.q_last = q_last;
  const std::size_t count = static_cast<std::size_t>(q_last - q_first + 1);
  rep.rows.resize(count);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  // Interleaved assignment balances the O(q) cost of each row.
  auto work = [&](int worker) {
    for (std::size_t k = static_cast<std::size_t>(worker); k < count; k += static_cast<std::size_t>(jobs))
      rep.rows[k] = defect_row(o, rot, q_first + static_cast<std::int64_t>(k));
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  bool have = false;
  for (const auto& row : rep.rows) {
    if (row.q != 0 && (!have || compare(row.max_defect, rep.min_max_defect, alpha) < 0)) {
      rep.min_max_defect = row.max_defect;
      rep.argmin_q = row.q;
      have = true;
    }
    rep.running_min.push_back(have ? rep.min_max_defect : AlphaAffine{});
  }
  return rep;
}

std::string defect_csv(const DefectReport& r, const AlphaValue& alpha) {
  std::ostringstream out;
  out << "q,atom,defect,exact\n";
  for (const auto& row : r.rows)
    for (std::size_t k = 0; k < row.defect.size(); ++k) {
      const AlphaAffine& v = row.defect[k];
      out << row.q << ',' << k + 1 << ',' << format_decimal(approx(v, alpha)) << ',' << to_string(v.c) << (v.k < 0 ? "" : "+")
          << to_string(v.k) << "*alpha\n";
    }
  return out.str();
}

std::vector<QuadraticNumber> flow_times(const std::vector<std::int64_t>& q, const QuadraticNumber& rho) {
  if (rho.sign() <= 0) throw PreconditionError("bad-roof", "roof function must be positive");
  std::vector<QuadraticNumber> out;
  out.reserve(q.size());
  for (auto v : q) out.push_back(QuadraticNumber(Rational(Integer(static_cast<long>(v)))) * rho);
  return out;
}

std::vector<Integer> nearest_integer_times(const std::vector<QuadraticNumber>& Q, const QuadraticNumber& rho) {
  if (rho.sign() <= 0) throw PreconditionError("bad-roof", "roof function must be positive");
  std::vector<Integer> out;
  out.reserve(Q.size());
  for (const auto& v : Q) out.push_back((v / rho + QuadraticNumber(Rational(1, 2))).floor());
  return out;
}

}  // namespace stiet
