#include "stiet/origami.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include "stiet/errors.hpp"

namespace stiet {

namespace {

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw PreconditionError("parse-error", "bad integer '" + std::string(s) + "' in " + what);
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size() + 1, false);
  for (int v : img_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)])
      throw PreconditionError("not-a-permutation", "image table " + to_string() + " is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> img(static_cast<std::size_t>(d));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> img;
  for (auto tok : split(trim(text), ',')) img.push_back(parse_int(trim(tok), "permutation"));
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(img_.size() + 1, false);
  for (int i = 1; i <= size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> Permutation::cycle_lengths() const {
  std::vector<int> out;
  for (const auto& c : cycles()) out.push_back(static_cast<int>(c.size()));
  return out;
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < img_.size(); ++k) out += (k ? "," : "") + std::to_string(img_[k]);
  return out + ")";
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw PreconditionError("size-mismatch", "permutations of different sizes");
  std::vector<int> img(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) img[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(img));
}

std::vector<std::string> SingularityData::cone_angles() const {
  std::vector<std::string> out;
  for (int k : lengths) out.push_back(std::to_string(2 * k) + "π");
  return out;
}

Origami::Origami(Permutation tau, Permutation sigma, std::string name)
    : tau_(std::move(tau)), sigma_(std::move(sigma)), name_(std::move(name)) {
  if (tau_.size() < 1) throw PreconditionError("bad-origami", "an origami needs at least one square");
  if (tau_.size() != sigma_.size()) throw PreconditionError("bad-origami", "tau and sigma act on different sets");
}

Origami Origami::parse(std::string_view text) {
  text = trim(text);
  if (text.find(';') == std::string_view::npos) return registry(text);
  auto parts = split(text, ';');
  if (parts.size() != 3) throw PreconditionError("parse-error", "expected 'd;tau=...;sigma=...'");
  int d = parse_int(trim(parts[0]), "square count");
  std::optional<Permutation> tau, sigma;
  for (std::size_t k = 1; k < 3; ++k) {
    auto p = trim(parts[k]);
    auto eq = p.find('=');
    if (eq == std::string_view::npos) throw PreconditionError("parse-error", "expected 'name=images'");
    auto key = trim(p.substr(0, eq));
    auto perm = Permutation::parse(p.substr(eq + 1));
    if (key == "tau") tau = perm;
    else if (key == "sigma") sigma = perm;
    else throw PreconditionError("parse-error", "unknown permutation '" + std::string(key) + "'");
  }
  if (!tau || !sigma) throw PreconditionError("parse-error", "both tau and sigma are required");
  if (tau->size() != d || sigma->size() != d)
    throw PreconditionError("bad-origami", "permutation size differs from d = " + std::to_string(d));
  return Origami(*tau, *sigma);
}

Origami Origami::registry(std::string_view key) {
  if (key == "fig1") return Origami(Permutation({2, 1, 3}), Permutation({3, 2, 1}), "fig1");
  // Given as p_r^-1 = (2,1,3), p_l^-1 = (3,1,2).
  if (key == "fig2") return Origami(Permutation({2, 1, 3}), Permutation({3, 1, 2}), "fig2");
  if (key == "d4-cycle") return Origami(Permutation({2, 3, 4, 1}), Permutation({2, 1, 3, 4}), "d4-cycle");
  if (key == "torus-d1") return Origami(Permutation({1}), Permutation({1}), "torus-d1");
  throw PreconditionError("unknown-surface", "unknown registry key '" + std::string(key) + "'");
}

std::vector<std::string> Origami::registry_keys() { return {"fig1", "fig2", "d4-cycle", "torus-d1"}; }

std::string Origami::describe() const {
  auto images = [](const Permutation& p) {
    std::string s = p.to_string();
    return s.substr(1, s.size() - 2);
  };
  return std::to_string(d()) + ";tau=" + images(tau_) + ";sigma=" + images(sigma_);
}

namespace {

bool transitive(const Permutation& a, const Permutation& b) {
  int d = a.size();
  std::vector<bool> seen(static_cast<std::size_t>(d) + 1, false);
  std::vector<int> stack{1};
  seen[1] = true;
  int count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j : {a(i), b(i)}) {
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == d;
}

}  // namespace

bool is_connected(const Origami& o) { return transitive(o.tau(), o.sigma()); }

SingularityData singularities(const Origami& o) {
  if (!is_connected(o)) throw PreconditionError("not-connected", "origami " + o.describe() + " is not connected");
  // Cycle type of the commutator does not depend on the ordering convention.
  Permutation comm = o.tau() * o.sigma() * o.tau().inverse() * o.sigma().inverse();
  SingularityData s;
  s.orbits = comm.cycles();
  s.lengths = comm.cycle_lengths();
  int vertices = static_cast<int>(s.orbits.size());
  s.genus = (o.d() - vertices + 2) / 2;
  std::vector<int> orders;
  for (int k : s.lengths)
    if (k > 1) orders.push_back(k - 1);
  std::sort(orders.rbegin(), orders.rend());
  s.stratum = "H(";
  if (orders.empty()) s.stratum += "0";
  for (std::size_t k = 0; k < orders.size(); ++k) s.stratum += (k ? "," : "") + std::to_string(orders[k]);
  s.stratum += ")";
  return s;
}

bool is_torus_cover(const Origami& o) { return o.tau() * o.sigma() == o.sigma() * o.tau(); }

bool minimality_witness(const Origami& o) { return transitive(o.p_l(), o.p_r()); }

std::vector<Origami> enumerate_origamis(int d) {
  std::vector<int> base(static_cast<std::size_t>(d));
  std::iota(base.begin(), base.end(), 1);
  std::vector<Permutation> perms;
  do {
    perms.emplace_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  std::vector<Origami> out;
  for (const auto& t : perms)
    for (const auto& s : perms) out.emplace_back(t, s);
  return out;
}

}  // namespace stiet
