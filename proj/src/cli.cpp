#include "stiet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "stiet/coding.hpp"
#include "stiet/errors.hpp"
#include "stiet/iet.hpp"
#include "stiet/origami.hpp"
#include "stiet/polygon.hpp"
#include "stiet/rigidity.hpp"

namespace stiet {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string surface;
  std::string alpha = "quad:sqrt2-1";
  std::int64_t Q = 1;
  std::int64_t Q_first = 0;
  int N = 4;
  int L = 1;
  std::string C = "1";
  std::string regimes;
  unsigned precision_bits = AlphaValue::kDefaultMaxBits;
  int jobs = 1;
  std::string format = "json";
  std::string out_path;
  // command specific
  std::string word, v, vp, window;
  std::string start = "0,1";
  int d = 4;
  std::string y, theta, theta_n;
  std::string l_n = "1", p_n = "1", q_n = "1";
  int a = 2;
};

json exact_json(const AlphaAffine& x, const AlphaValue& alpha) {
  return json{{"exact", render(x, alpha)}, {"c", to_string(x.c)}, {"k", to_string(x.k)}, {"approx", approx(x, alpha)}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::int64_t> parse_regimes(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw PreconditionError("bad-regimes", "regime string must be nonnegative integers m1,q1,m2,...: " + s);
    }
  }
  return out;
}

Integer parse_integer(const std::string& s, const char* what) {
  Integer z;
  if (z.set_str(s, 10) != 0) throw PreconditionError("bad-integer", std::string(what) + " is not an integer: " + s);
  return z;
}

AlphaValue load_alpha(const Config& c) { return AlphaValue::parse(c.alpha).with_max_bits(c.precision_bits); }
Origami load_surface(const Config& c) {
  if (c.surface.empty()) throw PreconditionError("missing-surface", "a surface string or registry key is required");
  return Origami::parse(c.surface);
}

json word_list(const std::vector<SymbolicWord>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back(serialize(w));
  return arr;
}

json interval_json(const IntegerInterval& I) {
  if (I.empty()) return json::array();
  return json::array({I.first, I.last});
}

struct Output {
  std::string text;
};

Output emit_json(const char* schema, json body) {
  json doc;
  doc["schema"] = schema;
  for (auto& [k, v] : body.items()) doc[k] = v;
  return {doc.dump(2) + "\n"};
}

void require_format(const Config& c, bool csv_ok) {
  if (c.format != "json" && !(csv_ok && c.format == "csv"))
    throw PreconditionError("bad-format", "format '" + c.format + "' is not available for this command");
}

// ---------------------------------------------------------------------------

Output cmd_origami_info(const Config& c) {
  require_format(c, false);
  Origami o = load_surface(c);
  json body{{"surface", o.describe()}, {"d", o.d()}, {"tau", o.tau().to_string()}, {"sigma", o.sigma().to_string()}};
  bool connected = is_connected(o);
  body["connected"] = connected;
  if (connected) {
    SingularityData s = singularities(o);
    json orbits = json::array();
    for (const auto& orb : s.orbits) orbits.push_back(orb);
    body["commutator_orbits"] = orbits;
    body["orbit_lengths"] = s.lengths;
    body["cone_angles"] = s.cone_angles();
    body["genus"] = s.genus;
    body["stratum"] = s.stratum;
    body["torus_cover"] = is_torus_cover(o);
    body["minimality_witness"] = minimality_witness(o);
  }
  return emit_json("stiet.origami.info/1", body);
}

Output cmd_iet_power(const Config& c) {
  require_format(c, true);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  IntervalMap t = IntervalMap::from_origami(o, alpha).power(c.Q);
  if (c.format == "csv") {
    std::ostringstream out;
    out << "piece,left,left_exact,shift,shift_exact\n";
    for (std::size_t k = 0; k < t.pieces(); ++k) {
      const auto& b = t.breakpoints()[k];
      const auto& s = t.shifts()[k];
      out << k + 1 << ',' << format_decimal(approx(b, alpha)) << ',' << csv_escape(render(b, alpha)) << ','
          << format_decimal(approx(s, alpha)) << ',' << csv_escape(render(s, alpha)) << '\n';
    }
    return {out.str()};
  }
  json pieces = json::array();
  for (std::size_t k = 0; k < t.pieces(); ++k)
    pieces.push_back({{"left", exact_json(t.breakpoints()[k], alpha)}, {"shift", exact_json(t.shifts()[k], alpha)}});
  return emit_json("stiet.iet.power/1",
                   {{"surface", o.describe()}, {"alpha", alpha.describe()}, {"q", c.Q}, {"pieces", pieces.size()}, {"map", pieces}});
}

Output cmd_iet_defect(const Config& c) {
  require_format(c, true);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  FixedRotation rot(alpha);
  DefectRow row = defect_row(o, rot, c.Q);
  if (c.format == "csv") {
    DefectReport r;
    r.rows.push_back(row);
    return {defect_csv(r, alpha)};
  }
  json atoms = json::array();
  for (const auto& v : row.defect) atoms.push_back(exact_json(v, alpha));
  return emit_json("stiet.iet.defect/1", {{"surface", o.describe()},
                                          {"alpha", alpha.describe()},
                                          {"q", row.q},
                                          {"defects", atoms},
                                          {"max", exact_json(row.max_defect, alpha)},
                                          {"argmax_atom", row.argmax_atom},
                                          {"sum", exact_json(row.sum_defect, alpha)}});
}

Output cmd_coding_sturmian(const Config& c) {
  require_format(c, true);
  AlphaValue alpha = load_alpha(c);
  auto states = sturmian_run(alpha, c.N);
  if (c.format == "csv") {
    std::ostringstream out;
    out << "n,l,r,w_len,M_len,P_len,l_greater,string,w,M,P\n";
    for (const auto& s : states)
      out << s.n << ',' << format_decimal(approx(s.l, alpha)) << ',' << format_decimal(approx(s.r, alpha)) << ',' << s.w_len
          << ',' << s.M_len << ',' << s.P_len << ',' << (s.l_greater ? 1 : 0) << ',' << s.string_index << ',' << s.w << ','
          << s.M << ',' << s.P << '\n';
    return {out.str()};
  }
  json rows = json::array();
  for (const auto& s : states)
    rows.push_back({{"n", s.n},
                    {"l", exact_json(s.l, alpha)},
                    {"r", exact_json(s.r, alpha)},
                    {"w", s.w},
                    {"M", s.M},
                    {"P", s.P},
                    {"w_len", s.w_len},
                    {"M_len", s.M_len},
                    {"P_len", s.P_len},
                    {"l_greater", s.l_greater},
                    {"string_index", s.string_index},
                    {"string_position", s.string_position}});
  return emit_json("stiet.coding.sturmian/1", {{"alpha", alpha.describe()}, {"states", rows}});
}

Output cmd_coding_homologous(const Config& c) {
  require_format(c, false);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  SymbolicWord w = parse_word(c.word);
  auto set = homologous(o, w, alpha.less_than_half());
  return emit_json("stiet.coding.homologous/1",
                   {{"surface", o.describe()}, {"word", serialize(w)}, {"phi", phi(w)}, {"homologous", word_list(set)}});
}

std::vector<SymbolicWord> parse_family(const std::string& s) {
  std::vector<SymbolicWord> out;
  for (const auto& part : split(s, ';')) out.push_back(parse_word(part));
  return out;
}

SkewPoint parse_start(const Config& c, const AlphaValue& alpha, int d) {
  auto parts = split(c.start, ',');
  if (parts.size() != 2) throw PreconditionError("bad-start", "start point must be 'x,square' with rational x in [0,1)");
  SkewPoint p;
  p.x = AlphaAffine::constant(parse_rational(parts[0]));
  p.square = static_cast<int>(parse_integer(parts[1], "square").get_si());
  if (p.square < 1 || p.square > d || p.x.c < 0 || p.x.c >= 1)
    throw PreconditionError("bad-start", "start point outside [0,1) x {1..d}");
  (void)alpha;
  return p;
}

Output cmd_coding_lmr(const Config& c) {
  require_format(c, false);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  std::vector<SymbolicWord> v, vp;
  if (!c.window.empty()) {
    // Two windows of one trajectory; each family is the homologous set.
    auto pos = split(c.window, ',');
    if (pos.size() != 2) throw PreconditionError("bad-window", "window must be 'i,j' (0-based starts)");
    std::int64_t i = parse_integer(pos[0], "window").get_si(), j = parse_integer(pos[1], "window").get_si();
    if (i < 0 || j < 0 || c.N <= 0) throw PreconditionError("bad-window", "window starts must be >= 0 and N > 0");
    FixedRotation rot(alpha);
    auto traj = trajectory(o, rot, parse_start(c, alpha, o.d()), static_cast<std::size_t>(std::max(i, j) + c.N));
    SymbolicWord a(traj.begin() + i, traj.begin() + i + c.N), b(traj.begin() + j, traj.begin() + j + c.N);
    bool below = alpha.less_than_half();
    // Both families come ordered by first square, which pairs them.
    v = homologous(o, a, below);
    vp = homologous(o, b, below);
  } else {
    v = parse_family(c.v);
    vp = parse_family(c.vp);
  }
  NeighborDecomposition r = decompose_neighbors(v, vp, parse_rational(c.C), &o);
  json body{{"surface", o.describe()}, {"v", word_list(v)}, {"vp", word_list(vp)}, {"q", r.q}, {"e", r.e},
            {"sum_dbar", to_string(r.sum_dbar)}, {"I1", interval_json(r.I1)}, {"J1", interval_json(r.J1)},
            {"I2", interval_json(r.I2)}, {"j1_bound_holds", r.j1_bound_holds}, {"u_agreement_runs", r.u_agreement_runs}};
  if (r.e_condition_corrected) body["e_condition"] = {{"equality_reading", *r.e_condition_corrected},
                                                      {"printed_reading", *r.e_condition_printed}};
  return emit_json("stiet.coding.lmr/1", body);
}

Output cmd_coding_ctex(const Config& c) {
  require_format(c, false);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  CtexFamily f = ctex_generate(o, alpha, c.N);
  return emit_json("stiet.coding.ctex/1", {{"surface", o.describe()},
                                           {"alpha", alpha.describe()},
                                           {"n", f.n},
                                           {"w", f.w},
                                           {"u", f.u},
                                           {"u_prime", f.u_prime},
                                           {"fixed_letters", f.fixed_letters},
                                           {"v", word_list(f.v)},
                                           {"vp", word_list(f.vp)},
                                           {"sum_dbar", to_string(f.sum_dbar)},
                                           {"decomposition_fails", f.decomposition_fails}});
}

Output cmd_rigidity_times(const Config& c) {
  require_format(c, true);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  auto times = rigidity_times(o, alpha, c.N, c.L);
  FixedRotation rot(alpha);
  std::vector<DefectRow> rows;
  for (const auto& t : times) rows.push_back(defect_row(o, rot, t.time));
  if (c.format == "csv") {
    std::ostringstream out;
    out << "k,b,a,block,block_length,s,time,bound,max_defect,certifying\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto& t = times[i];
      out << t.k << ',' << t.b << ',' << t.a.get_str() << ',' << t.block << ',' << t.block_length << ',' << t.cycles.s << ','
          << t.time << ',' << format_decimal(t.bound.get_d()) << ',' << format_decimal(approx(rows[i].max_defect, alpha)) << ','
          << (t.certifying ? 1 : 0) << '\n';
    }
    return {out.str()};
  }
  json arr = json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& t = times[i];
    arr.push_back({{"k", t.k},
                   {"b", t.b},
                   {"a", t.a.get_str()},
                   {"block", std::string(1, t.block)},
                   {"block_length", t.block_length},
                   {"cycle_lengths", t.cycles.cycle_lengths},
                   {"s", t.cycles.s},
                   {"time", t.time},
                   {"bound", to_string(t.bound)},
                   {"max_defect", exact_json(rows[i].max_defect, alpha)},
                   {"bound_holds", approx(rows[i].max_defect, alpha) <= t.bound.get_d()},
                   {"certifying", t.certifying}});
  }
  return emit_json("stiet.rigidity.times/1", {{"surface", o.describe()}, {"alpha", alpha.describe()}, {"L", c.L}, {"strings", arr}});
}

Output cmd_rigidity_scan(const Config& c) {
  require_format(c, true);
  Origami o = load_surface(c);
  AlphaValue alpha = load_alpha(c);
  DefectReport r = defect_scan(o, alpha, c.Q_first, c.Q, c.jobs);
  if (c.format == "csv") return {defect_csv(r, alpha)};
  json rows = json::array();
  for (std::size_t k = 0; k < r.rows.size(); ++k)
    rows.push_back({{"q", r.rows[k].q},
                    {"max_defect", approx(r.rows[k].max_defect, alpha)},
                    {"argmax_atom", r.rows[k].argmax_atom},
                    {"running_min", approx(r.running_min[k], alpha)}});
  return emit_json("stiet.rigidity.scan/1", {{"surface", o.describe()},
                                             {"alpha", alpha.describe()},
                                             {"q_first", r.q_first},
                                             {"q_last", r.q_last},
                                             {"min_max_defect", exact_json(r.min_max_defect, alpha)},
                                             {"argmin_q", r.argmin_q},
                                             {"rows", rows}});
}

Rational polygon_y(const Config& c) {
  if (!c.y.empty()) return parse_rational(c.y);
  if (!c.regimes.empty()) return y_midpoint(parse_regimes(c.regimes), c.d);
  throw PreconditionError("missing-y", "give --y or --regimes");
}

Output cmd_polygon_gmap(const Config& c) {
  require_format(c, true);
  Rational y = polygon_y(c);
  GOrbit g = g_orbit(y, c.d, c.N);
  if (c.format == "csv") {
    std::ostringstream out;
    out << "n,value,regime\n";
    for (std::size_t k = 0; k < g.values.size(); ++k)
      out << k << ',' << format_decimal(g.values[k].approx()) << ',' << g.labels[k] << '\n';
    return {out.str()};
  }
  json values = json::array();
  for (const auto& v : g.values) values.push_back(v.approx());
  return emit_json("stiet.polygon.gmap/1",
                   {{"d", c.d}, {"y", to_string(y)}, {"values", values}, {"labels", g.labels}, {"regimes", g.regimes}});
}

Output cmd_polygon_words(const Config& c) {
  require_format(c, false);
  auto regimes = parse_regimes(c.regimes);
  auto levels = word_induction(c.d, regimes, c.N);
  json arr = json::array();
  for (const auto& w : levels) {
    json M = json::array(), P = json::array();
    for (const auto& m : w.M) M.push_back(to_string(m));
    for (const auto& p : w.P) P.push_back(to_string(p));
    arr.push_back({{"level", w.level}, {"step", std::string(1, w.step)}, {"M", M}, {"P", P}, {"s", lcm_times(w).get_str()}});
  }
  return emit_json("stiet.polygon.words/1", {{"d", c.d}, {"regimes", regimes}, {"levels", arr}});
}

Output cmd_polygon_flowcheck(const Config& c) {
  require_format(c, false);
  FlowCheckInput in;
  in.theta = parse_rational(c.theta);
  in.theta_n = parse_rational(c.theta_n.empty() ? c.theta : c.theta_n);
  in.l_n = parse_integer(c.l_n, "l");
  in.p_n = parse_integer(c.p_n, "p");
  in.q_n = parse_integer(c.q_n, "q");
  in.a = c.a;
  in.d = c.d;
  FlowCheckReport r = octagon_flow_check(in);
  return emit_json("stiet.polygon.flowcheck/1", {{"diophantine_ok", r.diophantine_ok},
                                                 {"sqrt2_error", r.sqrt2_error.to_string()},
                                                 {"sqrt2_error_approx", r.sqrt2_error.to_double()},
                                                 {"speed_ok", r.speed_ok},
                                                 {"escape_bound", to_string(r.escape_bound)},
                                                 {"escape_limit", to_string(r.escape_limit)},
                                                 {"translation_offset", to_string(r.translation_offset)},
                                                 {"window_ok", r.window_ok},
                                                 {"compatible", r.compatible}});
}

std::string error_json(const std::string& code, const std::string& message) {
  json doc{{"schema", "stiet.error/1"}, {"error", {{"code", code}, {"message", message}}}};
  return doc.dump() + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-tiled interval exchanges: exact experiments", "stiet"};
  app.require_subcommand(1);
  Config c;
  std::function<Output(const Config&)> action;

  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<Output(const Config&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out_path, "write output to this file");
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto surface = [&](CLI::App* sub) {
    sub->add_option("surface", c.surface, "registry key (fig1, fig2, d4-cycle, torus-d1) or 'd;tau=...;sigma=...'")->required();
  };
  auto alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "quad:EXPR or cf:a0,a1,...[,...|then:EXPR]");
    sub->add_option("--precision-bits", c.precision_bits, "cap on enclosure precision");
  };

  CLI::App* origami = app.add_subcommand("origami", "square-tiled surfaces");
  origami->require_subcommand(1);
  surface(leaf(origami, "info", "combinatorics and stratum", cmd_origami_info));

  CLI::App* iet = app.add_subcommand("iet", "the interval exchange T");
  iet->require_subcommand(1);
  for (auto [name, help, fn] : {std::tuple{"power", "exact T^Q", &cmd_iet_power},
                                std::tuple{"defect", "mu(D_i symdiff T^Q D_i) per atom", &cmd_iet_defect}}) {
    CLI::App* sub = leaf(iet, name, help, fn);
    surface(sub);
    alpha(sub);
    sub->add_option("--Q", c.Q, "power");
  }

  CLI::App* coding = app.add_subcommand("coding", "symbolic codings");
  coding->require_subcommand(1);
  {
    CLI::App* sub = leaf(coding, "sturmian", "self-dual induction states 1..N", cmd_coding_sturmian);
    alpha(sub);
    sub->add_option("--N", c.N, "number of states");
  }
  {
    CLI::App* sub = leaf(coding, "homologous", "words with the same l/r projection", cmd_coding_homologous);
    surface(sub);
    alpha(sub);
    sub->add_option("--word", c.word, "word such as 1l.3l.2r")->required();
  }
  {
    CLI::App* sub = leaf(coding, "lmr", "decompose a family of dbar-neighbours", cmd_coding_lmr);
    surface(sub);
    alpha(sub);
    sub->add_option("--C", c.C, "bound on the summed dbar (rational)");
    sub->add_option("--v", c.v, "family v_1;v_2;...");
    sub->add_option("--vp", c.vp, "family v'_1;v'_2;...");
    sub->add_option("--window", c.window, "'i,j': use two length-N windows of the trajectory");
    sub->add_option("--start", c.start, "trajectory start 'x,square'");
    sub->add_option("--N", c.N, "window length");
  }
  {
    CLI::App* sub = leaf(coding, "ctex", "families where the one-block decomposition fails", cmd_coding_ctex);
    surface(sub);
    alpha(sub);
    sub->add_option("--N", c.N, "induction depth");
  }

  CLI::App* rig = app.add_subcommand("rigidity", "rigidity times and defect scans");
  rig->require_subcommand(1);
  {
    CLI::App* sub = leaf(rig, "times", "candidate rigidity times per string", cmd_rigidity_times);
    surface(sub);
    alpha(sub);
    sub->add_option("--N", c.N, "number of strings");
    sub->add_option("--L", c.L, "cylinder length in the bound");
  }
  {
    CLI::App* sub = leaf(rig, "scan", "exact defects for q in [Q-first, Q]", cmd_rigidity_scan);
    surface(sub);
    alpha(sub);
    sub->add_option("--Q", c.Q, "last q");
    sub->add_option("--Q-first", c.Q_first, "first q");
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  }

  CLI::App* poly = app.add_subcommand("polygon", "regular 2d-gon exchanges");
  poly->require_subcommand(1);
  {
    CLI::App* sub = leaf(poly, "gmap", "g-orbit of y", cmd_polygon_gmap);
    sub->add_option("--d", c.d, "half the number of sides");
    sub->add_option("--y", c.y, "y > 0 (rational or decimal)");
    sub->add_option("--regimes", c.regimes, "m1,q1,m2,...: use the midpoint y realizing it");
    sub->add_option("--N", c.N, "iterates");
  }
  {
    CLI::App* sub = leaf(poly, "words", "M/P word tables", cmd_polygon_words);
    sub->add_option("--d", c.d, "half the number of sides");
    sub->add_option("--regimes", c.regimes, "m1,q1,m2,...")->required();
    sub->add_option("--N", c.N, "levels");
  }
  {
    CLI::App* sub = leaf(poly, "flowcheck", "octagon flow arithmetic", cmd_polygon_flowcheck);
    sub->add_option("--theta", c.theta, "direction (rational)")->required();
    sub->add_option("--theta-n", c.theta_n, "periodic approximant (defaults to theta)");
    sub->add_option("--l", c.l_n, "l_n");
    sub->add_option("--p", c.p_n, "p_n");
    sub->add_option("--q", c.q_n, "q_n");
    sub->add_option("--a", c.a, "approximation speed");
    sub->add_option("--d", c.d, "half the number of sides");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what());
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (!action) {
    out << error_json("usage", "no command");
    return 2;
  }
  try {
    Output result = action(c);
    if (c.out_path.empty()) {
      out << result.text;
    } else {
      std::ofstream file(c.out_path, std::ios::binary);
      if (!file) throw PreconditionError("bad-output", "cannot open " + c.out_path);
      file << result.text;
    }
    return 0;
  } catch (const PrecisionExhausted& e) {
    out << error_json(e.code(), e.what());
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    out << error_json(e.code(), e.what());
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    out << error_json("internal", e.what());
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stiet
