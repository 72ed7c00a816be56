#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stiet/coding.hpp"
#include "stiet/errors.hpp"
#include "stiet/iet.hpp"
#include "stiet/origami.hpp"
#include "stiet/polygon.hpp"
#include "stiet/rigidity.hpp"

namespace py = pybind11;
using namespace stiet;

namespace {

py::dict exact(const AlphaAffine& x, const AlphaValue& alpha) {
  py::dict d;
  d["c"] = to_string(x.c);
  d["k"] = to_string(x.k);
  d["approx"] = approx(x, alpha);
  d["exact"] = render(x, alpha);
  return d;
}

}  // namespace

PYBIND11_MODULE(_stiet, m) {
  m.doc() = "Exact square-tiled interval exchanges";

  static py::exception<Error> base(m, "StietError", PyExc_ValueError);
  static py::exception<PrecisionExhausted> precision(m, "PrecisionExhausted", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PrecisionExhausted& e) {
      PyErr_SetString(precision.ptr(), (e.code() + ": " + e.what()).c_str());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), (e.code() + ": " + e.what()).c_str());
    }
  });

  py::class_<Origami>(m, "Origami")
      .def_static("parse", &Origami::parse)
      .def_static("registry_keys", &Origami::registry_keys)
      .def_property_readonly("d", &Origami::d)
      .def_property_readonly("tau", [](const Origami& o) { return o.tau().images(); })
      .def_property_readonly("sigma", [](const Origami& o) { return o.sigma().images(); })
      .def("describe", &Origami::describe)
      .def("is_connected", [](const Origami& o) { return is_connected(o); })
      .def("info", [](const Origami& o) {
        SingularityData s = singularities(o);
        py::dict d;
        d["orbits"] = s.orbits;
        d["lengths"] = s.lengths;
        d["genus"] = s.genus;
        d["stratum"] = s.stratum;
        d["cone_angles"] = s.cone_angles();
        d["torus_cover"] = is_torus_cover(o);
        return d;
      });

  py::class_<AlphaValue>(m, "Alpha")
      .def_static("parse", &AlphaValue::parse)
      .def("approx", &AlphaValue::approx)
      .def("describe", &AlphaValue::describe)
      .def("less_than_half", &AlphaValue::less_than_half)
      .def("partial_quotients",
           [](const AlphaValue& a, std::size_t n) {
             std::vector<std::string> out;
             for (const auto& t : a.partial_quotients(n)) out.push_back(t.get_str());
             return out;
           });

  m.def("sturmian_run", [](const AlphaValue& alpha, int n) {
    py::list out;
    for (const auto& s : sturmian_run(alpha, n)) {
      py::dict d;
      d["n"] = s.n;
      d["l"] = exact(s.l, alpha);
      d["r"] = exact(s.r, alpha);
      d["w"] = s.w;
      d["M"] = s.M;
      d["P"] = s.P;
      d["w_len"] = s.w_len;
      d["M_len"] = s.M_len;
      d["P_len"] = s.P_len;
      d["l_greater"] = s.l_greater;
      out.append(d);
    }
    return out;
  });

  m.def(
      "trajectory",
      [](const Origami& o, const AlphaValue& alpha, const std::string& x, int square, std::size_t n) {
        SkewPoint p;
        p.x = AlphaAffine::constant(parse_rational(x));
        p.square = square;
        return serialize(trajectory(o, FixedRotation(alpha), p, n));
      },
      py::arg("origami"), py::arg("alpha"), py::arg("x") = "0", py::arg("square") = 1, py::arg("n") = 10);

  m.def("homologous", [](const Origami& o, const AlphaValue& alpha, const std::string& word) {
    std::vector<std::string> out;
    for (const auto& w : homologous(o, parse_word(word), alpha.less_than_half())) out.push_back(serialize(w));
    return out;
  });

  m.def(
      "defect_scan",
      [](const Origami& o, const AlphaValue& alpha, std::int64_t q_first, std::int64_t q_last, int jobs) {
        DefectReport r;
        {
          py::gil_scoped_release release;
          r = defect_scan(o, alpha, q_first, q_last, jobs);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["q"] = row.q;
          py::list atoms;
          for (const auto& v : row.defect) atoms.append(approx(v, alpha));
          d["defects"] = atoms;
          d["max"] = approx(row.max_defect, alpha);
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["min_max_defect"] = exact(r.min_max_defect, alpha);
        out["argmin_q"] = r.argmin_q;
        return out;
      },
      py::arg("origami"), py::arg("alpha"), py::arg("q_first"), py::arg("q_last"), py::arg("jobs") = 1);

  m.def(
      "rigidity_times",
      [](const Origami& o, const AlphaValue& alpha, int strings, int L) {
        py::list out;
        for (const auto& t : rigidity_times(o, alpha, strings, L)) {
          py::dict d;
          d["k"] = t.k;
          d["a"] = t.a.get_str();
          d["block"] = std::string(1, t.block);
          d["block_length"] = t.block_length;
          d["s"] = t.cycles.s;
          d["time"] = t.time;
          d["bound"] = t.bound.get_d();
          out.append(d);
        }
        return out;
      },
      py::arg("origami"), py::arg("alpha"), py::arg("strings"), py::arg("L") = 1);

  m.def("g_orbit_labels", [](const std::string& y, int d, int n) { return g_orbit(parse_rational(y), d, n).labels; });
  m.def("y_midpoint", [](std::vector<std::int64_t> regimes, int d) { return to_string(y_midpoint(regimes, d)); });
  m.def("word_induction", [](int d, std::vector<std::int64_t> regimes, int n) {
    py::list out;
    for (const auto& w : word_induction(d, regimes, n)) {
      py::dict level;
      std::vector<std::string> M, P;
      for (const auto& x : w.M) M.push_back(to_string(x));
      for (const auto& x : w.P) P.push_back(to_string(x));
      level["M"] = M;
      level["P"] = P;
      level["s"] = lcm_times(w).get_str();
      out.append(level);
    }
    return out;
  });
  m.def("polygon_coding", [](int d, const std::string& y, const std::string& x0, std::size_t n) {
    return PolygonIet::from_y(d, parse_rational(y)).coding(parse_rational(x0), n);
  });
}
