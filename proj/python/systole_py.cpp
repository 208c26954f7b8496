#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "systole/bounds.hpp"
#include "systole/builders.hpp"
#include "systole/engine.hpp"
#include "systole/error.hpp"
#include "systole/fuchsian.hpp"
#include "systole/surface_io.hpp"
#include "systole/table.hpp"
#include "systole/verify.hpp"

namespace py = pybind11;
using namespace systole;

namespace {

py::dict signature_dict(const Signature& s) {
  py::dict d;
  d["genus"] = s.genus;
  d["boundaries"] = s.boundaries;
  d["cusps"] = s.cusps;
  return d;
}

py::dict estimate_dict(const SystoleEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["witness"] = e.witness_word;
  d["cutoff"] = e.cutoff;
  d["stable"] = e.stable;
  d["exhausted"] = e.exhausted;
  d["length_bound"] = e.upper_bound_used;
  d["elements"] = e.elements;
  return d;
}

py::dict report_dict(const VerifyReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["verdict"] = verdict_name(r.verdict);
  d["reason"] = r.reason;
  d["k"] = r.k;
  d["cutoff"] = r.cutoff;
  d["base"] = estimate_dict(r.base);
  d["derived"] = estimate_dict(r.derived);
  d["derived_signature"] = signature_dict(r.derived_signature);
  return d;
}

std::vector<TwistParam> to_twists(const std::vector<double>& v) {
  return std::vector<TwistParam>(v.begin(), v.end());
}

}  // namespace

PYBIND11_MODULE(_systole, m) {
  m.doc() = "Hyperbolic surfaces from pants decompositions";

  static py::exception<Error> error_type(m, "SystoleError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<SurfaceSpec>(m, "Spec")
      .def_static("from_json", &parse_spec, py::arg("text"))
      .def_static("load", &load_spec, py::arg("path"))
      .def_static("builtin", &builtin_spec, py::arg("name"))
      .def_static("random", &random_spec, py::arg("family"), py::arg("seed"))
      .def_static("genus2", [](std::array<double, 3> l, std::array<double, 3> t) { return make_genus2(l, t); },
                  py::arg("lengths"), py::arg("twists") = std::array<double, 3>{})
      .def("to_json", &write_spec)
      .def("signature", [](const SurfaceSpec& s) { return signature_dict(validate(s)); })
      .def_property_readonly("curve_names",
                             [](const SurfaceSpec& s) {
                               std::vector<std::string> out;
                               for (int c = 0; c < s.curve_count(); ++c) out.push_back(s.curve_name(c));
                               return out;
                             })
      .def("curve_length", [](const SurfaceSpec& s, const std::string& c) { return curve_length(s, find_curve(s, c)); })
      .def("is_nonseparating",
           [](const SurfaceSpec& s, const std::string& c) { return is_nonseparating(s, find_curve(s, c)); })
      .def("isomorphic", &isomorphic);

  m.def("builtin_names", &builtin_spec_names);

  m.def(
      "cyclic_cover",
      [](const SurfaceSpec& s, const std::string& curve, int k, std::optional<std::vector<double>> twists) {
        const CurveRef c = find_curve(s, curve);
        return twists ? cyclic_cover(s, c, k, to_twists(*twists)).spec : cyclic_cover(s, c, k).spec;
      },
      py::arg("spec"), py::arg("curve"), py::arg("k"), py::arg("twists") = py::none());
  m.def("cut", [](const SurfaceSpec& s, const std::string& curve) { return cut_along(s, find_curve(s, curve)).spec; });

  m.def(
      "generators",
      [](const SurfaceSpec& s) {
        const Representation r = fn_to_generators(s);
        py::list gens;
        for (const Mat2& g : r.generators) gens.append(py::make_tuple(g.a, g.b, g.c, g.d));
        py::dict d;
        d["generators"] = gens;
        d["relators"] = r.relators;
        d["curve_words"] = r.curve_words;
        d["curve_lengths"] = r.curve_lengths;
        d["residual"] = relator_residual(r);
        py::list traces;
        for (std::size_t c = 0; c < r.curve_words.size(); ++c) traces.append(evaluate(r, r.curve_words[c]).trace());
        d["curve_traces"] = traces;
        return d;
      },
      py::arg("spec"));

  m.def(
      "systole", [](const SurfaceSpec& s, int cutoff, int threads) { return estimate_dict(systole::systole(s, cutoff, threads)); },
      py::arg("spec"), py::arg("cutoff") = 12, py::arg("threads") = 0);
  m.def(
      "short_geodesics",
      [](const SurfaceSpec& s, int cutoff, double bound, int threads) {
        py::list out;
        for (const GeodesicHit& h : enumerate_short_geodesics(fn_to_generators(s), cutoff, bound, threads))
          out.append(py::make_tuple(h.length, h.word));
        return out;
      },
      py::arg("spec"), py::arg("cutoff"), py::arg("length_bound"), py::arg("threads") = 0);

  m.def(
      "verify_cover",
      [](const SurfaceSpec& s, const std::string& curve, int k, int cutoff, int threads) {
        return report_dict(verify_cover_monotone(s, find_curve(s, curve), k, cutoff, threads));
      },
      py::arg("spec"), py::arg("curve"), py::arg("k"), py::arg("cutoff") = 12, py::arg("threads") = 0);
  m.def(
      "verify_equality",
      [](const SurfaceSpec& s, const std::string& curve, int k, const std::vector<double>& twists, int cutoff,
         int threads) {
        return report_dict(verify_cover_equality(s, find_curve(s, curve), k, to_twists(twists), cutoff, threads));
      },
      py::arg("spec"), py::arg("curve"), py::arg("k"), py::arg("twists"), py::arg("cutoff") = 12,
      py::arg("threads") = 0);

  m.def("compact_upper_bound", &compact_upper_bound, py::arg("genus"));
  m.def("cusped_upper_bound", &cusped_upper_bound, py::arg("genus"), py::arg("cusps"));
  m.def("fpiece_max_systole", [](double b) { return fpiece_max_systole(GeodesicLength::or_zero(b)).value(); });
  m.def("qpiece_max_systole", [](double b) { return qpiece_max_systole(GeodesicLength::or_zero(b)).value(); });
  m.def("collar_width_compact", [](double a) { return collar_width_compact(GeodesicLength(a)).value(); });
  m.def("half_collar_width_cusped", [](double a) { return half_collar_width_cusped(GeodesicLength(a)).value(); });

  m.def(
      "table",
      [](const std::string& csv, int max_genus, const std::string& format, int max_depth) {
        return format_table(compose_best_known_table(parse_base_records(csv), max_genus, max_depth),
                            parse_table_format(format));
      },
      py::arg("base_csv"), py::arg("max_genus") = 25, py::arg("format") = "csv", py::arg("max_depth") = 3);
}
