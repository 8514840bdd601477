#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psg/affine.hpp"
#include "psg/certify.hpp"
#include "psg/examples.hpp"
#include "psg/genfile.hpp"
#include "psg/parallel.hpp"
#include "psg/render.hpp"
#include "psg/report.hpp"
#include "psg/topology.hpp"

namespace py = pybind11;
using namespace psg;

namespace {

Viewport square(Complex center, double half, int res) { return Viewport::square(center, half, res); }

py::array_t<std::uint8_t> kinds(const Raster& r) {
  py::array_t<std::uint8_t> a({r.height(), r.width()});
  auto m = a.mutable_unchecked<2>();
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) m(y, x) = static_cast<std::uint8_t>(r.at(x, y).kind);
  return a;
}

py::array_t<std::int32_t> steps(const Raster& r) {
  py::array_t<std::int32_t> a({r.height(), r.width()});
  auto m = a.mutable_unchecked<2>();
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) m(y, x) = r.at(x, y).step;
  return a;
}

py::array_t<std::complex<double>> points(const PointCloud& pc) {
  py::array_t<std::complex<double>> a(static_cast<py::ssize_t>(pc.points.size()));
  auto m = a.mutable_unchecked<1>();
  for (std::size_t i = 0; i < pc.points.size(); ++i) m(static_cast<py::ssize_t>(i)) = pc.points[i];
  return a;
}

py::dict pcb_dict(const PostcriticalReport& r) {
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["samples"] = r.samples;
  d["max_modulus"] = r.max_modulus;
  d["witness"] = r.witness;
  d["seed"] = r.seed;
  d["depth"] = r.depth;
  d["radius_used"] = r.radius_used;
  return d;
}

py::dict connectivity_dict(const ConnectivityResult& c) {
  py::dict d;
  d["connected"] = c.connected;
  d["rule"] = to_string(c.rule);
  std::vector<std::pair<double, double>> gaps;
  for (const Interval& g : c.gaps) gaps.emplace_back(g.lo, g.hi);
  d["gaps"] = gaps;
  return d;
}

std::vector<std::pair<double, double>> intervals(const IntervalUnion& u) {
  std::vector<std::pair<double, double>> out;
  for (const Interval& i : u.intervals()) out.emplace_back(i.lo, i.hi);
  return out;
}

RegionSpec region(const std::string& kind, Complex center, double a, double b) {
  if (kind == "disk") return RegionSpec::disk(center, a);
  if (kind == "annulus") return RegionSpec::annulus(center, a, b);
  throw std::invalid_argument("region kind must be 'disk' or 'annulus'");
}

}  // namespace

PYBIND11_MODULE(_psg, m) {
  m.doc() = "Polynomial semigroup toolkit: postcritical checks, rendering, certificates and topology";

  py::register_exception<GenfileError>(m, "GenfileError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", PyExc_ValueError);

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init<std::vector<Complex>>(), py::arg("coeffs"), "Coefficients in increasing degree")
      .def_static("monomial", &Polynomial::monomial, py::arg("a"), py::arg("d"))
      .def_static("shifted", &Polynomial::shifted, py::arg("a"), py::arg("b"), py::arg("d"))
      .def_property_readonly("degree", &Polynomial::degree)
      .def_property_readonly("coeffs", [](const Polynomial& p) { return std::vector<Complex>(p.coeffs().begin(), p.coeffs().end()); })
      .def("__call__", [](const Polynomial& p, Complex z) { return p(z); })
      .def("roots", [](const Polynomial& p) { return root_list(p); })
      .def("critical_values", [](const Polynomial& p) { return critical_values_finite(p); })
      .def("escape_radius", [](const Polynomial& p) { return escape_radius(p); })
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
      .def("__repr__", [](const Polynomial& p) { return "Polynomial(" + to_string(p) + ")"; });

  py::class_<Generator>(m, "Generator")
      .def(py::init<Polynomial, std::string>(), py::arg("p"), py::arg("label") = "")
      .def(py::init<std::vector<Polynomial>, std::string>(), py::arg("factors"), py::arg("label") = "",
           "Chain of factors; factors[0] is applied first")
      .def_static("iterate", &Generator::iterate, py::arg("p"), py::arg("n"), py::arg("label") = "")
      .def_property_readonly("degree", &Generator::degree)
      .def_property_readonly("label", &Generator::label)
      .def_property_readonly("factors", [](const Generator& g) { return std::vector<Polynomial>(g.factors().begin(), g.factors().end()); })
      .def("expanded", &Generator::expanded)
      .def("__call__", [](const Generator& g, Complex z) { return g.apply(z); })
      .def("__eq__", [](const Generator& a, const Generator& b) { return a == b; });

  py::class_<GeneratorSet>(m, "GeneratorSet")
      .def(py::init<std::vector<Generator>>(), py::arg("generators"))
      .def("__len__", &GeneratorSet::size)
      .def("__getitem__", [](const GeneratorSet& gs, std::size_t i) {
        if (i >= gs.size()) throw py::index_error();
        return gs[i];
      })
      .def_property_readonly("max_escape_radius", &GeneratorSet::max_escape_radius);

  m.def("parse_generator_set", &parse_generator_set, py::arg("text"));
  m.def("read_generator_file", &read_generator_file, py::arg("path"));
  m.def("format_generator_set", &format_generator_set, py::arg("gs"), py::arg("title") = "");

  m.def("example_names", [] {
    std::vector<std::string> out;
    for (const ExampleSpec& e : shipped_examples()) out.push_back(e.name);
    return out;
  });
  m.def("example", [](const std::string& name) { return example_by_name(name).generator_set; }, py::arg("name"));

  m.def("pcb_check", [](const GeneratorSet& gs, int depth) { return pcb_dict(pcb_check(gs, depth)); }, py::arg("gs"),
        py::arg("depth") = kDefaultPcbDepth);
  m.def("connectivity_check", [](const GeneratorSet& gs) { return connectivity_dict(connectivity_check(gs)); }, py::arg("gs"));
  m.def("m_set", [](const GeneratorSet& gs, int depth) { return intervals(m_set(gs, depth)); }, py::arg("gs"), py::arg("depth"));
  m.def("count_m_components", [](const GeneratorSet& gs, int depth) {
    const auto c = count_m_components(gs, depth);
    return py::make_tuple(c.count, c.cantor_flag);
  }, py::arg("gs"), py::arg("depth"));
  m.def("psi", [](const Generator& g) {
    const auto a = psi(g);
    return py::make_tuple(a.slope, a.intercept);
  }, py::arg("g"));
  m.def("check_json", [](const GeneratorSet& gs) { return check_json(gs, run_check(gs)); }, py::arg("gs"));

  py::class_<Viewport>(m, "Viewport")
      .def(py::init<Complex, double, double, int, int>(), py::arg("center"), py::arg("width"), py::arg("height"),
           py::arg("px_w"), py::arg("px_h"))
      .def_static("square", &square, py::arg("center"), py::arg("half"), py::arg("res"))
      .def_readonly("width", &Viewport::width)
      .def_readonly("height", &Viewport::height)
      .def_readonly("px_w", &Viewport::px_w)
      .def_readonly("px_h", &Viewport::px_h)
      .def("pixel_center", &Viewport::pixel_center, py::arg("x"), py::arg("y"));

  py::class_<Raster>(m, "Raster")
      .def_property_readonly("width", &Raster::width)
      .def_property_readonly("height", &Raster::height)
      .def_property_readonly("viewport", &Raster::viewport)
      .def("kinds", &kinds, "Cell kinds as uint8 rows: 0 bounded, 1 escaped, 2 boundary")
      .def("steps", &steps)
      .def("count", [](const Raster& r, int kind) { return r.count(static_cast<CellKind>(kind)); }, py::arg("kind"))
      .def("pgm", [](const Raster& r) { return py::bytes(encode_pgm(r)); })
      .def("write_pgm", [](const Raster& r, const std::string& p) { write_pgm(r, p); }, py::arg("path"));

  m.def("default_render_radius", &default_render_radius, py::arg("gs"));
  m.def("julia_raster", [](const GeneratorSet& gs, const Viewport& vp, int depth) {
    py::gil_scoped_release nogil;
    return julia_raster(gs, vp, depth, default_render_radius(gs));
  }, py::arg("gs"), py::arg("viewport"), py::arg("depth") = 12);
  m.def("khat_raster", [](const GeneratorSet& gs, const Viewport& vp, int depth) {
    py::gil_scoped_release nogil;
    return khat_raster(gs, vp, depth, default_render_radius(gs));
  }, py::arg("gs"), py::arg("viewport"), py::arg("depth") = kDefaultKhatDepth);
  m.def("fiber_raster", [](const GeneratorSet& gs, std::vector<std::size_t> gamma, const Viewport& vp) {
    const FiberSequence g = FiberSequence::explicit_sequence(std::move(gamma));
    g.validate(gs.size());
    py::gil_scoped_release nogil;
    return fiber_raster(gs, g, vp, default_render_radius(gs));
  }, py::arg("gs"), py::arg("gamma"), py::arg("viewport"));
  m.def("random_fiber", [](std::size_t m_, std::size_t n, std::uint64_t seed) {
    return FiberSequence::random(m_, n, seed).indices();
  }, py::arg("m"), py::arg("n"), py::arg("seed") = 0);
  m.def("boundary_extract", &boundary_extract, py::arg("raster"));
  m.def("backward_sample", [](const GeneratorSet& gs, std::size_t n, std::size_t burn_in, std::uint64_t seed) {
    return points(backward_sample(gs, n, burn_in, seed));
  }, py::arg("gs"), py::arg("n") = 20000, py::arg("burn_in") = 200, py::arg("seed") = 0);

  m.def("component_count", &julia_component_count, py::arg("raster"));
  m.def("analyze_json", [](const Raster& r) { return analyze_raster_json(r); }, py::arg("raster"));
  m.def("jordan", [](const Raster& r) { return jordan_heuristic(trace_curve(r)); }, py::arg("raster"));

  m.def("certify", [](const std::string& statement, const GeneratorSet& gs, const std::string& kind, Complex center,
                      double a, double b, double r_out, int depth) {
    const RegionSpec reg = region(kind, center, a, b);
    const double R = r_out > 0.0 ? r_out : 2.0 * gs.max_escape_radius();
    py::gil_scoped_release nogil;
    Certificate c;
    if (statement == "forward") c = cert_forward_invariance(gs, reg, depth);
    else if (statement == "backward") c = cert_backward_invariance(gs, reg, R, depth);
    else if (statement == "disjoint") {
      if (gs.size() != 2) throw std::invalid_argument("disjoint statement needs exactly two generators");
      c = cert_disjoint_preimages(gs[0], gs[1], reg, R, depth);
    } else if (statement == "disconnected") c = cert_disconnected(gs, reg, R, depth);
    else throw std::invalid_argument("statement must be forward, backward, disjoint or disconnected");
    return certificate_to_json(c);
  }, py::arg("statement"), py::arg("gs"), py::arg("kind"), py::arg("center"), py::arg("a"), py::arg("b") = 0.0,
        py::arg("r_out") = 0.0, py::arg("depth") = kDefaultCertDepth,
        "Certificate JSON; region is disk(center, a) or annulus(center, a, b)");
  m.def("replay_certificate", &replay_certificate, py::arg("json"));

  m.def("set_thread_count", &set_thread_count, py::arg("n"));
}
