// Python module _clcst. Signals cross the boundary as numpy arrays of shape
// (blades, N, ..., N); volumes as (blades, b, u, theta).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "clcst/cft.hpp"
#include "clcst/clcst.hpp"
#include "clcst/clct.hpp"
#include "clcst/config.hpp"
#include "clcst/errors.hpp"
#include "clcst/io.hpp"
#include "clcst/parallel.hpp"
#include "clcst/verify.hpp"

namespace py = pybind11;
using namespace clcst;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> signal_shape(const GridSpec& g) {
  std::vector<py::ssize_t> shape = {static_cast<py::ssize_t>(g.algebra().blade_count())};
  for (int a = 0; a < g.n; ++a) shape.push_back(g.samples);
  return shape;
}

Array signal_array(const GridSignal& f) {
  Array out(signal_shape(f.spec()));
  std::copy(f.raw().begin(), f.raw().end(), out.mutable_data());
  return out;
}

GridSignal signal_from_array(const GridSpec& g, const Array& a, Domain d, double scale) {
  GridSignal f(g, d, scale);
  const auto want = signal_shape(g);
  if (a.ndim() != static_cast<py::ssize_t>(want.size())) throw DimensionMismatch("array must have shape (blades, N, ..., N)");
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (a.shape(i) != want[i]) throw DimensionMismatch("array must have shape (blades, N, ..., N)");
  }
  std::copy(a.data(), a.data() + f.raw().size(), f.raw().begin());
  return f;
}

Multivector mv_from(const AlgebraContext& alg, const Array& a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != alg.blade_count()) {
    throw DimensionMismatch("multivector needs 2^n coefficients");
  }
  return Multivector(alg, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

Array mv_array(const Multivector& m) {
  Array out(static_cast<py::ssize_t>(m.size()));
  std::copy(m.coeffs().begin(), m.coeffs().end(), out.mutable_data());
  return out;
}

const AlgebraContext& transform_algebra(int n) { return AlgebraContext::get(n, AlgebraContext::transform_signature(n)); }

UGrid u_grid(const py::object& u, const GridSpec& g) {
  if (py::isinstance<py::str>(u)) return parse_u_grid(nlohmann::json(u.cast<std::string>()), g);
  return UGrid::tensor(u.cast<std::vector<std::vector<double>>>());
}

Array volume_array(const CLCSTVolume& v) {
  Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.blades()), static_cast<py::ssize_t>(v.b_count()),
                                     static_cast<py::ssize_t>(v.u_count()), static_cast<py::ssize_t>(v.theta_count())});
  std::copy(v.raw().begin(), v.raw().end(), out.mutable_data());
  return out;
}

py::dict profile_dict(const AdmissibilityProfile& p) {
  py::dict d;
  d["min"] = p.min;
  d["max"] = p.max;
  d["mean"] = p.mean;
  d["relative_variation"] = p.relative_variation;
  d["C"] = signal_array(p.C);
  return d;
}

}  // namespace

PYBIND11_MODULE(_clcst, m) {
  m.doc() = "Clifford linear canonical Stockwell transform";

  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", PyExc_ValueError);
  py::register_exception<ZeroIntegral>(m, "ZeroIntegral", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_IOError);

  // Algebra on plain coefficient arrays.
  m.def("geometric_product", [](const Array& a, const Array& b, int n) {
    const auto& alg = transform_algebra(n);
    return mv_array(mv_from(alg, a) * mv_from(alg, b));
  }, py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("clifford_conjugate", [](const Array& a, int n) { return mv_array(clifford_conjugate(mv_from(transform_algebra(n), a))); },
        py::arg("a"), py::arg("n"));
  m.def("pseudoscalar_exp", [](double phase, int n) { return mv_array(pseudoscalar_exp(transform_algebra(n), phase)); },
        py::arg("phase"), py::arg("n"));
  m.def("blade_name", [](std::size_t blade, int n) { return transform_algebra(n).blade_name(blade); });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init(&GridSpec::make), py::arg("n"), py::arg("L"), py::arg("N"))
      .def_readonly("n", &GridSpec::n)
      .def_readonly("L", &GridSpec::half_width)
      .def_readonly("N", &GridSpec::samples)
      .def_property_readonly("dx", &GridSpec::dx)
      .def_property_readonly("dw", &GridSpec::dw)
      .def_property_readonly("blades", [](const GridSpec& g) { return g.algebra().blade_count(); })
      .def("coordinates", [](const GridSpec& g) {
        std::vector<double> x(g.samples);
        for (int j = 0; j < g.samples; ++j) x[j] = g.coordinate(j);
        return x;
      })
      .def("frequencies", [](const GridSpec& g) {
        std::vector<double> w(g.samples);
        for (int j = 0; j < g.samples; ++j) w[j] = g.frequency(j);
        return w;
      })
      .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(n=" + std::to_string(g.n) + ", L=" + std::to_string(g.half_width) +
               ", N=" + std::to_string(g.samples) + ")";
      });

  py::enum_<Domain>(m, "Domain").value("spatial", Domain::spatial).value("frequency", Domain::frequency);

  py::class_<GridSignal>(m, "GridSignal")
      .def(py::init(&signal_from_array), py::arg("spec"), py::arg("values"), py::arg("domain") = Domain::spatial,
           py::arg("scale") = 1.0)
      .def(py::init([](const GridSpec& g) { return GridSignal(g); }), py::arg("spec"))
      .def_property_readonly("spec", &GridSignal::spec)
      .def_property_readonly("domain", &GridSignal::domain)
      .def_property_readonly("scale", &GridSignal::scale)
      .def_property_readonly("array", &signal_array)
      .def("norm_squared", &norm_squared);

  m.def("synthesize", [](const std::string& kind, const GridSpec& g, double width, double chirp, int components,
                         std::uint64_t seed) { return synthesize(kind, g, {width, chirp, components, seed}); },
        py::arg("kind"), py::arg("spec"), py::arg("width") = 1.0, py::arg("chirp") = 0.0, py::arg("components") = 3,
        py::arg("seed") = 1);
  m.def("relative_l2_error", &relative_l2_error, py::arg("approx"), py::arg("exact"));
  m.def("inner_product", [](const GridSignal& f, const GridSignal& g) { return mv_array(inner_product(f, g)); });

  py::class_<LCTParams>(m, "LCTParams")
      .def(py::init(&LCTParams::make), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"))
      .def_static("fourier", &LCTParams::fourier)
      .def_readonly("A", &LCTParams::A)
      .def_readonly("B", &LCTParams::B)
      .def_readonly("C", &LCTParams::C)
      .def_readonly("D", &LCTParams::D)
      .def("__repr__", &LCTParams::to_string);

  py::class_<Window>(m, "Window")
      .def_static("gaussian", py::overload_cast<int, std::vector<double>>(&Window::gaussian), py::arg("n"),
                  py::arg("sigma"))
      .def_static("gaussian", py::overload_cast<int, double>(&Window::gaussian), py::arg("n"), py::arg("sigma") = 1.0)
      .def_static("dog", &Window::dog, py::arg("n"), py::arg("lam"))
      .def_static("combine", &Window::combine, py::arg("alpha"), py::arg("a"), py::arg("beta"), py::arg("b"))
      .def("__call__", [](const Window& w, std::vector<double> y) { return w(y); })
      .def("integral", &Window::integral)
      .def("l2_norm_squared", &Window::l2_norm_squared)
      .def("l1_norm", &Window::l1_norm)
      .def("normalized", &Window::normalized)
      .def("__repr__", &Window::describe);

  m.def("cft_forward", &cft_forward);
  m.def("cft_inverse", &cft_inverse);
  m.def("convolve", &convolve);
  m.def("clct_forward", &clct_forward, py::arg("f"), py::arg("M"));
  m.def("clct_direct", &clct_direct, py::arg("f"), py::arg("M"));

  m.def("cst_slice", [](const GridSignal& f, const Window& psi, std::vector<double> u, double theta) {
    return cst_slice(f, psi, u, theta);
  }, py::arg("f"), py::arg("window"), py::arg("u"), py::arg("theta") = 0.0);

  m.def("clcst_slice", [](const GridSignal& f, const Window& psi, const LCTParams& M, std::vector<double> u, double theta,
                          const std::string& path) {
    return SliceEngine(f, psi, M).slice(u, theta, parse_path(path));
  }, py::arg("f"), py::arg("window"), py::arg("M"), py::arg("u"), py::arg("theta") = 0.0, py::arg("path") = "three_step");

  m.def("clcst", [](const GridSignal& f, const Window& psi, const LCTParams& M, const py::object& u,
                    std::vector<double> theta, std::vector<std::size_t> b, const std::string& path) {
    AnalysisGrid grid{BSelection{std::move(b)}, u_grid(u, f.spec()), ThetaGrid::make(std::move(theta))};
    CLCSTVolume v = [&] {
      py::gil_scoped_release release;
      return clcst::clcst(f, psi, M, grid, parse_path(path));
    }();
    return volume_array(v);
  }, py::arg("f"), py::arg("window"), py::arg("M"), py::arg("u") = "default",
     py::arg("theta") = std::vector<double>{0.0}, py::arg("b") = std::vector<std::size_t>{},
     py::arg("path") = "three_step",
     "Volume of shape (blades, b, u, theta). u is 'default', 'lattice' or one list of values per axis.");

  m.def("admissibility", [](const Window& psi, const GridSpec& g, const py::object& u, std::vector<double> theta) {
    return profile_dict(admissibility(psi, g, u_grid(u, g), ThetaGrid::make(std::move(theta))));
  }, py::arg("window"), py::arg("spec"), py::arg("u") = "default", py::arg("theta") = std::vector<double>{0.0});

  m.def("reconstruct_marginal", [](const GridSignal& f, const Window& psi, const LCTParams& M, double theta,
                                   const std::string& path) {
    return reconstruct_marginal(f, psi, M, {theta, parse_path(path)});
  }, py::arg("f"), py::arg("window"), py::arg("M"), py::arg("theta") = 0.0, py::arg("path") = "three_step");

  m.def("reconstruct_resolution", [](const GridSignal& f, const Window& psi, const LCTParams& M, const py::object& u,
                                     std::vector<double> theta) {
    const UGrid ug = u_grid(u, f.spec());
    ResolutionResult r = [&] {
      py::gil_scoped_release release;
      return reconstruct_resolution(f, psi, M, ug, ThetaGrid::make(theta));
    }();
    return py::make_tuple(r.f, profile_dict(r.profile));
  }, py::arg("f"), py::arg("window"), py::arg("M"), py::arg("u") = "lattice",
     py::arg("theta") = std::vector<double>{0.0});

  m.def("reproducing_kernel", [](const Window& psi, const LCTParams& M, const GridSpec& g, std::vector<double> b1,
                                 std::vector<double> u1, double t1, std::vector<double> b2, std::vector<double> u2,
                                 double t2, double C) {
    return mv_array(reproducing_kernel(psi, M, g, {b1, u1, t1}, {b2, u2, t2}, C));
  }, py::arg("window"), py::arg("M"), py::arg("spec"), py::arg("b1"), py::arg("u1"), py::arg("theta1"), py::arg("b2"),
     py::arg("u2"), py::arg("theta2"), py::arg("C"));

  m.def("read_grid", &read_grid, py::arg("path"));
  m.def("write_grid", &write_grid, py::arg("f"), py::arg("path"));

  m.def("set_worker_count", &set_worker_count);
  m.def("worker_count", &worker_count);

  m.def("suite_names", &suite_names);
  m.def("verify", [](const std::string& suite, bool quick) {
    VerifyOptions opt;
    opt.quick = quick;
    std::vector<CriterionReport> reports;
    {
      py::gil_scoped_release release;
      reports = run_suite(suite, opt);
    }
    py::list out;
    for (const auto& r : reports) out.append(py::module_::import("json").attr("loads")(to_json(r).dump()));
    return out;
  }, py::arg("suite") = "algebra", py::arg("quick") = true);
}
