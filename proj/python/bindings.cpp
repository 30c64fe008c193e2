#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edgediff/analysis.hpp"
#include "edgediff/calibration.hpp"
#include "edgediff/config.hpp"
#include "edgediff/counts.hpp"
#include "edgediff/diffraction.hpp"
#include "edgediff/errors.hpp"
#include "edgediff/geometry.hpp"
#include "edgediff/specfun.hpp"

namespace py = pybind11;
using namespace edgediff;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  const double* first = a.data();
  return std::vector<double>(first, first + a.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-photon edge diffraction: amplitudes, patterns, counts, fits";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<RangeError>(m, "RangeError", base);
  py::register_exception<NonFiniteError>(m, "NonFiniteError", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<IoError>(m, "IoError", base);

  py::class_<SetupGeometry>(m, "SetupGeometry")
      .def(py::init<double, double, double, double, double>(), py::arg("d1"),
           py::arg("d2"), py::arg("d3"), py::arg("y1"), py::arg("y2"))
      .def_property_readonly("d1", &SetupGeometry::d1)
      .def_property_readonly("d2", &SetupGeometry::d2)
      .def_property_readonly("d3", &SetupGeometry::d3)
      .def_property_readonly("y1", &SetupGeometry::y1)
      .def_property_readonly("y2", &SetupGeometry::y2)
      .def("unfolded_distance", &SetupGeometry::unfolded_distance)
      .def("with_y1", &SetupGeometry::with_y1)
      .def("with_y2", &SetupGeometry::with_y2)
      .def(py::self == py::self)
      .def("__repr__", [](const SetupGeometry& g) {
        return "SetupGeometry(d1=" + std::to_string(g.d1()) +
               ", d2=" + std::to_string(g.d2()) + ", d3=" + std::to_string(g.d3()) +
               ", y1=" + std::to_string(g.y1()) + ", y2=" + std::to_string(g.y2()) + ")";
      });

  py::class_<SourceModel>(m, "SourceModel")
      .def(py::init<double, double>(), py::arg("wavelength"), py::arg("sigma"))
      .def_property_readonly("wavelength", &SourceModel::wavelength)
      .def_property_readonly("k0", &SourceModel::k0)
      .def_property_readonly("sigma", &SourceModel::sigma)
      .def("with_sigma", &SourceModel::with_sigma)
      .def(py::self == py::self);

  py::class_<EffectiveGeometry>(m, "EffectiveGeometry")
      .def_readonly("d_eff", &EffectiveGeometry::d_eff)
      .def_readonly("y_c", &EffectiveGeometry::y_c);
  m.def("effective_geometry", &effective_geometry);

  py::enum_<Method>(m, "Method")
      .value("closed_form", Method::closed_form)
      .value("quadrature", Method::quadrature)
      .value("quadrature_real_axis", Method::quadrature_real_axis);

  m.def("coincidence_amplitude", &coincidence_amplitude, py::arg("geometry"),
        py::arg("source"), py::arg("edge"), py::arg("method") = Method::closed_form);
  m.def("coincidence_probability", &coincidence_probability, py::arg("geometry"),
        py::arg("source"), py::arg("edge"), py::arg("method") = Method::closed_form);
  m.def("unblocked_probability", &unblocked_probability);
  m.def("envelope_center", &envelope_center);
  m.def("envelope_width", &envelope_width);
  m.def("fringe_scale", &fringe_scale);

  m.def(
      "edge_sweep",
      [](const SetupGeometry& g, const SourceModel& s, const Array& grid,
         Method method, bool normalized) {
        const auto pattern = edge_sweep(g, s, to_vector(grid), method);
        return to_array(normalized ? pattern.normalized() : pattern.p12);
      },
      py::arg("geometry"), py::arg("source"), py::arg("grid"),
      py::arg("method") = Method::closed_form, py::arg("normalized") = true,
      "p12 over the edge grid, divided by the unblocked value by default.");

  m.def(
      "traced_singles",
      [](const SetupGeometry& g, const SourceModel& s, const Array& grid,
         int points) {
        const auto curve = traced_singles(g, s, to_vector(grid),
                                          default_singles_trace(g, s, points));
        return to_array(curve.s2_normalized());
      },
      py::arg("geometry"), py::arg("source"), py::arg("grid"), py::arg("points") = 64,
      "Normalized detector-2 singles over the edge grid.");

  m.def(
      "classical_edge_pattern",
      [](double d_eff, double y_c, double wavelength, const Array& grid) {
        return to_array(classical_edge_pattern(d_eff, y_c, wavelength, to_vector(grid)));
      },
      py::arg("d_eff"), py::arg("y_c"), py::arg("wavelength"), py::arg("grid"));

  m.def("default_edge_grid", [](const SetupGeometry& g, const SourceModel& s,
                                std::size_t n) { return to_array(default_edge_grid(g, s, n)); },
        py::arg("geometry"), py::arg("source"), py::arg("n") = 512);

  m.def("faddeeva", &faddeeva, py::arg("z"));
  m.def("erfc_complex", &erfc_complex, py::arg("z"));
  m.def(
      "fresnel_cs",
      [](double u) {
        const auto r = fresnel_cs(u);
        return py::make_tuple(r.c, r.s);
      },
      py::arg("u"), "(C(u), S(u)) with the pi t^2 / 2 convention.");
  m.def("gaussian_chirp_cumulative", &gaussian_chirp_cumulative, py::arg("a"),
        py::arg("b"), py::arg("c"), py::arg("upper"));

  m.def("visibility", [](const Array& v) { return visibility(to_vector(v)); });
  m.def("first_fringe_visibility",
        [](const Array& v) { return first_fringe_visibility(to_vector(v)); });
  m.def("correlation_lag", [](const Array& ref,
                              const Array& moved, double step) {
    return correlation_lag(to_vector(ref), to_vector(moved), step);
  });

  py::class_<CountingConfig>(m, "CountingConfig")
      .def(py::init<>())
      .def_readwrite("pair_rate_scale", &CountingConfig::pair_rate_scale)
      .def_readwrite("integration_time", &CountingConfig::integration_time)
      .def_readwrite("accidental_rate", &CountingConfig::accidental_rate)
      .def_readwrite("singles_rate_1", &CountingConfig::singles_rate_1)
      .def_readwrite("singles_rate_2_scale", &CountingConfig::singles_rate_2_scale)
      .def_readwrite("rng_seed", &CountingConfig::rng_seed);

  m.def(
      "simulate_counts",
      [](const SetupGeometry& g, const SourceModel& s, const Array& grid,
         const CountingConfig& cfg, int trace_points) {
        const auto edges = to_vector(grid);
        const auto pattern = edge_sweep(g, s, edges);
        const auto singles =
            traced_singles(g, s, edges, default_singles_trace(g, s, trace_points));
        const auto records = simulate_counts(pattern, singles, cfg);
        py::dict out;
        std::vector<std::int64_t> c, s1, s2;
        for (const auto& r : records) {
          c.push_back(r.coincidences);
          s1.push_back(r.singles1);
          s2.push_back(r.singles2);
        }
        out["edge_position"] = to_array(edges);
        out["coincidences"] = py::array_t<std::int64_t>(py::cast(c));
        out["singles1"] = py::array_t<std::int64_t>(py::cast(s1));
        out["singles2"] = py::array_t<std::int64_t>(py::cast(s2));
        return out;
      },
      py::arg("geometry"), py::arg("source"), py::arg("grid"), py::arg("config"),
      py::arg("trace_points") = 64,
      "Poisson counting records as a dict of arrays.");

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("scale", &FitResult::scale)
      .def_readonly("background", &FitResult::background)
      .def_readonly("residual_sum_squares", &FitResult::residual_sum_squares)
      .def_readonly("degrees_of_freedom", &FitResult::degrees_of_freedom)
      .def_readonly("scale_stderr", &FitResult::scale_stderr)
      .def_readonly("background_stderr", &FitResult::background_stderr)
      .def_property_readonly("per_point_residuals", [](const FitResult& f) {
        return to_array(f.per_point_residuals);
      });

  m.def("fit_scale_offset", [](const Array& model,
                               const Array& counts) {
    return fit_scale_offset(to_vector(model), to_vector(counts));
  });
  m.def(
      "fit_sigma_scan",
      [](const SetupGeometry& g, double wavelength, const Array& edges,
         const Array& counts, const Array& sigmas) {
        const auto scan = fit_sigma_scan(g, wavelength, to_vector(edges),
                                         to_vector(counts), to_vector(sigmas));
        return py::make_tuple(scan.best_sigma, scan.fits);
      },
      py::arg("geometry"), py::arg("wavelength"), py::arg("edges"), py::arg("counts"),
      py::arg("sigma_grid"));

  m.def(
      "parse_config",
      [](const std::string& text) {
        const auto cfg = parse_config(text);
        return py::make_tuple(cfg.geometry, cfg.source, cfg.counting,
                              to_array(cfg.edge_grid()));
      },
      py::arg("text"), "(geometry, source, counting, edge_grid) from config text.");
}
