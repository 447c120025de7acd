#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "samcurve/dataprep.hpp"
#include "samcurve/fitter.hpp"
#include "samcurve/measures.hpp"
#include "samcurve/scurve.hpp"

namespace py = pybind11;
using namespace samcurve;

PYBIND11_MODULE(_samcurve, m) {
    m.doc() = "S-curve models from singularly perturbed lines: kernels, data "
              "preparation, bounded least-squares fitting, and fit measures.";

    py::class_<SCurveParams>(m, "SCurveParams")
        .def(py::init([](double a, double mm, double x_c, double y_c) {
                 return SCurveParams{a, mm, x_c, y_c};
             }),
             py::arg("a"), py::arg("m"), py::arg("x_c") = 0.0, py::arg("y_c") = 0.0)
        .def_readwrite("a", &SCurveParams::a)
        .def_readwrite("m", &SCurveParams::m)
        .def_readwrite("x_c", &SCurveParams::x_c)
        .def_readwrite("y_c", &SCurveParams::y_c);

    py::class_<Component>(m, "Component")
        .def(py::init([](double p, double mm, double x_c, double y_c) {
                 return Component{p, mm, x_c, y_c};
             }),
             py::arg("p") = 1.0, py::arg("m") = 1.0, py::arg("x_c") = 0.0,
             py::arg("y_c") = 0.0)
        .def_readwrite("p", &Component::weight)
        .def_readwrite("m", &Component::slope)
        .def_readwrite("x_c", &Component::x_c)
        .def_readwrite("y_c", &Component::y_c);

    py::class_<Superposition>(m, "Superposition")
        .def(py::init<double, std::vector<Component>>(), py::arg("a"), py::arg("components"))
        .def_property_readonly("a", &Superposition::a)
        .def_property_readonly("components", &Superposition::components)
        .def("__len__", &Superposition::size)
        .def("linear_slope_sum", &Superposition::linear_slope_sum);

    m.def("perturbed_line_root", &perturbed_line_root, py::arg("a"), py::arg("t"),
          "Real root u of a*u**3 + u = t.");
    m.def("eval_scurve", &eval_scurve, py::arg("params"), py::arg("x"));
    m.def("eval_scurve_derivative", &eval_scurve_derivative, py::arg("params"), py::arg("x"));
    m.def("eval_superposition", &eval_superposition, py::arg("sup"), py::arg("x"));
    m.def("eval_superposition_derivative", &eval_superposition_derivative, py::arg("sup"),
          py::arg("x"));

    py::class_<SampleColumn>(m, "SampleColumn")
        .def(py::init([](std::vector<double> values, std::string label, std::string group) {
                 return SampleColumn{std::move(values), std::move(label), std::move(group)};
             }),
             py::arg("values"), py::arg("label") = "", py::arg("group") = "")
        .def_readwrite("values", &SampleColumn::values)
        .def_readwrite("label", &SampleColumn::label)
        .def_readwrite("group", &SampleColumn::group);

    py::class_<EmpiricalCdf>(m, "EmpiricalCdf")
        .def_readonly("xs", &EmpiricalCdf::xs)
        .def_readonly("fractions", &EmpiricalCdf::fractions)
        .def_readonly("counts", &EmpiricalCdf::counts);

    py::class_<CurveTable>(m, "CurveTable")
        .def(py::init([](std::vector<double> xs, std::vector<double> ys) {
                 return CurveTable{std::move(xs), std::move(ys)};
             }),
             py::arg("xs"), py::arg("ys"))
        .def_readwrite("xs", &CurveTable::xs)
        .def_readwrite("ys", &CurveTable::ys);

    py::class_<HistogramSpec>(m, "HistogramSpec")
        .def_readonly("edges", &HistogramSpec::edges)
        .def_readonly("masses", &HistogramSpec::masses);

    py::enum_<InflectionStrategy>(m, "InflectionStrategy")
        .value("SLOPE_MIDPOINT", InflectionStrategy::SlopeMidpoint)
        .value("MODE_FREQUENCY", InflectionStrategy::ModeFrequency);

    py::class_<InflectionSet>(m, "InflectionSet")
        .def(py::init([](std::vector<std::pair<double, double>> points,
                         InflectionStrategy strategy) {
                 return InflectionSet{std::move(points), strategy};
             }),
             py::arg("points"), py::arg("strategy") = InflectionStrategy::SlopeMidpoint)
        .def_readwrite("points", &InflectionSet::points)
        .def_readwrite("strategy", &InflectionSet::strategy);

    m.def("build_ecdf", &build_ecdf, py::arg("samples"));
    m.def("to_table", &to_table, py::arg("cdf"));
    m.def("select_inflections_slope",
          py::overload_cast<const CurveTable&, std::size_t>(&select_inflections_slope),
          py::arg("table"), py::arg("count"));
    m.def("select_inflections_slope",
          py::overload_cast<const EmpiricalCdf&, std::size_t>(&select_inflections_slope),
          py::arg("cdf"), py::arg("count"));
    m.def("select_inflections_mode", &select_inflections_mode, py::arg("cdf"),
          py::arg("count"));
    m.def("auto_histogram", &auto_histogram, py::arg("samples"));
    m.def("gen_sigmoid_target", &gen_sigmoid_target, py::arg("lo"), py::arg("hi"),
          py::arg("points") = 101);
    m.def("gen_erf_target", &gen_erf_target, py::arg("lo"), py::arg("hi"),
          py::arg("points") = 101);
    m.def("standard_normal_cdf", &standard_normal_cdf, py::arg("x"));
    m.def("inject_zero_point", &inject_zero_point, py::arg("cdf"), py::arg("x0"));
    m.def(
        "load_csv",
        [](const std::string& path) { return load_csv(path, iris_schema()); },
        py::arg("path"), "Load a CSV with the bundled iris schema.");

    py::enum_<InitMode>(m, "InitMode")
        .value("CONSTANT", InitMode::Constant)
        .value("SLOPE_AT_INFLECTION", InitMode::SlopeAtInflection);

    py::class_<FitConfig>(m, "FitConfig")
        .def(py::init<>())
        .def_readwrite("n", &FitConfig::n)
        .def_readwrite("init_a", &FitConfig::init_a)
        .def_readwrite("init_m", &FitConfig::init_m)
        .def_readwrite("init_p", &FitConfig::init_p)
        .def_readwrite("init_mode", &FitConfig::init_mode)
        .def_readwrite("a_lower_bound", &FitConfig::a_lower_bound)
        .def_readwrite("max_iterations", &FitConfig::max_iterations)
        .def_readwrite("sse_rel_tol", &FitConfig::sse_rel_tol)
        .def_readwrite("gradient_tol", &FitConfig::gradient_tol);

    py::class_<MeasureSet>(m, "MeasureSet")
        .def_readonly("m_max", &MeasureSet::m_max)
        .def_readonly("argmax_x", &MeasureSet::argmax_x)
        .def_readonly("ratio", &MeasureSet::ratio)
        .def_readonly("nl_percent", &MeasureSet::nl_percent)
        .def_readonly("m_bar", &MeasureSet::m_bar);

    py::class_<FitReport>(m, "FitReport")
        .def_readonly("params", &FitReport::params)
        .def_readonly("sse", &FitReport::sse)
        .def_readonly("initial_sse", &FitReport::initial_sse)
        .def_readonly("iterations", &FitReport::iterations)
        .def_readonly("converged", &FitReport::converged)
        .def_readonly("measures", &FitReport::measures);

    m.def("residuals", py::overload_cast<const Superposition&, const CurveTable&>(&residuals),
          py::arg("sup"), py::arg("data"));
    m.def("residuals", py::overload_cast<const Superposition&, const EmpiricalCdf&>(&residuals),
          py::arg("sup"), py::arg("data"));
    m.def("sum_squared_residuals", &sum_squared_residuals, py::arg("sup"), py::arg("data"));
    m.def("local_slope", &local_slope, py::arg("data"), py::arg("x_c"));
    m.def("fit",
          py::overload_cast<const CurveTable&, const InflectionSet&, const FitConfig&>(&fit),
          py::arg("data"), py::arg("inflections"), py::arg("config"));
    m.def("fit",
          py::overload_cast<const EmpiricalCdf&, const InflectionSet&, const FitConfig&>(&fit),
          py::arg("data"), py::arg("inflections"), py::arg("config"));
    m.def("sweep_n",
          py::overload_cast<const CurveTable&, std::size_t, std::size_t, const FitConfig&>(
              &sweep_n),
          py::arg("data"), py::arg("n_lo"), py::arg("n_hi"), py::arg("config"));
    m.def("sweep_n",
          py::overload_cast<const EmpiricalCdf&, InflectionStrategy, std::size_t, std::size_t,
                            const FitConfig&>(&sweep_n),
          py::arg("data"), py::arg("strategy"), py::arg("n_lo"), py::arg("n_hi"),
          py::arg("config"));

    m.def("max_slope", &max_slope, py::arg("sup"), py::arg("lo"), py::arg("hi"));
    m.def("ratio_measure", &ratio_measure, py::arg("a"), py::arg("m_max"));
    m.def("nonlinearity_percent", &nonlinearity_percent, py::arg("sup"), py::arg("m_max"));
    m.def("normalized_peak", &normalized_peak, py::arg("sup"), py::arg("hist"));
    m.def("compute_measures", &compute_measures, py::arg("sup"), py::arg("lo"), py::arg("hi"));

    m.attr("MIN_PERTURBATION") = kMinPerturbation;
}
