#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "bohm/hh_spectrum.hpp"
#include "bohm/models.hpp"
#include "bohm/relaxation.hpp"
#include "bohm/series.hpp"
#include "bohm/trajectory.hpp"

namespace py = pybind11;
using namespace bohm;

PYBIND11_MODULE(_bohm, m) {
    m.doc() = "Bohmian trajectory and quantum relaxation core";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NodeSingularity>(m, "NodeSingularity");
    py::register_exception<NodeAtInfinity>(m, "NodeAtInfinity");
    py::register_exception<StepUnderflow>(m, "StepUnderflow");

    py::class_<WavefunctionModel>(m, "Model")
        .def_static("harmonic3", &WavefunctionModel::harmonic3, py::arg("a"), py::arg("b"),
                    py::arg("c"))
        .def_static("harmonic4_quartic", &WavefunctionModel::harmonic4_quartic, py::arg("a"),
                    py::arg("b"), py::arg("c"))
        .def_static("harmonic5", &WavefunctionModel::harmonic5, py::arg("a"), py::arg("b"),
                    py::arg("c"), py::arg("d"))
        .def_static("wis_puj", &WavefunctionModel::wis_puj, py::arg("a"), py::arg("b"),
                    py::arg("d"), py::arg("gamma1"), py::arg("gamma2"))
        .def("velocity",
             [](const WavefunctionModel& mm, double x, double y, double t) {
                 const auto s = mm.eval_field(x, y, t);
                 return std::make_pair(s.vx, s.vy);
             })
        .def("psi",
             [](const WavefunctionModel& mm, double x, double y, double t) {
                 return mm.eval_field(x, y, t).psi;
             })
        .def("nodal_point", [](const WavefunctionModel& mm, double t) {
            double xn, yn;
            mm.nodal_point(t, xn, yn);
            return std::make_pair(xn, yn);
        });

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("dt", &IntegratorConfig::dt)
        .def_readwrite("t_end", &IntegratorConfig::t_end)
        .def_readwrite("sample_dt", &IntegratorConfig::sample_dt)
        .def_readwrite("node_guard_radius", &IntegratorConfig::node_guard_radius);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_property_readonly("samples",
                               [](const TrajectoryRecord& r) {
                                   std::vector<std::tuple<double, double, double>> out;
                                   for (const auto& s : r.samples)
                                       out.emplace_back(s.t, s.x, s.y);
                                   return out;
                               })
        .def_readonly("x_min", &TrajectoryRecord::x_min)
        .def_readonly("x_max", &TrajectoryRecord::x_max)
        .def_readonly("y_min", &TrajectoryRecord::y_min)
        .def_readonly("y_max", &TrajectoryRecord::y_max);

    m.def("integrate", &integrate, py::arg("model"), py::arg("x0"), py::arg("y0"),
          py::arg("config"));

    py::enum_<TrajectoryClass>(m, "TrajectoryClass")
        .value("Ordered", TrajectoryClass::Ordered)
        .value("Chaotic", TrajectoryClass::Chaotic)
        .value("Inconclusive", TrajectoryClass::Inconclusive);

    py::class_<LyapunovResult>(m, "LyapunovResult")
        .def_readonly("chi_end", &LyapunovResult::chi_end)
        .def_readonly("slope", &LyapunovResult::slope)
        .def_readonly("classification", &LyapunovResult::classification)
        .def_readonly("chi_envelope", &LyapunovResult::chi_envelope);

    m.def(
        "lyapunov",
        [](const WavefunctionModel& model, double x0, double y0, const IntegratorConfig& cfg) {
            return lyapunov(model, x0, y0, cfg);
        },
        py::arg("model"), py::arg("x0"), py::arg("y0"), py::arg("config"));

    py::class_<SeriesSolution>(m, "SeriesSolution")
        .def("eval_x", &SeriesSolution::eval_x)
        .def("eval_y", &SeriesSolution::eval_y)
        .def_readonly("truncation", &SeriesSolution::truncation);

    m.def("outer_series", &outer_series, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x0"),
          py::arg("y0"), py::arg("order"));
    m.def(
        "series_extrema",
        [](const SeriesSolution& sol, double t_span) {
            const auto e = series_extrema(sol, t_span);
            return std::make_tuple(e.x_min, e.x_max, e.y_min, e.y_max);
        },
        py::arg("solution"), py::arg("t_span") = 1e3);
    m.def("dump_series", &dump_series);

    py::class_<Ensemble>(m, "Ensemble")
        .def_readonly("x", &Ensemble::x)
        .def_readonly("y", &Ensemble::y)
        .def("__len__", &Ensemble::size);

    m.def("grid_box", &grid_box, py::arg("cx"), py::arg("cy"), py::arg("side"),
          py::arg("per_side") = 31);
    m.def(
        "sample_born",
        [](const WavefunctionModel& model, double t0, std::size_t n, std::uint64_t seed) {
            return sample_born(model, t0, n, seed);
        },
        py::arg("model"), py::arg("t0"), py::arg("n"), py::arg("seed"));

    py::enum_<Halfplane>(m, "Halfplane")
        .value("PositiveX", Halfplane::PositiveX)
        .value("NegativeX", Halfplane::NegativeX);

    m.def(
        "relaxation_run",
        [](const WavefunctionModel& model, const Ensemble& ens, const IntegratorConfig& integ,
           const std::vector<double>& sample_times, std::optional<Halfplane> halfplane) {
            RelaxationConfig cfg;
            cfg.integ = integ;
            cfg.halfplane = halfplane;
            const auto r = relaxation_run(model, ens, cfg, sample_times);
            std::vector<std::tuple<double, double, double, std::optional<double>>> out;
            for (const auto& s : r.samples) out.emplace_back(s.t, s.d, s.h_s, s.d_bar);
            return out;
        },
        py::arg("model"), py::arg("ensemble"), py::arg("config"), py::arg("sample_times"),
        py::arg("halfplane") = std::nullopt);

    m.def(
        "hh_spectrum",
        [](double omega1, double omega2, double epsilon, int K, int n_lowest) {
            const auto sp = build_spectrum(omega1, omega2, epsilon, K);
            std::vector<std::tuple<int, int, double>> out;
            const int lim = std::min<std::size_t>(n_lowest, sp.eigenvalues.size());
            for (int i = 0; i < lim; ++i)
                out.emplace_back(sp.labels[i].first, sp.labels[i].second, sp.eigenvalues[i]);
            return out;
        },
        py::arg("omega1") = 1.0, py::arg("omega2") = std::sqrt(2.0) / 2.0,
        py::arg("epsilon") = 0.1118034, py::arg("K") = 200, py::arg("n_lowest") = 20);

    m.def(
        "stroboscopic_section",
        [](const WavefunctionModel& model,
           const std::vector<std::pair<double, double>>& initial, int n_periods,
           const IntegratorConfig& cfg) {
            return stroboscopic_section(model, initial, n_periods, cfg);
        },
        py::arg("model"), py::arg("initial"), py::arg("n_periods"), py::arg("config"));
}
