#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "risq/analysis.hpp"
#include "risq/channel.hpp"
#include "risq/io.hpp"
#include "risq/quantization.hpp"
#include "risq/units.hpp"

namespace py = pybind11;
using namespace risq;

namespace {

std::vector<std::vector<int>> level_rows(const ShiftMatrix& s) {
    std::vector<std::vector<int>> out(s.rows(), std::vector<int>(s.cols()));
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = 0; c < s.cols(); ++c) out[r][c] = s.level_index(r, c);
    return out;
}

std::vector<std::vector<double>> grid_rows(const Grid<double>& g) {
    std::vector<std::vector<double>> out(g.rows(), std::vector<double>(g.cols()));
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) out[r][c] = g(r, c);
    return out;
}

PhaseMatrix to_grid(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    PhaseMatrix g(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DomainError("ragged phase matrix");
        for (std::size_t c = 0; c < cols; ++c) g(r, c) = rows[r][c];
    }
    return g;
}

py::dict sweep_rows(const std::vector<MethodSpec>& methods, const std::vector<SweepRow>& rows) {
    py::dict out;
    std::vector<double> axis;
    for (const SweepRow& r : rows) axis.push_back(r.axis_value);
    out["axis_value"] = axis;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        std::vector<double> power;
        std::vector<std::optional<double>> threshold;
        for (const SweepRow& r : rows) {
            power.push_back(r.values[i].power_dbm);
            threshold.push_back(r.values[i].threshold
                                    ? std::optional<double>(rad2deg(*r.values[i].threshold))
                                    : std::nullopt);
        }
        out[py::str(methods[i].name() + "_dbm")] = power;
        if (methods[i].kind != Method::Continuous) {
            out[py::str(methods[i].name() + "_threshold_deg")] = threshold;
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete phase-shift design for reconfigurable intelligent surfaces";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("rows", [](const Scenario& s) { return s.panel.rows(); })
        .def_property_readonly("cols", [](const Scenario& s) { return s.panel.cols(); })
        .def_property_readonly("bits", [](const Scenario& s) { return s.panel.bits(); })
        .def_property_readonly("wavelength", [](const Scenario& s) { return s.radio.wavelength(); })
        .def_property_readonly("d1", [](const Scenario& s) { return s.placement.d1(); })
        .def_property_readonly("d2", [](const Scenario& s) { return s.placement.d2(); })
        .def("with_rx_distance",
             [](const Scenario& s, double d2) {
                 const Placement& p = s.placement;
                 return s.with_placement(p.with_rx(d2, p.theta_r(), p.phi_r()));
             },
             py::arg("d2"));

    py::class_<QuantizationResult>(m, "QuantizationResult")
        .def_property_readonly("threshold_deg",
                               [](const QuantizationResult& r) -> std::optional<double> {
                                   if (!r.threshold) return std::nullopt;
                                   return rad2deg(*r.threshold);
                               })
        .def_readonly("xi", &QuantizationResult::xi)
        .def_readonly("received_power_dbm", &QuantizationResult::received_power_dbm)
        .def_readonly("candidates_evaluated", &QuantizationResult::candidates_evaluated)
        .def_property_readonly("level_indices",
                               [](const QuantizationResult& r) { return level_rows(r.shifts); })
        .def_property_readonly("shift_phases",
                               [](const QuantizationResult& r) { return grid_rows(r.shifts.to_phases()); });

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); },
          py::arg("json_text"));

    m.def("dtpq", py::overload_cast<const Scenario&>(&dtpq), py::arg("scenario"));
    m.def("eipq",
          [](const Scenario& s, double epsilon_deg) { return eipq(s, deg2rad(epsilon_deg)); },
          py::arg("scenario"), py::arg("epsilon_deg") = kDefaultEipqStepDeg);
    m.def("fixed_threshold",
          [](const Scenario& s, std::optional<double> gamma_deg) {
              const double g = gamma_deg ? wrap_two_pi(deg2rad(*gamma_deg)) : s.panel.levels().back();
              return fixed_threshold(s, g);
          },
          py::arg("scenario"), py::arg("gamma_deg") = py::none());
    m.def("exhaustive_search", py::overload_cast<const Scenario&>(&exhaustive_search),
          py::arg("scenario"));

    m.def("continuous_phases",
          [](const Scenario& s) { return grid_rows(ChannelModel(s).continuous_phases()); },
          py::arg("scenario"));
    m.def("continuous_power_dbm",
          [](const Scenario& s) {
              const ChannelModel model(s);
              return model.power_dbm(model.continuous_xi());
          },
          py::arg("scenario"));
    m.def("received_power_dbm",
          [](const Scenario& s, const std::vector<std::vector<double>>& shifts) {
              return received_power_dbm(s, to_grid(shifts));
          },
          py::arg("scenario"), py::arg("shift_phases"));
    m.def("far_field_pl_db",
          [](const Scenario& s) { return far_field_pl_db(s.panel, s.placement, s.radio); },
          py::arg("scenario"));
    m.def("residual_spread",
          [](const std::vector<std::vector<double>>& phases,
             const std::vector<std::vector<double>>& shifts) {
              return residual_spread(to_grid(phases), to_grid(shifts));
          },
          py::arg("phases"), py::arg("shifts"));
    m.def("wave_path_difference",
          [](const Scenario& s, std::pair<int, int> a, std::pair<int, int> b) {
              return wave_path_difference(s.panel, s.placement, {a.first, a.second},
                                          {b.first, b.second});
          },
          py::arg("scenario"), py::arg("cell_a"), py::arg("cell_b"));

    m.def("sweep",
          [](const Scenario& s, const std::string& axis, double start, double stop, double step,
             const std::string& methods) {
              SweepAxis ax;
              if (axis == "rx_distance") ax = SweepAxis::RxDistance;
              else if (axis == "tx_distance") ax = SweepAxis::TxDistance;
              else if (axis == "theta_r") ax = SweepAxis::ThetaR;
              else if (axis == "threshold") ax = SweepAxis::Threshold;
              else throw ConfigError("axis", "unknown axis '" + axis + "'");
              SweepSpec spec{ax, start, stop, step, parse_method_list(methods)};
              return sweep_rows(spec.methods, run_sweep(s, spec));
          },
          py::arg("scenario"), py::arg("axis"), py::arg("start"), py::arg("stop"),
          py::arg("step"), py::arg("methods") = "continuous,dtpq,eipq,fixed");
}
