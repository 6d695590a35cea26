#include "risq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>

#include "risq/analysis.hpp"
#include "risq/io.hpp"
#include "risq/quantization.hpp"
#include "risq/units.hpp"

namespace risq {

namespace {

// Writes to a file, or to the command's stdout when path is "-".
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path == "-") {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ConfigError("--out", "cannot write " + path);
        stream_ = file_.get();
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::vector<double> grid_or_config_error(double start, double stop, double step) {
    try {
        return axis_grid(start, stop, step);
    } catch (const DomainError& e) {
        throw ConfigError("--start/--stop/--step", e.what());
    }
}

std::vector<double> to_radians(std::vector<double> v) {
    for (double& x : v) x = deg2rad(x);
    return v;
}

std::string format_general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

SweepAxis parse_axis(const std::string& s) {
    static const std::map<std::string, SweepAxis> axes{{"rx_distance", SweepAxis::RxDistance},
                                                       {"tx_distance", SweepAxis::TxDistance},
                                                       {"theta_r", SweepAxis::ThetaR},
                                                       {"threshold", SweepAxis::Threshold}};
    const auto it = axes.find(s);
    if (it == axes.end()) throw ConfigError("--axis", "unknown axis '" + s + "'");
    return it->second;
}

PlVariable parse_variable(const std::string& s) {
    for (PlVariable v : {PlVariable::Log10D1, PlVariable::Log10D2, PlVariable::Log10CosThetaR,
                         PlVariable::Log10CosThetaT}) {
        if (to_string(v) == s) return v;
    }
    throw ConfigError("--variable", "unknown variable '" + s + "'");
}

struct QuantizeArgs {
    std::string scenario, method = "dtpq", shifts_out = "shifts.csv";
};

int cmd_quantize(const QuantizeArgs& a, std::ostream& out) {
    const Scenario scn = load_scenario(a.scenario);
    const ChannelModel model(scn);
    QuantizationResult result = [&] {
        if (a.method == "exhaustive") return exhaustive_search(model);
        const MethodSpec spec = parse_method(a.method);
        const double param = method_parameter(spec, scn.panel);
        switch (spec.kind) {
            case Method::Dtpq: return dtpq(model);
            case Method::Eipq:
                if (!(param > 0.0 && param < scn.panel.interval())) {
                    throw ConfigError("--method", "EIPQ step must be in (0, 360/2^q) degrees");
                }
                return eipq(model, param);
            case Method::Fixed: return fixed_threshold(model, param);
            case Method::Continuous: break;
        }
        throw ConfigError("--method", "quantize needs dtpq, eipq, fixed or exhaustive");
    }();

    Output shifts_out(a.shifts_out, out);
    write_shifts_csv(shifts_out.stream(), result.shifts);

    out << "method=" << a.method << '\n';
    out << "threshold_deg="
        << (result.threshold ? format_fixed(rad2deg(*result.threshold)) : "not-applicable") << '\n';
    out << "xi=" << format_general(result.xi) << '\n';
    out << "received_power_dbm=" << format_fixed(result.received_power_dbm) << '\n';
    out << "continuous_power_dbm=" << format_fixed(model.power_dbm(model.continuous_xi())) << '\n';
    out << "candidates=" << result.candidates_evaluated << '\n';
    return 0;
}

struct SweepArgs {
    std::string scenario, axis = "rx_distance", methods = "continuous,dtpq,eipq,fixed", out = "-";
    double start = 0.0, stop = 0.0, step = 1.0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    const Scenario scn = load_scenario(a.scenario);
    SweepSpec spec{parse_axis(a.axis), a.start, a.stop, a.step, parse_method_list(a.methods)};
    grid_or_config_error(a.start, a.stop, a.step);
    if (spec.axis == SweepAxis::Threshold &&
        (spec.methods.size() != 1 || spec.methods.front().kind != Method::Fixed)) {
        throw ConfigError("--methods", "a threshold sweep takes exactly the fixed method");
    }
    const auto rows = run_sweep(scn, spec);
    Output o(a.out, out);
    write_sweep_csv(o.stream(), spec.methods, rows);
    return 0;
}

struct AngleScanArgs {
    std::string scenario, methods = "continuous,dtpq,eipq,fixed", out = "-";
    double start = -90.0, stop = 90.0, step = 1.0;
    std::optional<double> target_deg;
};

int cmd_angle_scan(const AngleScanArgs& a, std::ostream& out) {
    const Scenario scn = load_scenario(a.scenario);
    const auto methods = parse_method_list(a.methods);
    const auto grid = grid_or_config_error(a.start, a.stop, a.step);
    const double target = a.target_deg ? *a.target_deg : rad2deg(scn.placement.theta_r());
    if (!(std::abs(target) < 90.0)) throw ConfigError("--target-deg", "must be in (-90, 90)");
    auto rows = angle_scan(scn, to_radians(grid), deg2rad(target), methods);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].axis_value = grid[i];
    Output o(a.out, out);
    write_sweep_csv(o.stream(), methods, rows);
    return 0;
}

struct GradientArgs {
    std::string scenario, method = "dtpq", out = "-";
    std::optional<double> target_theta_deg, target_phi_deg;
    double theta_start = 0.0, theta_stop = 90.0, theta_step = 0.5;
    double phi_start = 0.0, phi_stop = 360.0, phi_step = 2.0;
};

int cmd_gradient_map(const GradientArgs& a, std::ostream& out) {
    const Scenario scn = load_scenario(a.scenario);
    const MethodSpec method = parse_method(a.method);
    const auto thetas = grid_or_config_error(a.theta_start, a.theta_stop, a.theta_step);
    const auto phis = grid_or_config_error(a.phi_start, a.phi_stop, a.phi_step);
    const double tt = a.target_theta_deg ? *a.target_theta_deg : rad2deg(scn.placement.theta_r());
    const double tp = a.target_phi_deg ? *a.target_phi_deg : rad2deg(scn.placement.phi_r());
    if (!(tt >= 0.0 && tt < 90.0)) throw ConfigError("--target-theta-deg", "must be in [0, 90)");
    const GradientMap map =
        gradient_map(scn, deg2rad(tt), deg2rad(tp), to_radians(thetas), to_radians(phis), method);
    Output o(a.out, out);
    o.stream() << "theta_deg,phi_deg,power_dbm\n";
    for (std::size_t r = 0; r < thetas.size(); ++r) {
        for (std::size_t c = 0; c < phis.size(); ++c) {
            o.stream() << format_fixed(thetas[r]) << ',' << format_fixed(phis[c]) << ','
                       << format_fixed(map.power_dbm(r, c)) << '\n';
        }
    }
    return 0;
}

struct PlFitArgs {
    std::string scenario, variable = "log10_d2", method = "dtpq";
    std::string out;
    double start = 50.0, stop = 500.0, step = 10.0;
};

int cmd_pl_fit(const PlFitArgs& a, std::ostream& out) {
    const Scenario scn = load_scenario(a.scenario);
    const PlVariable var = parse_variable(a.variable);
    const MethodSpec method = parse_method(a.method);
    auto samples = grid_or_config_error(a.start, a.stop, a.step);
    const bool angle = var == PlVariable::Log10CosThetaR || var == PlVariable::Log10CosThetaT;
    if (angle) {
        if (!(a.start >= 0.0 && a.stop < 90.0)) {
            throw ConfigError("--start/--stop", "elevations must be in [0, 90) degrees");
        }
    } else if (!(a.start > 0.0)) {
        throw ConfigError("--start", "distances must be positive");
    }
    const auto physical = angle ? to_radians(samples) : samples;
    const SlopeFit fit = pl_slope_fit(scn, var, physical, method);
    out << "variable=" << to_string(var) << '\n';
    out << "method=" << method.name() << '\n';
    out << "slope=" << format_fixed(fit.slope) << '\n';
    out << "intercept_db=" << format_fixed(fit.intercept) << '\n';
    out << "r_squared=" << format_general(fit.r_squared) << '\n';
    if (!a.out.empty()) {
        Output o(a.out, out);
        o.stream() << "sample,x_db,pl_db,residual_db\n";
        for (std::size_t i = 0; i < samples.size(); ++i) {
            o.stream() << format_fixed(samples[i]) << ',' << format_fixed(fit.x[i]) << ','
                       << format_fixed(fit.pl_db[i]) << ',' << format_fixed(fit.residuals[i])
                       << '\n';
        }
    }
    return 0;
}

int cmd_validate(const std::string& path, std::ostream& out) {
    const Scenario scn = load_scenario(path);
    out << "ok: " << scn.panel.rows() << "x" << scn.panel.cols() << " cells, " << scn.panel.bits()
        << "-bit, wavelength " << format_general(scn.radio.wavelength()) << " m\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete phase-shift design and link simulation for reconfigurable surfaces",
                 "risq"};
    app.require_subcommand(1);

    std::function<int()> action;

    QuantizeArgs qa;
    auto* quantize = app.add_subcommand("quantize", "Design discrete shifts for one scenario");
    quantize->add_option("--scenario", qa.scenario, "Scenario JSON file")->required();
    quantize->add_option("--method", qa.method,
                         "dtpq | eipq[:step_deg] | fixed[:gamma_deg] | exhaustive");
    quantize->add_option("--shifts-out", qa.shifts_out, "Shift matrix CSV path ('-' for stdout)");
    quantize->callback([&] { action = [&] { return cmd_quantize(qa, out); }; });

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "Received power along one parameter axis");
    sweep->add_option("--scenario", sa.scenario, "Scenario JSON file")->required();
    sweep->add_option("--axis", sa.axis, "rx_distance | tx_distance | theta_r | threshold");
    sweep->add_option("--start", sa.start, "First axis value (m or deg)")->required();
    sweep->add_option("--stop", sa.stop, "Last axis value (m or deg)")->required();
    sweep->add_option("--step", sa.step, "Axis step (m or deg)")->required();
    sweep->add_option("--methods", sa.methods, "Comma-separated method list");
    sweep->add_option("--out", sa.out, "CSV path ('-' for stdout)");
    sweep->callback([&] { action = [&] { return cmd_sweep(sa, out); }; });

    AngleScanArgs aa;
    auto* scan = app.add_subcommand("angle-scan", "Move Rx in elevation with shifts fixed at a target");
    scan->add_option("--scenario", aa.scenario, "Scenario JSON file")->required();
    scan->add_option("--start", aa.start, "First elevation (deg, negative mirrors azimuth)");
    scan->add_option("--stop", aa.stop, "Last elevation (deg)");
    scan->add_option("--step", aa.step, "Elevation step (deg)");
    scan->add_option("--target-deg", aa.target_deg, "Design elevation (deg); default scenario theta_r");
    scan->add_option("--methods", aa.methods, "Comma-separated method list");
    scan->add_option("--out", aa.out, "CSV path ('-' for stdout)");
    scan->callback([&] { action = [&] { return cmd_angle_scan(aa, out); }; });

    GradientArgs ga;
    auto* grad = app.add_subcommand("gradient-map", "Received power over Rx directions");
    grad->add_option("--scenario", ga.scenario, "Scenario JSON file")->required();
    grad->add_option("--method", ga.method, "Design method");
    grad->add_option("--target-theta-deg", ga.target_theta_deg, "Design elevation (deg)");
    grad->add_option("--target-phi-deg", ga.target_phi_deg, "Design azimuth (deg)");
    grad->add_option("--theta-start", ga.theta_start);
    grad->add_option("--theta-stop", ga.theta_stop);
    grad->add_option("--theta-step", ga.theta_step);
    grad->add_option("--phi-start", ga.phi_start);
    grad->add_option("--phi-stop", ga.phi_stop);
    grad->add_option("--phi-step", ga.phi_step);
    grad->add_option("--out", ga.out, "CSV path ('-' for stdout)");
    grad->callback([&] { action = [&] { return cmd_gradient_map(ga, out); }; });

    PlFitArgs pa;
    auto* plfit = app.add_subcommand("pl-fit", "Fit path loss against distance or elevation cosine");
    plfit->add_option("--scenario", pa.scenario, "Scenario JSON file")->required();
    plfit->add_option("--variable", pa.variable,
                      "log10_d1 | log10_d2 | log10_cos_theta_r | log10_cos_theta_t");
    plfit->add_option("--method", pa.method, "Design method");
    plfit->add_option("--start", pa.start, "First sample (m or deg)");
    plfit->add_option("--stop", pa.stop, "Last sample (m or deg)");
    plfit->add_option("--step", pa.step, "Sample step (m or deg)");
    plfit->add_option("--out", pa.out, "Optional per-sample CSV path");
    plfit->callback([&] { action = [&] { return cmd_pl_fit(pa, out); }; });

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("--scenario", validate_path, "Scenario JSON file")->required();
    validate->callback([&] { action = [&] { return cmd_validate(validate_path, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const GuardError& e) {
        err << "refused: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace risq
