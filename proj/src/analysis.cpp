#include "risq/analysis.hpp"

#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "risq/units.hpp"

namespace risq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

MethodValue unreachable_value() { return {kNegInf, std::nullopt}; }

void check_methods(const std::vector<MethodSpec>& methods) {
    if (methods.empty()) throw DomainError("at least one method is required");
}

std::vector<MethodValue> evaluate_all(const ChannelModel& model,
                                      const std::vector<MethodSpec>& methods) {
    std::vector<MethodValue> out;
    out.reserve(methods.size());
    for (const MethodSpec& m : methods) {
        const MethodDesign d = design(model, m);
        out.push_back({d.power_dbm, d.threshold});
    }
    return out;
}

}  // namespace

std::string MethodSpec::name() const {
    switch (kind) {
        case Method::Continuous: return "continuous";
        case Method::Dtpq: return "dtpq";
        case Method::Eipq: return "eipq";
        case Method::Fixed: return "fixed";
    }
    return "unknown";
}

double method_parameter(const MethodSpec& spec, const RisPanel& panel) {
    if (spec.param) return *spec.param;
    switch (spec.kind) {
        case Method::Eipq: return deg2rad(kDefaultEipqStepDeg);
        case Method::Fixed: return panel.levels().back();
        default: return 0.0;
    }
}

MethodDesign design(const ChannelModel& model, const MethodSpec& spec) {
    const RisPanel& panel = model.scenario().panel;
    auto from_result = [&](const QuantizationResult& r) {
        return MethodDesign{r.shifts.to_phases(), r.threshold, r.xi, r.received_power_dbm};
    };
    switch (spec.kind) {
        case Method::Continuous: {
            const double xi = model.continuous_xi();
            return {model.continuous_phases(), std::nullopt, xi, model.power_dbm(xi)};
        }
        case Method::Dtpq: return from_result(dtpq(model));
        case Method::Eipq: return from_result(eipq(model, method_parameter(spec, panel)));
        case Method::Fixed: return from_result(fixed_threshold(model, method_parameter(spec, panel)));
    }
    throw DomainError("unknown method");
}

std::vector<double> axis_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
        throw DomainError("sweep bounds must be finite");
    }
    if (!(step > 0.0)) throw DomainError("sweep step must be positive");
    if (start > stop) throw DomainError("sweep start must not exceed stop");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::optional<Placement> rx_at_elevation(const Placement& base, double theta_signed) {
    if (!std::isfinite(theta_signed) || std::abs(theta_signed) >= kPi / 2.0) return std::nullopt;
    const double phi = theta_signed < 0.0 ? base.phi_r() + kPi : base.phi_r();
    return base.with_rx(base.d2(), std::abs(theta_signed), phi);
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec) {
    check_methods(spec.methods);
    const std::vector<double> grid = axis_grid(spec.start, spec.stop, spec.step);
    std::vector<SweepRow> rows(grid.size());

    if (spec.axis == SweepAxis::Threshold) {
        if (spec.methods.size() != 1 || spec.methods.front().kind != Method::Fixed) {
            throw DomainError("a threshold sweep evaluates exactly one fixed method");
        }
        const ChannelModel model(scenario);
        detail::parallel_for(grid.size(), [&](std::size_t i) {
            const QuantizationResult r = fixed_threshold(model, wrap_two_pi(deg2rad(grid[i])));
            rows[i] = {grid[i], {{r.received_power_dbm, r.threshold}}};
        });
        return rows;
    }

    detail::parallel_for(grid.size(), [&](std::size_t i) {
        const double v = grid[i];
        const Placement& base = scenario.placement;
        std::optional<Placement> placement;
        switch (spec.axis) {
            case SweepAxis::RxDistance:
                placement = base.with_rx(v, base.theta_r(), base.phi_r());
                break;
            case SweepAxis::TxDistance:
                placement = base.with_tx(v, base.theta_t(), base.phi_t());
                break;
            case SweepAxis::ThetaR: placement = rx_at_elevation(base, deg2rad(v)); break;
            case SweepAxis::Threshold: break;
        }
        rows[i].axis_value = v;
        if (!placement) {
            rows[i].values.assign(spec.methods.size(), unreachable_value());
            return;
        }
        rows[i].values = evaluate_all(ChannelModel(scenario.with_placement(*placement)), spec.methods);
    });
    return rows;
}

std::vector<SweepRow> angle_scan(const Scenario& scenario, const std::vector<double>& thetas,
                                 double target, const std::vector<MethodSpec>& methods) {
    check_methods(methods);
    const std::optional<Placement> design_at = rx_at_elevation(scenario.placement, target);
    if (!design_at) throw DomainError("design target must lie in (-pi/2, pi/2)");

    const ChannelModel target_model(scenario.with_placement(*design_at));
    std::vector<MethodDesign> designs;
    designs.reserve(methods.size());
    for (const MethodSpec& m : methods) designs.push_back(design(target_model, m));

    std::vector<SweepRow> rows(thetas.size());
    detail::parallel_for(thetas.size(), [&](std::size_t i) {
        rows[i].axis_value = thetas[i];
        const std::optional<Placement> p = rx_at_elevation(scenario.placement, thetas[i]);
        if (!p) {
            rows[i].values.assign(methods.size(), unreachable_value());
            return;
        }
        const ChannelModel model(scenario.with_placement(*p));
        for (const MethodDesign& d : designs) {
            rows[i].values.push_back({model.power_dbm(model.xi(d.shifts)), d.threshold});
        }
    });
    return rows;
}

GradientMap gradient_map(const Scenario& scenario, double target_theta, double target_phi,
                         const std::vector<double>& thetas, const std::vector<double>& phis,
                         const MethodSpec& method) {
    if (thetas.empty() || phis.empty()) throw DomainError("gradient map grids must be non-empty");
    const Placement& base = scenario.placement;
    const ChannelModel target_model(
        scenario.with_placement(base.with_rx(base.d2(), target_theta, target_phi)));
    const PhaseMatrix shifts = design(target_model, method).shifts;

    GradientMap map{thetas, phis, Grid<double>(thetas.size(), phis.size())};
    detail::parallel_for(thetas.size(), [&](std::size_t r) {
        for (std::size_t c = 0; c < phis.size(); ++c) {
            if (!std::isfinite(thetas[r]) || thetas[r] < 0.0 || thetas[r] >= kPi / 2.0) {
                map.power_dbm(r, c) = kNegInf;
                continue;
            }
            const ChannelModel model(
                scenario.with_placement(base.with_rx(base.d2(), thetas[r], phis[c])));
            map.power_dbm(r, c) = model.power_dbm(model.xi(shifts));
        }
    });
    return map;
}

std::string to_string(PlVariable v) {
    switch (v) {
        case PlVariable::Log10D1: return "log10_d1";
        case PlVariable::Log10D2: return "log10_d2";
        case PlVariable::Log10CosThetaR: return "log10_cos_theta_r";
        case PlVariable::Log10CosThetaT: return "log10_cos_theta_t";
    }
    return "unknown";
}

std::vector<double> pl_curve(const Scenario& scenario, PlVariable variable,
                             const std::vector<double>& samples, const MethodSpec& method) {
    std::vector<double> out(samples.size());
    const Placement& base = scenario.placement;
    detail::parallel_for(samples.size(), [&](std::size_t i) {
        const double s = samples[i];
        Placement p = base;
        switch (variable) {
            case PlVariable::Log10D1: p = base.with_tx(s, base.theta_t(), base.phi_t()); break;
            case PlVariable::Log10D2: p = base.with_rx(s, base.theta_r(), base.phi_r()); break;
            case PlVariable::Log10CosThetaR: p = base.with_rx(base.d2(), s, base.phi_r()); break;
            case PlVariable::Log10CosThetaT: p = base.with_tx(base.d1(), s, base.phi_t()); break;
        }
        const ChannelModel model(scenario.with_placement(p));
        out[i] = scenario.radio.tx_power_dbm() - design(model, method).power_dbm;
    });
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("fit_line: length mismatch");
    if (x.size() < 3) throw DomainError("fit_line: at least three samples are required");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !std::isfinite(sxx)) throw DomainError("fit_line: singular design matrix");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return f;
}

SlopeFit pl_slope_fit(const Scenario& scenario, PlVariable variable,
                      const std::vector<double>& samples, const MethodSpec& method) {
    if (samples.size() < 3) throw DomainError("pl_slope_fit: at least three samples are required");
    SlopeFit fit;
    fit.variable = variable;
    fit.x.reserve(samples.size());
    for (double s : samples) {
        const bool angle = variable == PlVariable::Log10CosThetaR ||
                           variable == PlVariable::Log10CosThetaT;
        const double v = angle ? std::cos(s) : s;
        if (!(v > 0.0)) throw DomainError("pl_slope_fit: variable must be positive over the grid");
        fit.x.push_back(10.0 * std::log10(v));
    }
    fit.pl_db = pl_curve(scenario, variable, samples, method);
    const LineFit line = fit_line(fit.x, fit.pl_db);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.residuals.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        fit.residuals.push_back(fit.pl_db[i] - (line.intercept + line.slope * fit.x[i]));
    }
    return fit;
}

}  // namespace risq
