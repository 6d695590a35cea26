#pragma once

#include <optional>
#include <string>
#include <vector>

#include "risq/channel.hpp"
#include "risq/quantization.hpp"

namespace risq {

enum class Method { Continuous, Dtpq, Eipq, Fixed };

// A phase-design method plus its parameter (radians): the EIPQ step or the
// fixed threshold. Unset parameters take the defaults below.
struct MethodSpec {
    Method kind = Method::Continuous;
    std::optional<double> param;

    std::string name() const;
};

inline constexpr double kDefaultEipqStepDeg = 5.0;

// Fixed threshold defaults to the last level of the panel.
double method_parameter(const MethodSpec& spec, const RisPanel& panel);

// Phase design produced by one method on one link.
struct MethodDesign {
    PhaseMatrix shifts;
    std::optional<double> threshold;
    double xi = 0.0;
    double power_dbm = 0.0;
};

MethodDesign design(const ChannelModel& model, const MethodSpec& spec);

enum class SweepAxis { RxDistance, TxDistance, ThetaR, Threshold };

// Axis values are in axis units: meters for distances, degrees for angles and
// thresholds.
struct SweepSpec {
    SweepAxis axis = SweepAxis::RxDistance;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<MethodSpec> methods;
};

struct MethodValue {
    double power_dbm = 0.0;
    std::optional<double> threshold;  // radians
};

struct SweepRow {
    double axis_value = 0.0;
    std::vector<MethodValue> values;  // one per method, in spec order
};

// start, start + step, ... up to stop (inclusive up to rounding). A single
// point when start == stop.
std::vector<double> axis_grid(double start, double stop, double step);

// Rx placement at a signed elevation: negative angles mirror to the opposite
// azimuth. Empty when |theta| >= pi/2 (grazing or behind the panel).
std::optional<Placement> rx_at_elevation(const Placement& base, double theta_signed);

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepSpec& spec);

// Shifts are designed once with Rx at `target` (signed elevation, same d2 and
// azimuth), then evaluated with Rx moved to each elevation in `thetas`
// (radians). Rows carry the elevation in radians.
std::vector<SweepRow> angle_scan(const Scenario& scenario, const std::vector<double>& thetas,
                                 double target, const std::vector<MethodSpec>& methods);

struct GradientMap {
    std::vector<double> thetas;  // radians, one per row
    std::vector<double> phis;    // radians, one per column
    Grid<double> power_dbm;
};

// Received power over an (elevation, azimuth) grid of Rx directions at fixed
// d2, with shifts designed once for the target direction.
GradientMap gradient_map(const Scenario& scenario, double target_theta, double target_phi,
                         const std::vector<double>& thetas, const std::vector<double>& phis,
                         const MethodSpec& method);

enum class PlVariable { Log10D1, Log10D2, Log10CosThetaR, Log10CosThetaT };

std::string to_string(PlVariable v);

struct SlopeFit {
    PlVariable variable = PlVariable::Log10D2;
    double slope = 0.0;
    double intercept = 0.0;  // dB
    double r_squared = 0.0;
    std::vector<double> x;  // 10*log10 of the variable
    std::vector<double> pl_db;
    std::vector<double> residuals;
};

// Path loss P_t - P_r (dB) with the method re-run at each sample. Samples are
// distances in meters, or elevations in radians for the cosine variables.
std::vector<double> pl_curve(const Scenario& scenario, PlVariable variable,
                             const std::vector<double>& samples, const MethodSpec& method);

// Ordinary least squares of PL_dB against 10*log10(variable).
SlopeFit pl_slope_fit(const Scenario& scenario, PlVariable variable,
                      const std::vector<double>& samples, const MethodSpec& method);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace risq
