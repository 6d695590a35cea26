#pragma once

#include <complex>
#include <vector>

#include "risq/geometry.hpp"
#include "risq/radiation.hpp"
#include "risq/scenario.hpp"
#include "risq/shift_matrix.hpp"

namespace risq {

struct FieldResult {
    double xi = 0.0;
    double received_power_dbm = 0.0;
    double path_loss_db = 0.0;
};

// mod(2*pi*(r_t + r_r)/lambda, 2*pi) per cell; applying these shifts co-phases
// every reflected path at the receiver.
PhaseMatrix continuous_phase_matrix(const PathGeometry& geom, double wavelength);

// Magnitude of the coherent sum of all cell contributions at the receiver,
// |sum sqrt(F)/(r_t r_r) * exp(-j(2*pi*(r_t + r_r)/lambda - shift))|,
// accumulated row-major.
double field_superposition(const PathGeometry& geom, const Grid<double>& combined,
                           const PhaseMatrix& shifts, double wavelength);
double field_superposition(const PathGeometry& geom, const Grid<double>& combined,
                           const ShiftMatrix& shifts, double wavelength);

// P_r = P_t G_t G_r (dx dy)^2 A^2 xi^2 / (16 pi^2) in dBm; -inf when xi == 0.
double received_power_dbm(const Scenario& scenario, double xi);
double received_power_dbm(const Scenario& scenario, const PhaseMatrix& shifts);
double received_power_dbm(const Scenario& scenario, const ShiftMatrix& shifts);

FieldResult field_result(const Scenario& scenario, double xi);

// Closed-form far-field path loss P_t / P_r in dB for perfectly co-phased
// continuous shifts.
double far_field_pl_db(const RisPanel& panel, const Placement& placement,
                       const RadioConfig& radio);

// Precomputed per-scenario link data for repeated field evaluations. Each cell
// contributes amplitude * exp(-j (phase - shift)) where phase is the entry of
// the continuous phase matrix.
class ChannelModel {
public:
    explicit ChannelModel(Scenario scenario);

    const Scenario& scenario() const noexcept { return scenario_; }
    const PathGeometry& geometry() const noexcept { return geometry_; }
    const LocalAngles& angles() const noexcept { return angles_; }
    const Grid<double>& combined_pattern() const noexcept { return combined_; }
    const PhaseMatrix& continuous_phases() const noexcept { return phases_; }
    const Grid<double>& amplitudes() const noexcept { return amplitudes_; }

    // amplitude * exp(-j phase), row-major.
    const std::vector<std::complex<double>>& phasors() const noexcept { return phasors_; }

    double xi(const PhaseMatrix& shifts) const;
    double xi(const ShiftMatrix& shifts) const;
    double continuous_xi() const;

    double power_dbm(double xi) const { return received_power_dbm(scenario_, xi); }

private:
    Scenario scenario_;
    PathGeometry geometry_;
    LocalAngles angles_;
    Grid<double> combined_;
    PhaseMatrix phases_;
    Grid<double> amplitudes_;
    std::vector<std::complex<double>> phasors_;
};

}  // namespace risq
