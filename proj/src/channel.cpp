#include "risq/channel.hpp"

#include <cmath>
#include <limits>

#include "risq/units.hpp"

namespace risq {

ShiftMatrix::ShiftMatrix(Grid<std::uint16_t> level_indices, std::vector<double> levels)
    : indices_(std::move(level_indices)), levels_(std::move(levels)) {
    for (std::uint16_t idx : indices_.flat()) {
        if (idx >= levels_.size()) throw DomainError("shift level index out of range");
    }
}

PhaseMatrix ShiftMatrix::to_phases() const {
    PhaseMatrix out(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols(); ++c) out(r, c) = phase(r, c);
    }
    return out;
}

PhaseMatrix continuous_phase_matrix(const PathGeometry& geom, double wavelength) {
    require_same_shape(geom.r_t, geom.r_r, "continuous_phase_matrix");
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    PhaseMatrix out(geom.r_t.rows(), geom.r_t.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) {
            out(r, c) = wrap_two_pi(kTwoPi * (geom.r_t(r, c) + geom.r_r(r, c)) / wavelength);
        }
    }
    return out;
}

double field_superposition(const PathGeometry& geom, const Grid<double>& combined,
                           const PhaseMatrix& shifts, double wavelength) {
    require_same_shape(geom.r_t, geom.r_r, "field_superposition");
    require_same_shape(geom.r_t, combined, "field_superposition");
    require_same_shape(geom.r_t, shifts, "field_superposition");
    const PhaseMatrix path_phase = continuous_phase_matrix(geom, wavelength);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t r = 0; r < shifts.rows(); ++r) {
        for (std::size_t c = 0; c < shifts.cols(); ++c) {
            const double amp = std::sqrt(combined(r, c)) / (geom.r_t(r, c) * geom.r_r(r, c));
            const double residual = wrap_two_pi(path_phase(r, c) - shifts(r, c));
            sum += std::polar(amp, -residual);
        }
    }
    return std::abs(sum);
}

double field_superposition(const PathGeometry& geom, const Grid<double>& combined,
                           const ShiftMatrix& shifts, double wavelength) {
    return field_superposition(geom, combined, shifts.to_phases(), wavelength);
}

double received_power_dbm(const Scenario& scenario, double xi) {
    if (!(xi > 0.0)) return -std::numeric_limits<double>::infinity();
    const RisPanel& p = scenario.panel;
    const RadioConfig& radio = scenario.radio;
    const double area = p.cell_dx() * p.cell_dy();
    const double a = p.reflection();
    const double gains = db_to_linear(radio.gain_tx_dbi() + radio.gain_rx_dbi());
    return radio.tx_power_dbm() +
           linear_to_db(gains * area * area * a * a * xi * xi / (16.0 * kPi * kPi));
}

double received_power_dbm(const Scenario& scenario, const PhaseMatrix& shifts) {
    const ChannelModel model(scenario);
    return model.power_dbm(model.xi(shifts));
}

double received_power_dbm(const Scenario& scenario, const ShiftMatrix& shifts) {
    const ChannelModel model(scenario);
    return model.power_dbm(model.xi(shifts));
}

FieldResult field_result(const Scenario& scenario, double xi) {
    FieldResult out;
    out.xi = xi;
    out.received_power_dbm = received_power_dbm(scenario, xi);
    out.path_loss_db = scenario.radio.tx_power_dbm() - out.received_power_dbm;
    return out;
}

double far_field_pl_db(const RisPanel& panel, const Placement& placement,
                       const RadioConfig& radio) {
    const double cos_t = std::cos(placement.theta_t());
    const double cos_r = std::cos(placement.theta_r());
    if (!(cos_t > 0.0) || !(cos_r > 0.0)) {
        throw DomainError("far-field path loss needs elevations below pi/2");
    }
    const double aperture = static_cast<double>(panel.cell_count()) * panel.cell_dx() *
                            panel.cell_dy();
    const double a = panel.reflection();
    const double gains = db_to_linear(radio.gain_tx_dbi() + radio.gain_rx_dbi());
    const double dd = placement.d1() * placement.d2();
    return linear_to_db(16.0 * kPi * kPi * dd * dd /
                        (gains * aperture * aperture * cos_t * cos_r * a * a));
}

ChannelModel::ChannelModel(Scenario scenario)
    : scenario_(std::move(scenario)),
      geometry_(path_length_matrices(scenario_.panel, scenario_.placement)),
      angles_(local_angle_matrices(scenario_.panel, scenario_.placement)),
      combined_(combined_pattern_matrix(
          angles_, {scenario_.radio.alpha_tx(), scenario_.radio.cell_alpha(),
                    scenario_.radio.alpha_rx()})),
      phases_(continuous_phase_matrix(geometry_, scenario_.radio.wavelength())),
      amplitudes_(phases_.rows(), phases_.cols()) {
    phasors_.reserve(phases_.size());
    for (std::size_t r = 0; r < phases_.rows(); ++r) {
        for (std::size_t c = 0; c < phases_.cols(); ++c) {
            amplitudes_(r, c) =
                std::sqrt(combined_(r, c)) / (geometry_.r_t(r, c) * geometry_.r_r(r, c));
            phasors_.push_back(std::polar(amplitudes_(r, c), -phases_(r, c)));
        }
    }
}

double ChannelModel::xi(const PhaseMatrix& shifts) const {
    require_same_shape(phases_, shifts, "ChannelModel::xi");
    std::complex<double> sum{0.0, 0.0};
    const auto flat = shifts.flat();
    for (std::size_t i = 0; i < phasors_.size(); ++i) {
        sum += phasors_[i] * std::polar(1.0, flat[i]);
    }
    return std::abs(sum);
}

double ChannelModel::xi(const ShiftMatrix& shifts) const {
    require_same_shape(phases_, shifts, "ChannelModel::xi");
    const auto& levels = shifts.levels();
    std::vector<std::complex<double>> bins(levels.size());
    const auto idx = shifts.level_indices().flat();
    for (std::size_t i = 0; i < phasors_.size(); ++i) bins[idx[i]] += phasors_[i];
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t p = 0; p < levels.size(); ++p) sum += bins[p] * std::polar(1.0, levels[p]);
    return std::abs(sum);
}

double ChannelModel::continuous_xi() const {
    double sum = 0.0;
    for (double a : amplitudes_.flat()) sum += a;
    return sum;
}

}  // namespace risq
