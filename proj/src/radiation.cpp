#include "risq/radiation.hpp"

#include <cmath>

#include "risq/units.hpp"

namespace risq {

namespace {

// Slack for gains written to a couple of decimals, e.g. "3.01 dBi".
constexpr double kGainFloorSlackDb = 1e-9;

}  // namespace

RadioConfig::RadioConfig(double wavelength, double tx_power_dbm, double gain_tx_dbi,
                         double gain_rx_dbi, double cell_alpha)
    : wavelength_(wavelength),
      tx_power_dbm_(tx_power_dbm),
      gain_tx_dbi_(gain_tx_dbi),
      gain_rx_dbi_(gain_rx_dbi),
      cell_alpha_(cell_alpha) {
    if (!std::isfinite(wavelength_) || wavelength_ <= 0.0) {
        throw DomainError("wavelength must be positive");
    }
    if (!std::isfinite(tx_power_dbm_)) throw DomainError("tx power must be finite");
    // Validates the gain floor.
    (void)gain_dbi_to_alpha(gain_tx_dbi_);
    (void)gain_dbi_to_alpha(gain_rx_dbi_);
    if (!std::isfinite(cell_alpha_) || cell_alpha_ < 0.0) {
        throw DomainError("cell pattern exponent must be >= 0");
    }
}

double RadioConfig::alpha_tx() const { return gain_dbi_to_alpha(gain_tx_dbi_); }
double RadioConfig::alpha_rx() const { return gain_dbi_to_alpha(gain_rx_dbi_); }

RadioConfig RadioConfig::with_tx_power(double dbm) const {
    return RadioConfig(wavelength_, dbm, gain_tx_dbi_, gain_rx_dbi_, cell_alpha_);
}

double cosine_pattern(double theta, double alpha, double /*phi*/) {
    if (!(alpha >= 0.0)) throw DomainError("pattern exponent must be >= 0");
    if (theta < 0.0 || theta >= kPi / 2.0) return 0.0;
    return std::pow(std::cos(theta), alpha);
}

double alpha_to_gain(double alpha) {
    if (!(alpha >= 0.0)) throw DomainError("pattern exponent must be >= 0");
    return 2.0 * (alpha + 1.0);
}

double gain_dbi_to_alpha(double gain_dbi) {
    if (!std::isfinite(gain_dbi)) throw DomainError("gain must be finite");
    const double alpha = db_to_linear(gain_dbi) / 2.0 - 1.0;
    if (alpha < 0.0) {
        if (gain_dbi >= linear_to_db(kMinPatternGain) - kGainFloorSlackDb) return 0.0;
        throw DomainError("gain below the 3.0103 dBi cosine-pattern floor");
    }
    return alpha;
}

Grid<double> combined_pattern_matrix(const LocalAngles& angles, const PatternAlphas& alphas) {
    const auto& ref = angles.theta_t_cell;
    for (const Grid<double>* g : {&angles.phi_t_cell, &angles.theta_r_cell, &angles.phi_r_cell,
                                  &angles.theta_tx, &angles.phi_tx, &angles.theta_rx,
                                  &angles.phi_rx}) {
        require_same_shape(ref, *g, "combined_pattern_matrix");
    }
    Grid<double> out(ref.rows(), ref.cols());
    for (std::size_t r = 0; r < ref.rows(); ++r) {
        for (std::size_t c = 0; c < ref.cols(); ++c) {
            out(r, c) = cosine_pattern(angles.theta_tx(r, c), alphas.tx, angles.phi_tx(r, c)) *
                        cosine_pattern(angles.theta_t_cell(r, c), alphas.cell,
                                       angles.phi_t_cell(r, c)) *
                        cosine_pattern(angles.theta_r_cell(r, c), alphas.cell,
                                       angles.phi_r_cell(r, c)) *
                        cosine_pattern(angles.theta_rx(r, c), alphas.rx, angles.phi_rx(r, c));
        }
    }
    return out;
}

}  // namespace risq
