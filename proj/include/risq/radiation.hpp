#pragma once

#include "risq/geometry.hpp"

namespace risq {

// Linear-gain floor of a cosine-power pattern (alpha = 0), ~3.0103 dBi.
inline constexpr double kMinPatternGain = 2.0;

// Link-level radio parameters.
class RadioConfig {
public:
    RadioConfig(double wavelength, double tx_power_dbm, double gain_tx_dbi, double gain_rx_dbi,
                double cell_alpha = 1.0);

    double wavelength() const noexcept { return wavelength_; }
    double tx_power_dbm() const noexcept { return tx_power_dbm_; }
    double gain_tx_dbi() const noexcept { return gain_tx_dbi_; }
    double gain_rx_dbi() const noexcept { return gain_rx_dbi_; }
    double cell_alpha() const noexcept { return cell_alpha_; }

    double alpha_tx() const;
    double alpha_rx() const;

    RadioConfig with_tx_power(double dbm) const;

private:
    double wavelength_;
    double tx_power_dbm_;
    double gain_tx_dbi_;
    double gain_rx_dbi_;
    double cell_alpha_;
};

// Normalized power pattern (cos theta)^alpha on the front hemisphere, zero
// for theta >= pi/2. The azimuth is accepted but unused.
double cosine_pattern(double theta, double alpha, double phi = 0.0);

// Linear gain 2(alpha + 1) of a cosine-power pattern.
double alpha_to_gain(double alpha);
// Inverse in dBi; throws DomainError below the alpha = 0 floor.
double gain_dbi_to_alpha(double gain_dbi);

struct PatternAlphas {
    double tx = 0.0;
    double cell = 1.0;
    double rx = 0.0;
};

// F_tx * F_cell(incident) * F_cell(departure) * F_rx per cell.
Grid<double> combined_pattern_matrix(const LocalAngles& angles, const PatternAlphas& alphas);

}  // namespace risq
