#include "risq/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "risq/units.hpp"

namespace risq {

namespace {

void check_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0 || gamma >= kTwoPi) {
        throw DomainError("quantization threshold must be in [0, 2*pi)");
    }
}

// xi for a threshold without materializing the shift matrix.
double threshold_xi(const ChannelModel& model, double gamma,
                    std::vector<std::complex<double>>& bins) {
    const RisPanel& panel = model.scenario().panel;
    const auto phases = model.continuous_phases().flat();
    const auto& phasors = model.phasors();
    const int levels = panel.level_count();
    std::fill(bins.begin(), bins.end(), std::complex<double>{});
    for (std::size_t i = 0; i < phases.size(); ++i) {
        bins[quantization_bin(phases[i], gamma, levels)] += phasors[i];
    }
    std::complex<double> sum{0.0, 0.0};
    for (int p = 0; p < levels; ++p) sum += bins[p] * std::polar(1.0, panel.levels()[p]);
    return std::abs(sum);
}

QuantizationResult finish(const ChannelModel& model, std::optional<double> threshold,
                          ShiftMatrix shifts, std::size_t evaluated) {
    const double xi = model.xi(shifts);
    return {threshold, std::move(shifts), xi, model.power_dbm(xi), evaluated};
}

// Odometer step with the last cell varying fastest; false once it wraps.
bool advance(std::vector<std::uint16_t>& digits, int levels) {
    for (std::size_t pos = digits.size(); pos-- > 0;) {
        if (++digits[pos] < levels) return true;
        digits[pos] = 0;
    }
    return false;
}

}  // namespace

int quantization_bin(double phase, double gamma, int level_count) {
    const double omega = kTwoPi / level_count;
    const double offset = wrap_two_pi(phase - gamma);
    const int p = static_cast<int>(std::floor(offset / omega));
    return std::clamp(p, 0, level_count - 1);
}

ShiftMatrix quantize_matrix(const PhaseMatrix& phases, double gamma, const RisPanel& panel) {
    check_gamma(gamma);
    if (phases.rows() != static_cast<std::size_t>(panel.rows()) ||
        phases.cols() != static_cast<std::size_t>(panel.cols())) {
        throw DomainError("quantize_matrix: phase matrix does not match the panel");
    }
    Grid<std::uint16_t> idx(phases.rows(), phases.cols());
    for (std::size_t r = 0; r < phases.rows(); ++r) {
        for (std::size_t c = 0; c < phases.cols(); ++c) {
            idx(r, c) =
                static_cast<std::uint16_t>(quantization_bin(phases(r, c), gamma, panel.level_count()));
        }
    }
    return ShiftMatrix(std::move(idx), panel.levels());
}

double residual_spread(const PhaseMatrix& phases, const PhaseMatrix& shifts) {
    require_same_shape(phases, shifts, "residual_spread");
    if (phases.empty()) return 0.0;
    std::vector<double> res;
    res.reserve(phases.size());
    const auto ph = phases.flat();
    const auto sh = shifts.flat();
    for (std::size_t i = 0; i < ph.size(); ++i) res.push_back(wrap_two_pi(ph[i] - sh[i]));
    std::sort(res.begin(), res.end());
    double largest_gap = res.front() + kTwoPi - res.back();
    for (std::size_t i = 1; i < res.size(); ++i) {
        largest_gap = std::max(largest_gap, res[i] - res[i - 1]);
    }
    const double spread = kTwoPi - largest_gap;
    return spread < 0.0 ? 0.0 : spread;
}

double residual_spread(const PhaseMatrix& phases, const ShiftMatrix& shifts) {
    return residual_spread(phases, shifts.to_phases());
}

ThresholdSet dtpq_thresholds(const PhaseMatrix& phases) {
    return {std::vector<double>(phases.flat().begin(), phases.flat().end()),
            ThresholdKind::DtpqMatrix};
}

ThresholdSet eipq_thresholds(const RisPanel& panel, double epsilon) {
    const double omega = panel.interval();
    if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon >= omega) {
        throw DomainError("EIPQ step must be in (0, 2*pi/2^q)");
    }
    // Relative slack so that steps dividing Omega exactly (5 deg into 180 deg)
    // are not lost to rounding in the division.
    const auto k = static_cast<std::size_t>(std::floor(omega / epsilon * (1.0 + 1e-12)));
    ThresholdSet set{{}, ThresholdKind::EipqGrid};
    set.values.reserve(k);
    for (std::size_t i = 0; i < k; ++i) set.values.push_back(static_cast<double>(i) * epsilon);
    return set;
}

QuantizationResult best_threshold(const ChannelModel& model, const ThresholdSet& candidates) {
    if (candidates.values.empty()) throw DomainError("empty threshold set");
    std::vector<std::complex<double>> bins(model.scenario().panel.level_count());
    double best_xi = -1.0;
    double best_gamma = 0.0;
    for (double gamma : candidates.values) {
        check_gamma(gamma);
        const double xi = threshold_xi(model, gamma, bins);
        const double tol = kTieTolerance * std::max(best_xi, 0.0);
        if (xi > best_xi + tol) {
            best_xi = xi;
            best_gamma = gamma;
        } else if (xi >= best_xi - tol && gamma < best_gamma) {
            best_xi = std::max(best_xi, xi);
            best_gamma = gamma;
        }
    }
    return finish(model, best_gamma,
                  quantize_matrix(model.continuous_phases(), best_gamma, model.scenario().panel),
                  candidates.values.size());
}

QuantizationResult dtpq(const ChannelModel& model) {
    return best_threshold(model, dtpq_thresholds(model.continuous_phases()));
}

QuantizationResult dtpq(const Scenario& scenario) { return dtpq(ChannelModel(scenario)); }

QuantizationResult eipq(const ChannelModel& model, double epsilon) {
    return best_threshold(model, eipq_thresholds(model.scenario().panel, epsilon));
}

QuantizationResult eipq(const Scenario& scenario, double epsilon) {
    return eipq(ChannelModel(scenario), epsilon);
}

QuantizationResult fixed_threshold(const ChannelModel& model, double gamma) {
    check_gamma(gamma);
    return finish(model, gamma,
                  quantize_matrix(model.continuous_phases(), gamma, model.scenario().panel), 1);
}

QuantizationResult fixed_threshold(const Scenario& scenario, double gamma) {
    return fixed_threshold(ChannelModel(scenario), gamma);
}

QuantizationResult exhaustive_search(const ChannelModel& model) {
    const RisPanel& panel = model.scenario().panel;
    const auto cells = panel.cell_count();
    const auto bits = static_cast<std::size_t>(panel.bits()) * cells;
    if (bits > static_cast<std::size_t>(kExhaustiveMaxBits)) {
        throw GuardError("exhaustive search limited to q*M*N <= " +
                         std::to_string(kExhaustiveMaxBits) + " (got " + std::to_string(bits) +
                         ")");
    }
    const int levels = panel.level_count();
    std::vector<std::complex<double>> rotor(levels);
    for (int p = 0; p < levels; ++p) rotor[p] = std::polar(1.0, panel.levels()[p]);

    const auto& phasors = model.phasors();
    std::vector<std::uint16_t> digits(cells, 0);
    std::vector<std::uint16_t> best_digits = digits;
    double best_xi = -1.0;
    std::size_t evaluated = 0;
    while (true) {
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < cells; ++i) sum += phasors[i] * rotor[digits[i]];
        const double xi = std::abs(sum);
        ++evaluated;
        if (xi > best_xi + kTieTolerance * std::max(best_xi, 0.0)) {
            best_xi = xi;
            best_digits = digits;
        }
        if (!advance(digits, levels)) break;
    }

    Grid<std::uint16_t> idx(static_cast<std::size_t>(panel.rows()),
                            static_cast<std::size_t>(panel.cols()));
    std::copy(best_digits.begin(), best_digits.end(), idx.flat().begin());
    return finish(model, std::nullopt, ShiftMatrix(std::move(idx), panel.levels()), evaluated);
}

QuantizationResult exhaustive_search(const Scenario& scenario) {
    return exhaustive_search(ChannelModel(scenario));
}

}  // namespace risq
