#pragma once

// Independent reference computations and random scenario generators. Nothing
// here calls into the library's geometry, channel, or quantization code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "risq/scenario.hpp"
#include "risq/units.hpp"

namespace risq::testing {

struct Vec3 {
    double x, y, z;
};

inline double dist(Vec3 a, Vec3 b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

inline double angle_between(Vec3 a, Vec3 b) {
    const double d = a.x * b.x + a.y * b.y + a.z * b.z;
    const double na = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
    const double nb = std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
    return std::acos(std::fmax(-1.0, std::fmin(1.0, d / (na * nb))));
}

// Plain-number description of a link, mirrored from a Scenario.
struct Link {
    int rows, cols;
    double dx, dy, lambda;
    double d1, d2, tt, pt, tr, pr;
    double alpha_tx, alpha_rx, alpha_cell;
    std::vector<double> levels;
};

inline Link link_of(const Scenario& s) {
    const double atx = std::pow(10.0, s.radio.gain_tx_dbi() / 10.0) / 2.0 - 1.0;
    const double arx = std::pow(10.0, s.radio.gain_rx_dbi() / 10.0) / 2.0 - 1.0;
    return {s.panel.rows(), s.panel.cols(), s.panel.cell_dx(), s.panel.cell_dy(),
            s.radio.wavelength(), s.placement.d1(), s.placement.d2(), s.placement.theta_t(),
            s.placement.phi_t(), s.placement.theta_r(), s.placement.phi_r(),
            std::fmax(atx, 0.0), std::fmax(arx, 0.0), s.radio.cell_alpha(), s.panel.levels()};
}

inline Vec3 oracle_cell(const Link& l, int r, int c) {
    // column c -> n = c + 1 along x, row r -> m = r + 1 along y
    return {l.dx * (l.cols - 1) / 2.0 - c * l.dx, l.dy * (l.rows - 1) / 2.0 - r * l.dy, 0.0};
}

inline Vec3 oracle_tx(const Link& l) {
    return {l.d1 * std::sin(l.tt) * std::cos(l.pt), l.d1 * std::sin(l.tt) * std::sin(l.pt),
            l.d1 * std::cos(l.tt)};
}

inline Vec3 oracle_rx(const Link& l) {
    return {l.d2 * std::sin(l.tr) * std::cos(l.pr), l.d2 * std::sin(l.tr) * std::sin(l.pr),
            l.d2 * std::cos(l.tr)};
}

inline double oracle_pattern(double theta, double alpha) {
    return theta < kPi / 2.0 ? std::pow(std::cos(theta), alpha) : 0.0;
}

// Per-cell complex contribution with the given shift, straight from the
// superposition formula (no phase reduction, no caching).
inline std::complex<double> oracle_term(const Link& l, int r, int c, double shift) {
    const Vec3 p = oracle_cell(l, r, c);
    const Vec3 tx = oracle_tx(l);
    const Vec3 rx = oracle_rx(l);
    const double rt = dist(tx, p);
    const double rr = dist(rx, p);
    const Vec3 normal{0.0, 0.0, 1.0};
    const double f = oracle_pattern(angle_between({p.x - tx.x, p.y - tx.y, p.z - tx.z}, {-tx.x, -tx.y, -tx.z}), l.alpha_tx) *
                     oracle_pattern(angle_between({tx.x - p.x, tx.y - p.y, tx.z - p.z}, normal), l.alpha_cell) *
                     oracle_pattern(angle_between({rx.x - p.x, rx.y - p.y, rx.z - p.z}, normal), l.alpha_cell) *
                     oracle_pattern(angle_between({p.x - rx.x, p.y - rx.y, p.z - rx.z}, {-rx.x, -rx.y, -rx.z}), l.alpha_rx);
    const double phase = 2.0 * kPi * (rt + rr) / l.lambda;
    return std::sqrt(f) / (rt * rr) * std::exp(std::complex<double>(0.0, -(phase - shift)));
}

// Continuous phase of one cell, mod(2*pi*L/lambda, 2*pi).
inline double oracle_phase(const Link& l, int r, int c) {
    const Vec3 p = oracle_cell(l, r, c);
    const double total = dist(oracle_tx(l), p) + dist(oracle_rx(l), p);
    double v = std::fmod(2.0 * kPi * total / l.lambda, 2.0 * kPi);
    return v < 0 ? v + 2.0 * kPi : v;
}

// xi for a shift assignment given as level indices (row-major).
inline double oracle_xi(const Link& l, const std::vector<int>& level_idx) {
    std::complex<double> sum{0.0, 0.0};
    for (int r = 0; r < l.rows; ++r)
        for (int c = 0; c < l.cols; ++c)
            sum += oracle_term(l, r, c, l.levels[level_idx[r * l.cols + c]]);
    return std::abs(sum);
}

// Brute force over every level assignment.
inline double oracle_best_xi(const Link& l) {
    const int cells = l.rows * l.cols;
    const int levels = static_cast<int>(l.levels.size());
    std::vector<int> idx(cells, 0);
    double best = 0.0;
    std::vector<std::complex<double>> terms(cells * levels);
    for (int k = 0; k < cells; ++k)
        for (int p = 0; p < levels; ++p) terms[k * levels + p] = oracle_term(l, k / l.cols, k % l.cols, l.levels[p]);
    while (true) {
        std::complex<double> s{0.0, 0.0};
        for (int k = 0; k < cells; ++k) s += terms[k * levels + idx[k]];
        best = std::fmax(best, std::abs(s));
        int pos = cells - 1;
        while (pos >= 0 && ++idx[pos] == levels) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return best;
}

// xi with every cell binned by threshold gamma (direct rule, no library call).
inline double oracle_threshold_xi(const Link& l, double gamma) {
    const int levels = static_cast<int>(l.levels.size());
    const double omega = 2.0 * kPi / levels;
    std::vector<int> idx;
    for (int r = 0; r < l.rows; ++r) {
        for (int c = 0; c < l.cols; ++c) {
            double ph = oracle_phase(l, r, c);
            if (ph < gamma) ph += 2.0 * kPi;
            int p = static_cast<int>(std::floor((ph - gamma) / omega));
            if (p >= levels) p = levels - 1;
            idx.push_back(p);
        }
    }
    return oracle_xi(l, idx);
}

// Composite Simpson integral of F(theta) sin(theta) over the sphere, returning
// the directive gain 4*pi / integral.
inline double oracle_gain_by_quadrature(double alpha, int intervals = 20000) {
    const double a = 0.0, b = kPi;
    const double h = (b - a) / intervals;
    auto f = [&](double t) { return oracle_pattern(t, alpha) * std::sin(t); };
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    const double integral = 2.0 * kPi * s * h / 3.0;
    return 4.0 * kPi / integral;
}

// Random near-field link on a small panel: cells lambda/2, distances a few
// wavelengths, random level offset.
inline Scenario random_scenario(std::mt19937_64& rng, int rows, int cols, int bits) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = 0.01 + 0.2 * u(rng);
    const double rho1 = 2.0 * kPi * u(rng);
    const int levels = 1 << bits;
    std::vector<double> lv;
    for (int p = 0; p < levels; ++p) lv.push_back(rho1 + p * 2.0 * kPi / levels);
    RisPanel panel(rows, cols, lambda / 2.0, lambda / 2.0, bits, lv);
    Placement placement(lambda * (1.0 + 9.0 * u(rng)), lambda * (1.0 + 9.0 * u(rng)),
                        deg2rad(70.0 * u(rng)), 2.0 * kPi * u(rng), deg2rad(70.0 * u(rng)),
                        2.0 * kPi * u(rng));
    RadioConfig radio(lambda, 0.0, 3.02 + 12.0 * u(rng), 3.02 + 12.0 * u(rng), 1.0);
    return Scenario{panel, placement, radio};
}

inline Scenario ris1_scenario(double d2 = 10.0) {
    const double lambda = kSpeedOfLight / 2.6e9;
    RisPanel panel(32, 16, lambda / 2.0, lambda / 2.0, 1, {deg2rad(55.0), deg2rad(235.0)});
    Placement placement(10.0, d2, kPi / 4.0, 0.0, kPi / 4.0, kPi);
    return Scenario{panel, placement, RadioConfig(lambda, 0.0, 8.25, 8.25, 1.0)};
}

inline Scenario ris2_scenario(double d2 = 50.0) {
    const double lambda = kSpeedOfLight / 4.9e9;
    RisPanel panel(50, 25, lambda / 2.0, lambda / 2.0, 2,
                   {0.0, deg2rad(90.0), deg2rad(180.0), deg2rad(270.0)});
    Placement placement(10.0, d2, kPi / 4.0, 0.0, kPi / 4.0, kPi);
    return Scenario{panel, placement, RadioConfig(lambda, 0.0, 8.25, 8.25, 1.0)};
}

}  // namespace risq::testing
