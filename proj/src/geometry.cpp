#include "risq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risq/units.hpp"

namespace risq {

namespace {

constexpr double kLevelTolerance = 1e-9;

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

Point3 unit(Point3 v) { return (1.0 / norm(v)) * v; }

double elevation_from_z(Point3 u) { return std::acos(std::clamp(u.z, -1.0, 1.0)); }

double azimuth_xy(double x, double y) {
    if (x == 0.0 && y == 0.0) return 0.0;
    return wrap_two_pi(std::atan2(y, x));
}

// Orthonormal frame (u, v, b) around boresight b, used for antenna-side azimuths.
struct Frame {
    Point3 u, v, b;
};

Frame frame_around(Point3 boresight) {
    Frame f;
    f.b = boresight;
    Point3 u = cross(Point3{0.0, 0.0, 1.0}, boresight);
    if (norm(u) < 1e-12) u = Point3{1.0, 0.0, 0.0};
    f.u = unit(u);
    f.v = cross(f.b, f.u);
    return f;
}

void check_cell(const RisPanel& panel, CellIndex c) {
    if (c.n < 1 || c.n > panel.cols() || c.m < 1 || c.m > panel.rows()) {
        throw DomainError("cell index (" + std::to_string(c.n) + ", " + std::to_string(c.m) +
                          ") outside 1.." + std::to_string(panel.cols()) + " x 1.." +
                          std::to_string(panel.rows()));
    }
}

}  // namespace

double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Point3 cross(Point3 a, Point3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(Point3 a) { return std::sqrt(dot(a, a)); }

RisPanel::RisPanel(int rows_m, int cols_n, double cell_dx, double cell_dy, int bits,
                   std::vector<double> levels_rad, double reflection)
    : rows_(rows_m),
      cols_(cols_n),
      dx_(cell_dx),
      dy_(cell_dy),
      bits_(bits),
      levels_(std::move(levels_rad)),
      reflection_(reflection) {
    if (rows_ < 1 || cols_ < 1) throw DomainError("panel needs at least one row and column");
    if (!finite_positive(dx_) || !finite_positive(dy_)) {
        throw DomainError("cell dimensions must be positive");
    }
    if (bits_ < 1 || bits_ > 16) throw DomainError("bit depth must be in 1..16");
    if (!(reflection_ > 0.0 && reflection_ <= 1.0)) {
        throw DomainError("reflection magnitude must be in (0, 1]");
    }
    if (levels_.size() != static_cast<std::size_t>(level_count())) {
        throw DomainError("expected " + std::to_string(level_count()) + " phase levels, got " +
                          std::to_string(levels_.size()));
    }
    for (double& l : levels_) {
        if (!std::isfinite(l)) throw DomainError("phase levels must be finite");
        l = wrap_two_pi(l);
    }
    const double omega = interval();
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
        const double step = wrap_two_pi(levels_[i + 1] - levels_[i]);
        if (std::abs(step - omega) > kLevelTolerance) {
            throw DomainError("phase levels must be uniformly spaced by 2*pi/2^q in order");
        }
    }
}

double RisPanel::interval() const noexcept { return kTwoPi / level_count(); }

double RisPanel::circumscribed_radius() const noexcept {
    return 0.5 * std::hypot(cols_ * dx_, rows_ * dy_);
}

RisPanel RisPanel::with_level_offset(double delta) const {
    std::vector<double> shifted(levels_);
    for (double& l : shifted) l += delta;
    return RisPanel(rows_, cols_, dx_, dy_, bits_, std::move(shifted), reflection_);
}

Placement::Placement(double d1, double d2, double theta_t, double phi_t, double theta_r,
                     double phi_r)
    : d1_(d1), d2_(d2), theta_t_(theta_t), phi_t_(phi_t), theta_r_(theta_r), phi_r_(phi_r) {
    if (!finite_positive(d1_) || !finite_positive(d2_)) {
        throw DomainError("Tx/Rx distances must be positive");
    }
    auto check_elevation = [](double t, const char* which) {
        if (!std::isfinite(t) || t < 0.0 || t >= kPi / 2.0) {
            throw DomainError(std::string(which) + " must be in [0, pi/2)");
        }
    };
    check_elevation(theta_t_, "theta_t");
    check_elevation(theta_r_, "theta_r");
    if (!std::isfinite(phi_t_) || !std::isfinite(phi_r_)) {
        throw DomainError("azimuths must be finite");
    }
    phi_t_ = wrap_two_pi(phi_t_);
    phi_r_ = wrap_two_pi(phi_r_);
}

Point3 Placement::tx_position() const { return spherical_to_cartesian(d1_, theta_t_, phi_t_); }
Point3 Placement::rx_position() const { return spherical_to_cartesian(d2_, theta_r_, phi_r_); }

Placement Placement::with_tx(double d1, double theta_t, double phi_t) const {
    return Placement(d1, d2_, theta_t, phi_t, theta_r_, phi_r_);
}

Placement Placement::with_rx(double d2, double theta_r, double phi_r) const {
    return Placement(d1_, d2, theta_t_, phi_t_, theta_r, phi_r);
}

Point3 cell_center(int n, int m, const RisPanel& panel) {
    check_cell(panel, {n, m});
    return {(panel.cols() + 1 - 2 * n) * panel.cell_dx() / 2.0,
            (panel.rows() + 1 - 2 * m) * panel.cell_dy() / 2.0, 0.0};
}

Point3 spherical_to_cartesian(double d, double theta, double phi) {
    return {d * std::sin(theta) * std::cos(phi), d * std::sin(theta) * std::sin(phi),
            d * std::cos(theta)};
}

PathGeometry path_length_matrices(const RisPanel& panel, const Placement& placement) {
    const auto rows = static_cast<std::size_t>(panel.rows());
    const auto cols = static_cast<std::size_t>(panel.cols());
    PathGeometry g{Grid<double>(rows, cols), Grid<double>(rows, cols)};
    const Point3 tx = placement.tx_position();
    const Point3 rx = placement.rx_position();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Point3 p = cell_center(static_cast<int>(c) + 1, static_cast<int>(r) + 1, panel);
            g.r_t(r, c) = norm(tx - p);
            g.r_r(r, c) = norm(rx - p);
        }
    }
    return g;
}

LocalAngles local_angle_matrices(const RisPanel& panel, const Placement& placement) {
    const auto rows = static_cast<std::size_t>(panel.rows());
    const auto cols = static_cast<std::size_t>(panel.cols());
    LocalAngles a;
    for (Grid<double>* g : {&a.theta_t_cell, &a.phi_t_cell, &a.theta_r_cell, &a.phi_r_cell,
                            &a.theta_tx, &a.phi_tx, &a.theta_rx, &a.phi_rx}) {
        *g = Grid<double>(rows, cols);
    }

    const Point3 tx = placement.tx_position();
    const Point3 rx = placement.rx_position();
    const Frame tx_frame = frame_around(unit(-1.0 * tx));
    const Frame rx_frame = frame_around(unit(-1.0 * rx));

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Point3 p = cell_center(static_cast<int>(c) + 1, static_cast<int>(r) + 1, panel);

            const Point3 to_tx = unit(tx - p);
            a.theta_t_cell(r, c) = elevation_from_z(to_tx);
            a.phi_t_cell(r, c) = azimuth_xy(to_tx.x, to_tx.y);

            const Point3 to_rx = unit(rx - p);
            a.theta_r_cell(r, c) = elevation_from_z(to_rx);
            a.phi_r_cell(r, c) = azimuth_xy(to_rx.x, to_rx.y);

            const Point3 from_tx = -1.0 * to_tx;
            a.theta_tx(r, c) = std::acos(std::clamp(dot(from_tx, tx_frame.b), -1.0, 1.0));
            a.phi_tx(r, c) = azimuth_xy(dot(from_tx, tx_frame.u), dot(from_tx, tx_frame.v));

            const Point3 from_rx = -1.0 * to_rx;
            a.theta_rx(r, c) = std::acos(std::clamp(dot(from_rx, rx_frame.b), -1.0, 1.0));
            a.phi_rx(r, c) = azimuth_xy(dot(from_rx, rx_frame.u), dot(from_rx, rx_frame.v));
        }
    }
    return a;
}

double wave_path_difference(const RisPanel& panel, const Placement& placement, CellIndex a,
                            CellIndex b) {
    check_cell(panel, a);
    check_cell(panel, b);
    const Point3 tx = placement.tx_position();
    const Point3 rx = placement.rx_position();
    auto total = [&](CellIndex c) {
        const Point3 p = cell_center(c.n, c.m, panel);
        return norm(tx - p) + norm(rx - p);
    };
    return std::abs(total(a) - total(b));
}

}  // namespace risq
