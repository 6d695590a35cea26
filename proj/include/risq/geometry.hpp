#pragma once

#include <cstddef>
#include <vector>

#include "risq/grid.hpp"

namespace risq {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Point3&, const Point3&) = default;
};

double dot(Point3 a, Point3 b);
Point3 cross(Point3 a, Point3 b);
double norm(Point3 a);

// 1-based cell index: n counts along x (1..N), m along y (1..M).
struct CellIndex {
    int n = 1;
    int m = 1;
};

// Surface geometry and phase-shift capability. Levels are stored in radians,
// reduced to [0, 2*pi), in the caller's order; consecutive levels must be one
// quantization interval apart.
class RisPanel {
public:
    RisPanel(int rows_m, int cols_n, double cell_dx, double cell_dy, int bits,
             std::vector<double> levels_rad, double reflection = 1.0);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t cell_count() const noexcept { return static_cast<std::size_t>(rows_) * cols_; }
    double cell_dx() const noexcept { return dx_; }
    double cell_dy() const noexcept { return dy_; }
    int bits() const noexcept { return bits_; }
    int level_count() const noexcept { return 1 << bits_; }
    const std::vector<double>& levels() const noexcept { return levels_; }
    double reflection() const noexcept { return reflection_; }

    // Quantization interval 2*pi / 2^q.
    double interval() const noexcept;

    // Radius of the circle through the four panel corners.
    double circumscribed_radius() const noexcept;

    // Same panel with every level shifted by delta.
    RisPanel with_level_offset(double delta) const;

private:
    int rows_;
    int cols_;
    double dx_;
    double dy_;
    int bits_;
    std::vector<double> levels_;
    double reflection_;
};

// Tx and Rx placement relative to the panel centre. Elevations are measured from
// the panel normal (+z) and must be in [0, pi/2); azimuths are reduced to [0, 2*pi).
class Placement {
public:
    Placement(double d1, double d2, double theta_t, double phi_t, double theta_r, double phi_r);

    double d1() const noexcept { return d1_; }
    double d2() const noexcept { return d2_; }
    double theta_t() const noexcept { return theta_t_; }
    double phi_t() const noexcept { return phi_t_; }
    double theta_r() const noexcept { return theta_r_; }
    double phi_r() const noexcept { return phi_r_; }

    Point3 tx_position() const;
    Point3 rx_position() const;

    Placement with_tx(double d1, double theta_t, double phi_t) const;
    Placement with_rx(double d2, double theta_r, double phi_r) const;

private:
    double d1_, d2_, theta_t_, phi_t_, theta_r_, phi_r_;
};

struct PathGeometry {
    Grid<double> r_t;  // Tx -> cell, meters
    Grid<double> r_r;  // cell -> Rx, meters
};

// Per-cell angles. Cell-side elevations are measured from the panel normal;
// antenna-side elevations from each antenna's boresight, which points at the
// panel centre.
struct LocalAngles {
    Grid<double> theta_t_cell, phi_t_cell;
    Grid<double> theta_r_cell, phi_r_cell;
    Grid<double> theta_tx, phi_tx;
    Grid<double> theta_rx, phi_rx;
};

Point3 cell_center(int n, int m, const RisPanel& panel);
Point3 spherical_to_cartesian(double d, double theta, double phi);

PathGeometry path_length_matrices(const RisPanel& panel, const Placement& placement);
LocalAngles local_angle_matrices(const RisPanel& panel, const Placement& placement);

// |(r_t + r_r)(a) - (r_t + r_r)(b)| in meters.
double wave_path_difference(const RisPanel& panel, const Placement& placement, CellIndex a,
                            CellIndex b);

}  // namespace risq
