#pragma once

#include <cstdint>
#include <vector>

#include "risq/grid.hpp"

namespace risq {

// Ideal continuous phase shifts in [0, 2*pi), panel-shaped.
using PhaseMatrix = Grid<double>;

// Discrete phase shifts stored as indices into the panel's level set, so every
// entry is a member of the set by construction.
class ShiftMatrix {
public:
    ShiftMatrix(Grid<std::uint16_t> level_indices, std::vector<double> levels);

    std::size_t rows() const noexcept { return indices_.rows(); }
    std::size_t cols() const noexcept { return indices_.cols(); }

    std::uint16_t level_index(std::size_t r, std::size_t c) const { return indices_(r, c); }
    double phase(std::size_t r, std::size_t c) const { return levels_[indices_(r, c)]; }

    const Grid<std::uint16_t>& level_indices() const noexcept { return indices_; }
    const std::vector<double>& levels() const noexcept { return levels_; }

    PhaseMatrix to_phases() const;

    friend bool operator==(const ShiftMatrix&, const ShiftMatrix&) = default;

private:
    Grid<std::uint16_t> indices_;
    std::vector<double> levels_;
};

}  // namespace risq
