#pragma once

#include "risq/geometry.hpp"
#include "risq/radiation.hpp"

namespace risq {

// A complete link: surface, Tx/Rx placement and radio parameters.
struct Scenario {
    RisPanel panel;
    Placement placement;
    RadioConfig radio;

    Scenario with_placement(const Placement& p) const { return {panel, p, radio}; }
    Scenario with_panel(const RisPanel& p) const { return {p, placement, radio}; }
};

}  // namespace risq
