#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "risq/analysis.hpp"
#include "risq/scenario.hpp"
#include "risq/shift_matrix.hpp"

namespace risq {

// Scenario documents are JSON with three sections:
//   panel     {rows, cols, cell_dx_m, cell_dy_m, bits, levels_deg, reflection?}
//   placement {d1_m, d2_m, theta_t_deg, phi_t_deg, theta_r_deg, phi_r_deg}
//   radio     {freq_ghz, tx_power_dbm, gain_tx_dbi, gain_rx_dbi, cell_alpha?}
// Unknown keys are rejected. Errors are ConfigError naming the key.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

// Fixed four-decimal rendering used by every CSV writer; -inf/inf/nan are
// written as such.
std::string format_fixed(double value);

// "continuous", "dtpq", "eipq[:<step_deg>]", "fixed[:<gamma_deg>]".
MethodSpec parse_method(std::string_view token);
std::vector<MethodSpec> parse_method_list(std::string_view csv);

// Header n,m,level_index,level_deg; one row per cell with m outer and n inner.
// level_index is 0-based into the panel's level list.
void write_shifts_csv(std::ostream& out, const ShiftMatrix& shifts);
ShiftMatrix read_shifts_csv(std::istream& in, const RisPanel& panel);

// Header axis_value,<method>_dbm[,<method>_threshold_deg]... in method order;
// continuous has no threshold column. Method names must be distinct.
void write_sweep_csv(std::ostream& out, const std::vector<MethodSpec>& methods,
                     const std::vector<SweepRow>& rows);

}  // namespace risq
