#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "risq/channel.hpp"
#include "risq/shift_matrix.hpp"

namespace risq {

// Largest q*M*N the exhaustive oracle will enumerate (2^20 configurations).
inline constexpr int kExhaustiveMaxBits = 20;

// Relative xi window inside which two candidates count as tied.
inline constexpr double kTieTolerance = 1e-12;

struct QuantizationResult {
    std::optional<double> threshold;  // radians; empty for the exhaustive oracle
    ShiftMatrix shifts;
    double xi = 0.0;
    double received_power_dbm = 0.0;
    std::size_t candidates_evaluated = 0;
};

enum class ThresholdKind { DtpqMatrix, EipqGrid, Fixed };

struct ThresholdSet {
    std::vector<double> values;
    ThresholdKind kind;
};

// Maps phase phi to level p (0-based) when phi lies in
// [gamma + p*Omega, gamma + (p+1)*Omega) modulo 2*pi.
int quantization_bin(double phase, double gamma, int level_count);

ShiftMatrix quantize_matrix(const PhaseMatrix& phases, double gamma, const RisPanel& panel);

// Length of the shortest circular arc holding every residual mod(phi - shift, 2*pi).
double residual_spread(const PhaseMatrix& phases, const ShiftMatrix& shifts);
double residual_spread(const PhaseMatrix& phases, const PhaseMatrix& shifts);

// Candidate thresholds: every entry of the continuous phase matrix (row-major).
ThresholdSet dtpq_thresholds(const PhaseMatrix& phases);
// Candidate thresholds (k-1)*epsilon for k = 1..floor(Omega/epsilon).
ThresholdSet eipq_thresholds(const RisPanel& panel, double epsilon);

// Evaluates each threshold and keeps the xi maximizer; ties within
// kTieTolerance go to the smallest threshold.
QuantizationResult best_threshold(const ChannelModel& model, const ThresholdSet& candidates);

QuantizationResult dtpq(const ChannelModel& model);
QuantizationResult dtpq(const Scenario& scenario);

QuantizationResult eipq(const ChannelModel& model, double epsilon);
QuantizationResult eipq(const Scenario& scenario, double epsilon);

QuantizationResult fixed_threshold(const ChannelModel& model, double gamma);
QuantizationResult fixed_threshold(const Scenario& scenario, double gamma);

// Enumerates all 2^(qMN) shift matrices. Throws GuardError when q*M*N exceeds
// kExhaustiveMaxBits. Ties keep the lexicographically smallest index vector.
QuantizationResult exhaustive_search(const ChannelModel& model);
QuantizationResult exhaustive_search(const Scenario& scenario);

}  // namespace risq
