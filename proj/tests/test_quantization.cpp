#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "risq/channel.hpp"
#include "risq/errors.hpp"
#include "risq/quantization.hpp"
#include "risq/units.hpp"
#include "test_support.hpp"

using namespace risq;
using doctest::Approx;

namespace {

double rel(double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

RisPanel binary_panel(int rows, int cols) { return RisPanel(rows, cols, 0.1, 0.1, 1, {0.0, kPi}); }

PhaseMatrix row(std::initializer_list<double> values) {
    PhaseMatrix p(1, values.size());
    std::size_t c = 0;
    for (double v : values) p(0, c++) = v;
    return p;
}

// Relabels level indices by first appearance so partitions can be compared.
std::vector<int> canonical_partition(const ShiftMatrix& d) {
    std::map<int, int> label;
    std::vector<int> out;
    for (auto v : d.level_indices().flat()) {
        auto it = label.try_emplace(v, static_cast<int>(label.size())).first;
        out.push_back(it->second);
    }
    return out;
}

std::vector<std::uint16_t> indices_of(const ShiftMatrix& d) {
    return {d.level_indices().flat().begin(), d.level_indices().flat().end()};
}

}  // namespace

TEST_CASE("quantizer bins") {
    CHECK(quantization_bin(0.1, 0.0, 2) == 0);
    CHECK(quantization_bin(3.2, 0.0, 2) == 1);
    CHECK(quantization_bin(0.1, 1.5 * kPi, 2) == 0);
    CHECK(quantization_bin(deg2rad(135.0), deg2rad(45.0), 4) == 1);
    CHECK(quantization_bin(0.7, 0.7, 4) == 0);
    CHECK(quantization_bin(0.7 - 1e-12, 0.7, 4) == 3);

    const ShiftMatrix d = quantize_matrix(row({0.1, 3.2}), 0.0, binary_panel(1, 2));
    CHECK(d.phase(0, 0) == 0.0);
    CHECK(d.phase(0, 1) == Approx(kPi));
    CHECK(quantize_matrix(row({0.1, 3.2}), 1.5 * kPi, binary_panel(1, 2)).phase(0, 0) == 0.0);

    const RisPanel two_bit(1, 1, 0.1, 0.1, 2, {0.0, kPi / 2.0, kPi, 1.5 * kPi});
    CHECK(quantize_matrix(row({deg2rad(135.0)}), deg2rad(45.0), two_bit).phase(0, 0) == Approx(kPi / 2.0));
}

TEST_CASE("quantizer input checks") {
    CHECK_THROWS_AS(quantize_matrix(row({0.1}), -0.1, binary_panel(1, 1)), DomainError);
    CHECK_THROWS_AS(quantize_matrix(row({0.1}), kTwoPi, binary_panel(1, 1)), DomainError);
    CHECK_THROWS_AS(quantize_matrix(row({0.1, 0.2}), 0.0, binary_panel(1, 1)), DomainError);
}

TEST_CASE("quantizer is total over the circle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int levels : {2, 4, 8}) {
        for (int i = 0; i < 2000; ++i) {
            const double phase = u(rng), gamma = u(rng);
            const int p = quantization_bin(phase, gamma, levels);
            REQUIRE(p >= 0);
            REQUIRE(p < levels);
            const double omega = kTwoPi / levels;
            const double offset = wrap_two_pi(phase - gamma);
            CHECK(offset >= p * omega - 1e-12);
            CHECK(offset < (p + 1) * omega + 1e-12);
        }
    }
}

TEST_CASE("residual spread") {
    const PhaseMatrix phases = row({0.3, 2.0, 5.5});
    CHECK(residual_spread(phases, phases) == 0.0);
    const double omega = kPi;
    CHECK(residual_spread(row({0.0, omega / 2.0}), row({0.0, 0.0})) == Approx(omega / 2.0));
    CHECK(residual_spread(row({0.1, kTwoPi - 0.1}), row({0.0, 0.0})) == Approx(0.2));
    CHECK(residual_spread(row({1.0, 1.0}), row({0.5, 0.5})) == 0.0);
    CHECK_THROWS_AS(residual_spread(row({1.0, 1.0}), row({0.5})), DomainError);

    Grid<std::uint16_t> idx(1, 3, 0);
    const ShiftMatrix zero(idx, {0.0, kPi});
    CHECK(residual_spread(phases, zero) == Approx(residual_spread(phases, zero.to_phases())));
}

TEST_CASE("threshold candidate sets") {
    const PhaseMatrix phases = row({0.5, 0.5, 2.0});
    const ThresholdSet d = dtpq_thresholds(phases);
    CHECK(d.kind == ThresholdKind::DtpqMatrix);
    CHECK(d.values == std::vector<double>{0.5, 0.5, 2.0});

    const RisPanel one = binary_panel(1, 1);
    const RisPanel two(1, 1, 0.1, 0.1, 2, {0.0, kPi / 2.0, kPi, 1.5 * kPi});
    CHECK(eipq_thresholds(one, deg2rad(5.0)).values.size() == 36);
    CHECK(eipq_thresholds(two, deg2rad(45.0)).values.size() == 2);
    CHECK(eipq_thresholds(one, deg2rad(5.0)).values[35] == Approx(deg2rad(175.0)));
    CHECK(eipq_thresholds(two, deg2rad(45.0)).kind == ThresholdKind::EipqGrid);
    CHECK(eipq_thresholds(one, std::nextafter(kPi, 0.0)).values == std::vector<double>{0.0});
    CHECK(eipq_thresholds(binary_panel(1, 1), deg2rad(7.0)).values.size() == 25);
    CHECK_THROWS_AS(eipq_thresholds(one, 0.0), DomainError);
    CHECK_THROWS_AS(eipq_thresholds(one, kPi), DomainError);
    CHECK_THROWS_AS(eipq_thresholds(one, -1.0), DomainError);
}

TEST_CASE("ties resolve to the smallest threshold") {
    std::mt19937_64 rng(32);
    const Scenario single = testing::random_scenario(rng, 1, 1, 1);
    const ChannelModel model(single);
    const QuantizationResult r = best_threshold(model, {{3.0, 1.0, 2.0}, ThresholdKind::Fixed});
    REQUIRE(r.threshold.has_value());
    CHECK(*r.threshold == 1.0);
    CHECK(r.candidates_evaluated == 3);
    const QuantizationResult e = eipq(model, deg2rad(5.0));
    CHECK(*e.threshold == 0.0);
}

TEST_CASE("results are self-consistent") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = testing::random_scenario(rng, 4, 3, 1 + i % 3);
        const ChannelModel model(s);
        for (const QuantizationResult& r : {dtpq(model), eipq(model, deg2rad(3.0)), fixed_threshold(model, 1.0)}) {
            const double literal = field_superposition(model.geometry(), model.combined_pattern(), r.shifts,
                                                       s.radio.wavelength());
            CHECK(rel(r.xi, literal) < 1e-10);
            CHECK(r.received_power_dbm == Approx(received_power_dbm(s, r.xi)));
            REQUIRE(r.threshold.has_value());
            CHECK(*r.threshold >= 0.0);
            CHECK(*r.threshold < kTwoPi);
            CHECK(r.shifts == quantize_matrix(model.continuous_phases(), *r.threshold, s.panel));
        }
    }
}

TEST_CASE("candidate counts") {
    std::mt19937_64 rng(34);
    const Scenario s = testing::random_scenario(rng, 5, 3, 1);
    const ChannelModel model(s);
    CHECK(dtpq(model).candidates_evaluated == 15);
    CHECK(eipq(model, deg2rad(5.0)).candidates_evaluated == 36);
    CHECK(fixed_threshold(model, 0.2).candidates_evaluated == 1);
    const Scenario s2 = testing::random_scenario(rng, 2, 2, 2);
    CHECK(eipq(s2, deg2rad(45.0)).candidates_evaluated == 2);
    CHECK(exhaustive_search(s2).candidates_evaluated == 256);
}

TEST_CASE("dtpq matches exhaustive search on 2x2 one-bit panels") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 50; ++i) {
        const Scenario s = testing::random_scenario(rng, 2, 2, 1);
        const ChannelModel model(s);
        const QuantizationResult d = dtpq(model);
        const QuantizationResult x = exhaustive_search(model);
        CHECK(rel(d.xi, x.xi) < 1e-12);
        CHECK_FALSE(x.threshold.has_value());
        CHECK(rel(x.xi, testing::oracle_best_xi(testing::link_of(s))) < 1e-9);
    }
}

TEST_CASE("dtpq matches exhaustive search on 2x2 two-bit panels") {
    std::mt19937_64 rng(36);
    for (int i = 0; i < 5; ++i) {
        const Scenario s = testing::random_scenario(rng, 2, 2, 2);
        const ChannelModel model(s);
        CHECK(rel(dtpq(model).xi, exhaustive_search(model).xi) < 1e-12);
    }
}

TEST_CASE("exhaustive search on a single cell keeps the lowest level") {
    std::mt19937_64 rng(37);
    const Scenario s = testing::random_scenario(rng, 1, 1, 1);
    const QuantizationResult r = exhaustive_search(s);
    CHECK(r.shifts.level_index(0, 0) == 0);
    CHECK(r.candidates_evaluated == 2);
}

TEST_CASE("exhaustive search refuses panels above the guard") {
    std::mt19937_64 rng(38);
    const Scenario s = testing::random_scenario(rng, 3, 7, 1);
    try {
        exhaustive_search(s);
        FAIL("expected a guard error");
    } catch (const GuardError& e) {
        CHECK(std::string(e.what()).find("20") != std::string::npos);
    }
    CHECK_NOTHROW(exhaustive_search(testing::random_scenario(rng, 4, 5, 1)));
}

TEST_CASE("dtpq is optimal over a dense threshold sweep") {
    std::mt19937_64 rng(39);
    for (int i = 0; i < 10; ++i) {
        const Scenario s = testing::random_scenario(rng, 3, 4, 1 + i % 2);
        const QuantizationResult d = dtpq(s);
        const testing::Link link = testing::link_of(s);
        for (int k = 0; k < 720; ++k) {
            CHECK(testing::oracle_threshold_xi(link, k * kTwoPi / 720.0) <= d.xi * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("optimality chain") {
    std::mt19937_64 rng(40);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = testing::random_scenario(rng, 3, 2, 1 + i % 2);
        const ChannelModel model(s);
        const double x = exhaustive_search(model).xi;
        const double d = dtpq(model).xi;
        const double e = eipq(model, deg2rad(5.0)).xi;
        const double f0 = fixed_threshold(model, 0.0).xi;
        CHECK(rel(x, d) < 1e-12);
        // equal partitions under different level labels differ only by rounding
        CHECK(d * (1.0 + 1e-12) >= e);
        CHECK(e * (1.0 + 1e-12) >= f0);
        CHECK(d * (1.0 + 1e-12) >= fixed_threshold(model, s.panel.levels().back()).xi);
    }
}

TEST_CASE("residual spread of the dtpq solution is within one interval") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        const int bits = 1 + i % 3;
        const Scenario s = testing::random_scenario(rng, 4, 4, bits);
        const ChannelModel model(s);
        const QuantizationResult d = dtpq(model);
        CHECK(residual_spread(model.continuous_phases(), d.shifts) <= s.panel.interval() + 1e-9);
    }
}

TEST_CASE("fixed-threshold xi repeats with the quantization interval") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = testing::random_scenario(rng, 4, 4, 1 + i % 3);
        const ChannelModel model(s);
        const double gamma = u(rng) * s.panel.interval();
        const double a = fixed_threshold(model, gamma).xi;
        for (int k = 1; k < s.panel.level_count(); ++k) {
            CHECK(rel(a, fixed_threshold(model, gamma + k * s.panel.interval()).xi) < 1e-9);
        }
        CHECK(a <= dtpq(model).xi * (1.0 + 1e-12));
    }
}

TEST_CASE("offsetting every level keeps the dtpq optimum") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = testing::random_scenario(rng, 4, 4, 1 + i % 2);
        const Scenario moved = s.with_panel(s.panel.with_level_offset(deg2rad(55.0)));
        const QuantizationResult a = dtpq(s);
        const QuantizationResult b = dtpq(moved);
        CHECK(rel(a.xi, b.xi) < 1e-9);
        CHECK(canonical_partition(a.shifts) == canonical_partition(b.shifts));
    }
}

TEST_CASE("eipq degenerates to the zero threshold") {
    std::mt19937_64 rng(44);
    const Scenario s = testing::random_scenario(rng, 3, 3, 2);
    const ChannelModel model(s);
    const QuantizationResult e = eipq(model, std::nextafter(s.panel.interval(), 0.0));
    CHECK(e.candidates_evaluated == 1);
    CHECK(e.xi == fixed_threshold(model, 0.0).xi);
    CHECK(e.shifts == fixed_threshold(model, 0.0).shifts);
    CHECK_THROWS_AS(eipq(model, s.panel.interval()), DomainError);
    CHECK(e.xi <= dtpq(model).xi);
}

TEST_CASE("distinct quantization outcomes are bounded by the cell count") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 6; ++i) {
        const int bits = 1 + i % 2;
        const Scenario s = testing::random_scenario(rng, 2 + i % 2, 2, bits);
        const ChannelModel model(s);
        const PhaseMatrix& phi = model.continuous_phases();
        const double omega = s.panel.interval();
        const int levels = s.panel.level_count();

        std::set<double> residues;
        for (double v : phi.flat()) residues.insert(std::fmod(v, omega));
        const std::size_t dof = residues.size();
        CHECK(dof <= phi.size());

        std::set<std::vector<std::uint16_t>> within_interval, full_circle, canonical;
        const int steps = 10000;
        for (int k = 0; k < steps * levels; ++k) {
            const double gamma = k * omega / steps;
            const ShiftMatrix d = quantize_matrix(phi, gamma, s.panel);
            std::vector<std::uint16_t> v = indices_of(d);
            full_circle.insert(v);
            const int lead = v[0];
            for (auto& x : v) x = static_cast<std::uint16_t>((x - lead + levels) % levels);
            if (k < steps) within_interval.insert(v);
            canonical.insert(v);
        }
        // one interval yields D partitions; the full circle yields each under every level rotation
        CHECK(within_interval.size() == dof);
        CHECK(canonical.size() == dof);
        CHECK(full_circle.size() == dof * static_cast<std::size_t>(levels));
    }
}

TEST_CASE("far-field thresholds are interchangeable unless they split the phase cluster") {
    const double lambda = kSpeedOfLight / 2.6e9;
    const Scenario base = testing::ris1_scenario();
    const Scenario s = base.with_placement(Placement(1e5 * lambda, 1e5 * lambda, kPi / 4.0, 0.0, kPi / 4.0, kPi));
    const ChannelModel model(s);
    const QuantizationResult d = dtpq(model);
    int compared = 0;
    for (int deg = 0; deg < 360; ++deg) {
        const QuantizationResult f = fixed_threshold(model, deg2rad(deg));
        const auto idx = f.shifts.level_indices().flat();
        if (std::adjacent_find(idx.begin(), idx.end(), std::not_equal_to<>()) != idx.end()) continue;
        CHECK(rel(d.xi, f.xi) < 1e-6);
        ++compared;
    }
    CHECK(compared >= 354);
}
