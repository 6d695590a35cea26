import math
import pathlib

import pytest

import risquant as rq

SCENARIOS = pathlib.Path(__file__).resolve().parents[2] / "scenarios"


@pytest.fixture(scope="module")
def ris1():
    return rq.load_scenario(str(SCENARIOS / "ris1.json"))


def test_scenario_properties(ris1):
    assert (ris1.rows, ris1.cols, ris1.bits) == (32, 16, 1)
    assert ris1.wavelength == pytest.approx(299792458 / 2.6e9)
    assert ris1.with_rx_distance(7.5).d2 == 7.5


def test_dtpq_dominates_baselines(ris1):
    best = rq.dtpq(ris1)
    assert best.candidates_evaluated == 512
    assert 0.0 <= best.threshold_deg < 360.0
    assert best.received_power_dbm >= rq.eipq(ris1).received_power_dbm
    assert best.received_power_dbm >= rq.fixed_threshold(ris1).received_power_dbm
    assert best.received_power_dbm <= rq.continuous_power_dbm(ris1)
    assert rq.received_power_dbm(ris1, best.shift_phases) == pytest.approx(best.received_power_dbm)


def test_residual_spread_bound(ris1):
    best = rq.dtpq(ris1)
    assert rq.residual_spread(rq.continuous_phases(ris1), best.shift_phases) <= math.pi + 1e-9


def test_sweep_columns(ris1):
    cols = rq.sweep(ris1, "rx_distance", 5.0, 6.0, 0.5, "continuous,dtpq,fixed:235")
    assert list(cols) == ["axis_value", "continuous_dbm", "dtpq_dbm", "dtpq_threshold_deg",
                          "fixed_dbm", "fixed_threshold_deg"]
    assert len(cols["axis_value"]) == 3
    for c, d in zip(cols["continuous_dbm"], cols["dtpq_dbm"]):
        assert c >= d


def test_wave_path_difference_symmetric(ris1):
    a = rq.wave_path_difference(ris1, (1, 1), (8, 16))
    assert a == pytest.approx(rq.wave_path_difference(ris1, (8, 16), (1, 1)))
    assert rq.wave_path_difference(ris1, (3, 3), (3, 3)) == 0.0


def test_errors(ris1):
    with pytest.raises(rq.GuardError):
        rq.exhaustive_search(ris1)
    with pytest.raises(ValueError):
        rq.parse_scenario("{}")
    with pytest.raises(ValueError):
        rq.sweep(ris1, "sideways", 0.0, 1.0, 0.1)
