import math

import pytest

import amcrn


def test_power_gap():
    assert amcrn.power_gap(1e-3) == pytest.approx(-1.5 / math.log(5e-3), rel=1e-14)


def test_osa_budget_and_gains():
    r = amcrn.osa_analyze(10.0, "cr", 1e-3, 5)
    assert r["binding"]
    assert r["band_factor_gain"] == pytest.approx(-math.expm1(-r["cutoff"] / 10.0), abs=1e-8)
    assert r["sum_ase"] > r["ase"] > 0.0


def test_sharing_and_sensing():
    r = amcrn.ss_analyze(10.0, 10.0, 1.0)
    assert r["expected_power"] == pytest.approx(1.0, abs=1e-7)
    cfg = amcrn.SensingConfig()
    cfg.pi0, cfg.pi1 = 0.6, 0.4
    cfg.sensed_snr = amcrn.db_to_linear(-15.0)
    cfg.eta_norm = amcrn.threshold_for_detection(cfg, 0.8)
    assert amcrn.prob_detection(cfg) == pytest.approx(0.8, abs=1e-9)
    s = amcrn.sensing_analyze(10.0, 10.0, 1.0, cfg)
    assert s["throughput"] == pytest.approx(0.98 * s["ase"], rel=1e-12)


def test_preset_sweep_and_csv():
    assert "fig3" in amcrn.preset_names()
    text = amcrn.preset_text("fig3")
    rows = amcrn.sweep(text)
    assert len(rows) == 31
    assert rows[-1]["ase"] > rows[0]["ase"]
    csv = amcrn.sweep_csv(text)
    assert csv.splitlines()[0].startswith("x_db,ase_bps_hz,")
    assert "\r" not in csv


def test_errors_surface_as_exceptions():
    with pytest.raises(amcrn.AmcrnError):
        amcrn.sweep("[scenario]\nbogus = 1\n")
    with pytest.raises(amcrn.AmcrnError):
        amcrn.osa_analyze(1.0, "dr9")
