"""End-to-end smoke tests of the python bindings."""

import json
import math

import pytest

import noma_secrecy as ns


@pytest.fixture(scope="module")
def cfg():
    return ns.config(K=2, rho_db=20.0, rho_e_db=10.0, lambda_e=1e-3)


def test_config_defaults_and_derived(cfg):
    assert cfg.K == 2
    assert cfg.delta == pytest.approx(1.0)
    assert cfg.omega_i == pytest.approx(5e-4)
    doc = json.loads(cfg.to_json())
    assert doc["K"] == 2
    assert doc["sic"]["kind"] == "perfect"


def test_config_rejects_bad_values():
    with pytest.raises(Exception):
        ns.config(a_n=0.5, a_m=0.5)
    with pytest.raises(Exception):
        ns.config_from_json(json.dumps({"alpha": 1.2}))


def test_eta_from_carrier():
    assert ns.eta_from_carrier(1e9) == pytest.approx(5.69143365714345e-4, rel=1e-12)
    assert ns.eta_from_carrier(1e9) / ns.eta_from_carrier(2e9) == pytest.approx(4.0)


def test_exact_matches_monte_carlo(cfg):
    exact = ns.sop_exact(cfg, "external-n")["value"]
    mc = ns.estimate_sop_mc(cfg, "external-n", iterations=20000, seed=1)
    assert abs(exact - mc["value"]) <= max(0.01, 3.0 * mc["ci_half_width"])


def test_pair_composition(cfg):
    pn = ns.sop_exact(cfg, "external-n")["value"]
    pm = ns.sop_exact(cfg, "external-m")["value"]
    pair = ns.sop_exact(cfg, "external-pair")["value"]
    assert pair == pytest.approx(1.0 - (1.0 - pn) * (1.0 - pm), abs=1e-12)


def test_mc_determinism(cfg):
    a = ns.estimate_sop_mc(cfg, "external-m", iterations=3000, seed=7, workers=1)
    b = ns.estimate_sop_mc(cfg, "external-m", iterations=3000, seed=7, workers=3)
    assert a["value"] == b["value"]


def test_cdf_evaluators(cfg):
    assert ns.cdf_gamma_n(cfg, 0.0) == 0.0
    assert ns.cdf_gamma_m(cfg, 4.0) == 1.0
    grid = [1e-4, 1e-3, 1e-2]
    emp = ns.empirical_cdf(cfg, "gamma_n", grid, iterations=20000, seed=3)
    ana = [ns.cdf_gamma_n(cfg, x) for x in grid]
    assert all(abs(e - a) < 0.02 for e, a in zip(emp, ana))
    assert ns.eve_cdf(cfg, "eve_m", 3.999999) == pytest.approx(1.0, abs=1e-6)
    assert ns.eve_pdf(cfg, "eve_n", 1e-4) > 0.0


def test_ipsic_mode():
    icfg = ns.config(K=1, rho_db=30.0, sic={"kind": "imperfect", "varpi": 1.0})
    floor_a = ns.sop_asymptotic(icfg, "external-n")["value"]
    exact_a = ns.sop_exact(
        ns.config(K=1, rho_db=60.0, sic={"kind": "imperfect", "varpi": 1.0}),
        "external-n",
    )["value"]
    assert floor_a == pytest.approx(exact_a, rel=0.05)


def test_sweep_csv(tmp_path, cfg):
    path = tmp_path / "rows.csv"
    rows = ns.sweep_csv(
        cfg,
        scenarios=["external-n"],
        rho_grid_db=[10.0, 20.0],
        methods=["exact"],
        iterations=100,
        seed=1,
        path=str(path),
    )
    assert rows == 2
    lines = path.read_text().strip().splitlines()
    assert lines[0] == (
        "scenario,scheme,sic,user,method,rho_db,value,ci_low,ci_high,"
        "iterations,seed"
    )
    assert len(lines) == 3


def test_diversity_order_slope():
    fit = ns.diversity_order(ns.config(K=1), "external-n")
    assert 0.8 <= fit["slope"] <= 1.2
