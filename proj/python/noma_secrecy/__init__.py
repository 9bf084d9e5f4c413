"""Secrecy outage probabilities for a unified CD/PD-NOMA network.

Closed-form and asymptotic evaluators cross-validated by a stochastic-
geometry Monte Carlo simulator. See the project README for the model.
"""

from ._core import (
    SystemConfig,
    cdf_gamma_m,
    cdf_gamma_n,
    config,
    config_from_json,
    diversity_order,
    empirical_cdf,
    estimate_sop_mc,
    eta_from_carrier,
    eve_cdf,
    eve_pdf,
    sop_asymptotic,
    sop_exact,
    sweep_csv,
    validate_report,
)

__all__ = [
    "SystemConfig",
    "cdf_gamma_m",
    "cdf_gamma_n",
    "config",
    "config_from_json",
    "diversity_order",
    "empirical_cdf",
    "estimate_sop_mc",
    "eta_from_carrier",
    "eve_cdf",
    "eve_pdf",
    "sop_asymptotic",
    "sop_exact",
    "sweep_csv",
    "validate_report",
]
