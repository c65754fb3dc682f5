"""Hypergeometric-type operators, ladder factorizations and Mielnik partner potentials."""

import json as _json

from ._core import (
    Deformation,
    Family,
    HyperfactError,
    admissible_gamma_range,
    associated_value,
    catalog_reference,
    fd_spectrum,
    run_cli,
    wavefunction,
)
from . import _core


def associated_coefficients(family, l, m):
    return _json.loads(_core.associated_coefficients(family, l, m))


def check_identities(family, m, lmax, exact=True):
    return _json.loads(_core.check_identities(family, m, lmax, exact))


def verify_spectrum(deformation, which="upper", n_levels=4, grid=None):
    return _json.loads(_core.verify_spectrum(deformation, which, n_levels, grid))


def run_suite(name):
    return _json.loads(_core.run_suite(name))


__all__ = [
    "Deformation",
    "Family",
    "HyperfactError",
    "admissible_gamma_range",
    "associated_coefficients",
    "associated_value",
    "catalog_reference",
    "check_identities",
    "fd_spectrum",
    "run_cli",
    "run_suite",
    "verify_spectrum",
    "wavefunction",
]
