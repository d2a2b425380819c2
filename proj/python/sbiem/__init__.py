"""Spectral boundary integral simulator for antiplane slip on a planar interface."""

import json as _json

from ._sbiem import (  # noqa: F401
    ConfigError,
    DivergenceError,
    DomainError,
    Error,
    Material,
    MaterialPair,
    __version__,
    bessel_j0,
    bessel_j1,
    default_config,
    eta,
    forward,
    impulse_analytic,
    inverse,
    k_values,
    kernel_bimaterial,
    kernel_hat_identical,
    kernel_identical,
    laplace_transform_numeric,
    modal_analytic,
    modal_closed_form,
    modal_volterra,
    read_snapshot,
    solve_interface,
    strength,
    struve_h0,
    struve_h1,
    validate_config,
)
from ._sbiem import run as _run


def run(config=None):
    """Run a scenario. `config` is a dict or JSON text; None runs the reference rupture."""
    if config is None:
        text = "{}"
    elif isinstance(config, str):
        text = config
    else:
        text = _json.dumps(config)
    return _run(text)
