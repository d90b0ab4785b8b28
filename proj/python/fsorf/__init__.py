# SPDX-License-Identifier: Apache-2.0
"""Analytic and Monte Carlo performance of dual-hop hybrid FSO/RF links.

The heavy lifting lives in the compiled ``fsorf._core`` extension; this
package re-exports it.
"""

from ._core import (
    ConvergenceError,
    DegenerateParameterError,
    ParameterError,
    PoleError,
    RangeError,
    SweepSpec,
    __version__,
    ber,
    ber_quadrature,
    cdf_fso,
    cdf_rf,
    ln_gamma,
    meijer_g,
    meijer_g_oracle,
    outage,
    run_sweep,
    simulate,
    sweep_csv,
    validate,
)

__all__ = [
    "ConvergenceError",
    "DegenerateParameterError",
    "ParameterError",
    "PoleError",
    "RangeError",
    "SweepSpec",
    "__version__",
    "ber",
    "ber_quadrature",
    "cdf_fso",
    "cdf_rf",
    "ln_gamma",
    "meijer_g",
    "meijer_g_oracle",
    "outage",
    "run_sweep",
    "simulate",
    "sweep_csv",
    "validate",
]
