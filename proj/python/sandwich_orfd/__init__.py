"""Python access to the ORFD/FD sandwich-beam library."""

import json as _json

from ._core import (  # noqa: F401
    BeamCoefficients,
    BeamState,
    Grid,
    LayerSpec,
    NumericalError,
    ObservabilityCertificate,
    OperatorBundle,
    Scheme,
    SpectrumReport,
    TrajectoryRecord,
    ValidationError,
    _run_command,
    analytic_eigenvalues,
    assemble,
    assemble_Ah,
    assemble_M,
    dense_eigenvalues,
    derive_coefficients,
    discrete_energy,
    large_shear_condition,
    make_box_initial,
    make_random_initial,
    observability_certificate,
    pde_observability_bound,
    simulate,
    spectrum_report,
)


def run_command(name, config):
    """Run a CLI command from a config dict; returns (summary dict, exit code)."""
    text, code = _run_command(name, _json.dumps(config))
    return _json.loads(text), code

