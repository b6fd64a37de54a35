"""Restriction bounds for Laplace eigenfunctions on spheres and the flat torus.

Thin Python layer over the C++ core. Points on spheres are plain sequences of floats
(length d + 1); curves are named the same way as in the command-line runner:
``"equator"``, ``"latitude:<colatitude>"`` and ``"great-subsphere"``.
"""

from ._core import (
    ConfigError,
    CriticalPoints,
    ExponentFit,
    KernelBoundReport,
    NormSample,
    RunOutcome,
    TorusReport,
    airy_operator_norm,
    assoc_harmonic,
    critical_points,
    distance_gradient_check,
    envelope_holds,
    divisor_growth,
    eigenvalue,
    exp_map,
    fit_exponent,
    fit_power_law,
    geometric_degrees,
    highest_weight,
    list_experiments,
    phase_expansion_fit,
    r2,
    r2_table,
    ratios,
    representations,
    restriction_sweep,
    run_experiment,
    sphere_distance,
    theoretical_exponent,
    torus_sup_norm,
    turning_point_sweep,
    verify_kernel_bound,
    verify_linfty_bound,
    zonal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
