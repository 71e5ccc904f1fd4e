"""Numerical toolkit for cold-plasma wave propagation.

Submodules
----------
plasma
    Species data, Stix parameters, dielectric tensor, velocity response.
dispersion
    Wave-normal surface coefficients, refractive indices, cutoff and
    resonance scans.
electrostatics
    Plane-layered ODE, 2D electrostatic PDE coefficients, sonic-line
    geometry, local normal form.
typegeometry
    Tricomi/Keldysh classification, characteristic tracing, operator
    symbols.
grid, operators, quadrature, multipliers, solvers
    Finite-difference machinery for the degenerate model operator:
    weighted norms, energy-inequality checks, least-squares solves.
cli
    Command-line front end (``coldwave`` executable).

This module intentionally imports nothing heavy; import submodules
directly, e.g. ``from coldwave import plasma``.
"""

__version__ = "0.1.0"

__all__ = [
    "plasma",
    "dispersion",
    "electrostatics",
    "typegeometry",
    "fields",
    "grid",
    "operators",
    "quadrature",
    "multipliers",
    "solvers",
    "config",
    "output",
    "cli",
    "errors",
    "constants",
]
