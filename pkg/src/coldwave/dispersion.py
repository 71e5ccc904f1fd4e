"""Cold-plasma dispersion relation (wave-normal surface).

Builds the quadratic-in-n^2 coefficients A, B, C, solves for the squared
refractive indices, and scans frequency brackets for cutoffs (C=0 via
p=0, R=0, L=0) and hybrid resonances (s=0).
"""

import math
from dataclasses import dataclass

from . import rootscan
from .errors import CyclotronResonance, DegenerateQuartic
from .plasma import (
    RESONANCE_RTOL,
    cyclotron_frequency,
    plasma_frequency_squared,
    stix_parameters,
)

SCAN_HEADER = "omega,theta,A,B,C,F2,n2_plus,n2_minus,class_plus,class_minus,flag"

# |A| below this multiple of the Stix scale is treated as the resonance
# branch of the quadratic (n^2 -> infinity on one sheet).
RESONANCE_BRANCH_RTOL = 1e-12


@dataclass(frozen=True)
class WaveNormalCoefficients:
    """Coefficients of A n^4 - B n^2 + C = 0 at propagation angle theta."""

    A: float
    B: float
    C: float
    F_squared: float
    theta: float


@dataclass(frozen=True)
class DispersionSolution:
    """Squared refractive indices with per-root classification.

    ``n_squared`` pairs with ``classifications`` entrywise; entries are
    complex when ``complex_roots`` is set.  ``resonance`` marks the
    degenerate A ~ 0 branch where only the single finite root C/B is
    returned (the other sheet runs to infinity).
    """

    n_squared: tuple
    classifications: tuple
    resonance: bool = False
    complex_roots: bool = False


def wave_normal_coefficients(stix, theta):
    """Wave-normal surface coefficients at angle theta [rad] from B0.

    A = s sin^2 + p cos^2, B = (s^2 - d^2) sin^2 + p s (1 + cos^2),
    C = p (s^2 - d^2).  The discriminant F^2 = B^2 - 4AC is evaluated in
    its factored form (RL - ps)^2 sin^4 + 4 p^2 d^2 cos^2 -- identical
    algebraically, but a sum of non-negative terms, so double roots
    (e.g. vacuum) do not suffer the B^2 - 4AC cancellation.
    """
    sin2 = math.sin(theta) ** 2
    cos2 = math.cos(theta) ** 2
    s, d, p = stix.s, stix.d, stix.p
    rl = s * s - d * d
    A = s * sin2 + p * cos2
    B = rl * sin2 + p * s * (1.0 + cos2)
    C = p * rl
    F2 = (rl - p * s) ** 2 * sin2 * sin2 + 4.0 * p * p * d * d * cos2
    return WaveNormalCoefficients(A, B, C, F2, theta)


def f_squared_alternate(stix, theta):
    """F^2 recomputed as (RL - ps)^2 sin^4 + 4 p^2 d^2 cos^2 (cross-check
    form; equals B^2 - 4AC identically)."""
    sin2 = math.sin(theta) ** 2
    cos2 = math.cos(theta) ** 2
    rl = stix.R * stix.L
    return (rl - stix.p * stix.s) ** 2 * sin2 * sin2 \
        + 4.0 * stix.p ** 2 * stix.d ** 2 * cos2


def _classify(value, scale):
    if abs(value) <= 1e-14 * max(1.0, scale):
        return "cutoff"
    return "propagating" if value > 0.0 else "evanescent"


def refractive_indices(coeffs, branch_rtol=RESONANCE_BRANCH_RTOL):
    """Solve A n^4 - B n^2 + C = 0 for n^2.

    The quadratic is solved in the cancellation-free form (larger root
    from the sign-matched half of B +/- F, the other as C over that
    half).  Negative F^2 yields the conjugate complex pair, flagged
    rather than raised.  |A| below ``branch_rtol`` times the coefficient
    scale is the resonance branch: the single finite root C/B is
    returned.  Raises DegenerateQuartic if A and B both vanish.
    """
    A, B, C = coeffs.A, coeffs.B, coeffs.C
    scale = abs(A) + abs(B) + abs(C)
    a_tol = branch_rtol * max(scale, 1e-300)
    if abs(A) <= a_tol:
        if abs(B) <= a_tol:
            raise DegenerateQuartic(
                f"A={A!r} and B={B!r} both negligible against scale {scale!r}"
            )
        root = C / B
        return DispersionSolution(
            (root,), (_classify(root, abs(root)),), resonance=True
        )
    F2 = coeffs.F_squared
    if F2 < 0.0:
        re = B / (2.0 * A)
        im = math.sqrt(-F2) / (2.0 * A)
        return DispersionSolution(
            (complex(re, im), complex(re, -im)),
            ("complex", "complex"),
            complex_roots=True,
        )
    F = math.sqrt(F2)
    q = 0.5 * (B + F) if B >= 0.0 else 0.5 * (B - F)
    if q == 0.0:  # B == 0 and F == 0: double root at zero
        roots = (0.0, 0.0)
    else:
        big = q / A
        small = C / q
        roots = (big, small) if B >= 0.0 else (small, big)
    scale_r = max(abs(roots[0]), abs(roots[1]))
    return DispersionSolution(
        roots, tuple(_classify(r, scale_r) for r in roots)
    )


def resonance_angle(stix):
    """Propagation angle [rad] at which A vanishes, if it is real.

    Solves tan^2(theta) = -p/s; returns None when -p/s < 0 (no real
    resonance cone) or when s = 0.
    """
    if stix.s == 0.0:
        return None
    ratio = -stix.p / stix.s
    if ratio < 0.0:
        return None
    return math.atan(math.sqrt(ratio))


def _species_tables(plasma):
    return [
        (plasma_frequency_squared(sp), cyclotron_frequency(sp, plasma.B0),
         sp.charge_sign)
        for sp in plasma.species
    ]


def _stix_p(tables):
    def p(w):
        return 1.0 - sum(pi2 for pi2, _, _ in tables) / (w * w)
    return p


def _stix_R(tables):
    def R(w):
        return 1.0 - sum(pi2 / (w * (w + sgn * Om)) for pi2, Om, sgn in tables)
    return R


def _stix_L(tables):
    def L(w):
        return 1.0 - sum(pi2 / (w * (w - sgn * Om)) for pi2, Om, sgn in tables)
    return L


def _stix_s(tables):
    R, L = _stix_R(tables), _stix_L(tables)
    def s(w):
        return 0.5 * (R(w) + L(w))
    return s


def cutoff_frequencies(plasma, omega_bracket, n_grid=2048, rtol=1e-12):
    """Cutoff frequencies in the bracket: roots of p, R, and L.

    Returns (omega, which) pairs sorted by omega, which in {"P","R","L"}.
    The bracket is split around the cyclotron-frequency poles; raises
    BracketTooWide if that fails.
    """
    a, b = omega_bracket
    if not 0.0 < a < b:
        raise ValueError("omega bracket must satisfy 0 < a < b")
    tables = _species_tables(plasma)
    poles = [Om for _, Om, _ in tables if Om > 0.0]
    found = []
    for fn, label in ((_stix_p(tables), "P"), (_stix_R(tables), "R"),
                      (_stix_L(tables), "L")):
        for w in rootscan.scan_roots(fn, a, b, poles, n_grid=n_grid, rtol=rtol):
            found.append((w, label))
    found.sort()
    return found


@dataclass(frozen=True)
class HybridResonances:
    """Roots of s(omega)=0 plus, for a single-ion plasma in a nonzero
    field, the closed-form lower-hybrid estimate
    omega_LH^2 = Pi_i^2 / (1 + Pi_e^2/Omega_e^2)."""

    roots: tuple
    lower_hybrid_estimate: float | None = None


def hybrid_resonances(plasma, omega_bracket, n_grid=2048, rtol=1e-12):
    """Hybrid resonance frequencies: sign-change roots of s in the
    bracket, pole-aware.  See :class:`HybridResonances`."""
    a, b = omega_bracket
    if not 0.0 < a < b:
        raise ValueError("omega bracket must satisfy 0 < a < b")
    tables = _species_tables(plasma)
    poles = [Om for _, Om, _ in tables if Om > 0.0]
    roots = tuple(rootscan.scan_roots(_stix_s(tables), a, b, poles,
                                      n_grid=n_grid, rtol=rtol))
    estimate = None
    electron_sp = plasma.electron_species()
    ions = plasma.ion_species()
    if electron_sp is not None and len(ions) == 1 and plasma.B0 > 0.0:
        pi_e2 = plasma_frequency_squared(electron_sp)
        pi_i2 = plasma_frequency_squared(ions[0])
        om_e = cyclotron_frequency(electron_sp, plasma.B0)
        estimate = math.sqrt(pi_i2 / (1.0 + pi_e2 / (om_e * om_e)))
    return HybridResonances(roots, estimate)


@dataclass(frozen=True)
class ScanRow:
    """One dispersion-scan grid point; mirrors SCAN_HEADER order."""

    omega: float
    theta: float
    A: float = math.nan
    B: float = math.nan
    C: float = math.nan
    F2: float = math.nan
    n2_plus: float = math.nan
    n2_minus: float = math.nan
    class_plus: str = ""
    class_minus: str = ""
    flag: str = ""


def dispersion_scan(plasma, omega_grid, theta_grid,
                    resonance_rtol=RESONANCE_RTOL):
    """Evaluate the dispersion relation over an (omega, theta) grid.

    One row per grid point in omega-major order.  Rows never abort the
    scan: cyclotron-resonant frequencies, complex pairs, the resonance
    branch and the degenerate case are flagged per row.  For a complex
    pair the n2 columns carry the (equal) real parts; the conjugate
    imaginary part is recoverable from A, B, F2.
    """
    rows = []
    for omega in omega_grid:
        try:
            stix = stix_parameters(plasma, omega, resonance_rtol)
        except CyclotronResonance:
            rows.extend(
                ScanRow(omega, theta, flag="cyclotron_resonance")
                for theta in theta_grid
            )
            continue
        for theta in theta_grid:
            coeffs = wave_normal_coefficients(stix, theta)
            base = dict(omega=omega, theta=theta, A=coeffs.A, B=coeffs.B,
                        C=coeffs.C, F2=coeffs.F_squared)
            try:
                sol = refractive_indices(coeffs)
            except DegenerateQuartic:
                rows.append(ScanRow(**base, flag="degenerate"))
                continue
            if sol.resonance:
                rows.append(ScanRow(
                    **base, n2_plus=sol.n_squared[0],
                    class_plus=sol.classifications[0],
                    class_minus="resonance", flag="resonance"))
            elif sol.complex_roots:
                rows.append(ScanRow(
                    **base, n2_plus=sol.n_squared[0].real,
                    n2_minus=sol.n_squared[1].real,
                    class_plus="complex", class_minus="complex",
                    flag="complex"))
            else:
                rows.append(ScanRow(
                    **base, n2_plus=sol.n_squared[0],
                    n2_minus=sol.n_squared[1],
                    class_plus=sol.classifications[0],
                    class_minus=sol.classifications[1]))
    return rows
