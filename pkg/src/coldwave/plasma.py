"""Species-level and aggregate cold-plasma quantities.

Frequencies, Stix parameters (R, L, s, d, p), the dielectric tensor,
single-particle velocity response, plasma current, displacement, and the
lower-hybrid coefficient functions (xi, zeta, mu).  All quantities are SI;
frequencies are angular (rad/s).

Every function here is pure: no shared mutable state, safe to call from
any number of threads.
"""

from dataclasses import dataclass, field

import numpy as np

from .constants import E_CHARGE, EPSILON_0, M_ELECTRON, M_PROTON
from .errors import CyclotronResonance, LengthMismatch, MissingElectrons

# Relative distance from a cyclotron frequency below which the cold model
# is treated as broken down.
RESONANCE_RTOL = 1e-9


@dataclass(frozen=True)
class Species:
    """One particle species: mass [kg], charge sign (+1/-1), charge
    number Z (charge magnitude is Z*e), and number density [m^-3]."""

    name: str
    mass: float
    charge_sign: int
    charge_number: int = 1
    density: float = 0.0

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"species {self.name!r}: mass must be > 0")
        if self.charge_sign not in (-1, 1):
            raise ValueError(f"species {self.name!r}: charge_sign must be -1 or +1")
        if self.charge_number < 1:
            raise ValueError(f"species {self.name!r}: charge_number must be >= 1")
        if self.density < 0.0:
            raise ValueError(f"species {self.name!r}: density must be >= 0")

    @property
    def charge(self):
        """Signed charge q = Z * charge_sign * e [C]."""
        return self.charge_number * self.charge_sign * E_CHARGE


def electron(density=0.0):
    """Electron species at the given density [m^-3]."""
    return Species("electron", M_ELECTRON, -1, 1, density)


def proton(density=0.0):
    """Proton species at the given density [m^-3]."""
    return Species("proton", M_PROTON, +1, 1, density)


@dataclass(frozen=True)
class PlasmaState:
    """Species mix in a longitudinal background field B0 [T].

    An empty species list is the vacuum limit and is legal everywhere.
    """

    species: tuple = ()
    B0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        if self.B0 < 0.0:
            raise ValueError("B0 must be >= 0")

    def electron_species(self):
        """First negatively charged species, or None."""
        for sp in self.species:
            if sp.charge_sign == -1:
                return sp
        return None

    def ion_species(self):
        """All positively charged species, in order."""
        return [sp for sp in self.species if sp.charge_sign == +1]


@dataclass(frozen=True)
class StixParameters:
    """The quintuple (R, L, s, d, p); s=(R+L)/2 and d=(R-L)/2."""

    R: float
    L: float
    s: float
    d: float
    p: float

    @classmethod
    def vacuum(cls):
        return cls(1.0, 1.0, 1.0, 0.0, 1.0)


@dataclass(frozen=True)
class DielectricTensor:
    """3x3 complex tensor [[s, -i d, 0], [i d, s, 0], [0, 0, p]]."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (3, 3):
            raise ValueError("dielectric tensor must be 3x3")
        object.__setattr__(self, "entries", arr)

    def apply(self, E):
        """Matrix-vector product K @ E."""
        return self.entries @ np.asarray(E, dtype=complex)


@dataclass(frozen=True)
class LowerHybridCoefficients:
    """Coefficient functions of the reduced second-order wave operator.

    ``elliptic`` is True exactly when xi < 0 (the operator is elliptic
    only there, i.e. at lower-hybrid frequencies).
    """

    xi: float
    zeta: float
    mu: float
    elliptic: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "elliptic", self.xi < 0.0)


def cyclotron_frequency(species, B0):
    """Angular cyclotron frequency |q B0 / m| [rad/s] (non-negative)."""
    if B0 < 0.0:
        raise ValueError("B0 must be >= 0")
    return abs(species.charge * B0 / species.mass)


def plasma_frequency_squared(species):
    """Squared angular plasma frequency n q^2 / (eps0 m) [(rad/s)^2]."""
    q = species.charge
    return species.density * q * q / (EPSILON_0 * species.mass)


def _check_cyclotron(plasma, omega, rtol):
    """Raise if omega is within rtol (relative) of any cyclotron frequency."""
    for sp in plasma.species:
        Om = cyclotron_frequency(sp, plasma.B0)
        if Om > 0.0 and abs(omega - Om) < rtol * Om:
            raise CyclotronResonance(
                f"omega={omega!r} within {rtol} (relative) of cyclotron "
                f"frequency {Om!r} of species {sp.name!r}"
            )


def stix_parameters(plasma, omega, resonance_rtol=RESONANCE_RTOL):
    """Stix parameters of a plasma at angular frequency omega > 0.

    R and L sum 1 - Pi^2 / (omega (omega +/- sign*Omega)) over species;
    p = 1 - sum Pi^2/omega^2.  Raises CyclotronResonance if omega sits
    within ``resonance_rtol`` of any species' cyclotron frequency, where
    the cold model breaks down.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    _check_cyclotron(plasma, omega, resonance_rtol)
    R = 1.0
    L = 1.0
    p = 1.0
    for sp in plasma.species:
        pi2 = plasma_frequency_squared(sp)
        Om = cyclotron_frequency(sp, plasma.B0)
        sgn = sp.charge_sign
        R -= pi2 / (omega * (omega + sgn * Om))
        L -= pi2 / (omega * (omega - sgn * Om))
        p -= pi2 / (omega * omega)
    return StixParameters(R, L, 0.5 * (R + L), 0.5 * (R - L), p)


def stix_approximate_RL(plasma, omega):
    """Electron-mass approximation of (R, L).

    Combining each ion's fraction with the electron one and dropping the
    squared ion cyclotron frequencies leaves, per ion species,

        R ~ 1 - Pi_e^2 / (omega^2 + omega W_e + W_e W_i)
        L ~ 1 - Pi_e^2 / (omega^2 - omega W_e + W_e W_i)

    where W denotes the signed cyclotron frequency q B0 / m (negative
    for electrons; the formulas only reproduce the exact parameters with
    that sign).  Requires an electron species; with no ions both values
    are exactly 1.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    el = plasma.electron_species()
    if el is None:
        raise MissingElectrons("approximate R/L needs an electron species")
    pi_e2 = plasma_frequency_squared(el)
    w_e = el.charge * plasma.B0 / el.mass
    R = 1.0
    L = 1.0
    for ion in plasma.ion_species():
        w_i = ion.charge * plasma.B0 / ion.mass
        R -= pi_e2 / (omega * omega + omega * w_e + w_e * w_i)
        L -= pi_e2 / (omega * omega - omega * w_e + w_e * w_i)
    return R, L


def dielectric_tensor(stix):
    """Populate the 3x3 tensor from the Stix parameters.

    Off-pattern entries are exactly zero; the result is Hermitian for
    real (s, d, p).
    """
    s, d, p = stix.s, stix.d, stix.p
    K = np.zeros((3, 3), dtype=complex)
    K[0, 0] = s
    K[1, 1] = s
    K[2, 2] = p
    K[0, 1] = -1j * d
    K[1, 0] = 1j * d
    return DielectricTensor(K)


def velocity_response(species, E, B0, omega, resonance_rtol=RESONANCE_RTOL):
    """First-order velocity of one species driven by a plane-wave field E.

    Components perpendicular to B0 couple through the cyclotron motion:

        v1 = i q (omega E1 + i sign*Omega E2) / (m (omega^2 - Omega^2))
        v2 = i q (omega E2 - i sign*Omega E1) / (m (omega^2 - Omega^2))
        v3 = i q E3 / (m omega)

    Raises CyclotronResonance when omega^2 is too close to Omega^2.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    E = np.asarray(E, dtype=complex)
    q = species.charge
    m = species.mass
    Om = cyclotron_frequency(species, B0)
    if Om > 0.0 and abs(omega - Om) < resonance_rtol * Om:
        raise CyclotronResonance(
            f"omega={omega!r} too close to cyclotron frequency {Om!r}"
        )
    denom = m * (omega * omega - Om * Om)
    sgn = species.charge_sign
    v1 = 1j * q * (omega * E[0] + 1j * sgn * Om * E[1]) / denom
    v2 = 1j * q * (omega * E[1] - 1j * sgn * Om * E[0]) / denom
    v3 = 1j * q * E[2] / (m * omega)
    return np.array([v1, v2, v3])


def plasma_current(plasma, velocities):
    """Current density j = sum over species of n q v [A/m^2]."""
    if len(velocities) != len(plasma.species):
        raise LengthMismatch(
            f"{len(velocities)} velocities for {len(plasma.species)} species"
        )
    j = np.zeros(3, dtype=complex)
    for sp, v in zip(plasma.species, velocities):
        j += sp.density * sp.charge * np.asarray(v, dtype=complex)
    return j


def displacement(E, j, omega):
    """Electric displacement D = eps0 E + (i/omega) j.

    Consistency: with velocities from :func:`velocity_response` and
    current from :func:`plasma_current`, this equals eps0 K E.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    E = np.asarray(E, dtype=complex)
    j = np.asarray(j, dtype=complex)
    return EPSILON_0 * E + (1j / omega) * j


def lower_hybrid_coefficients(plasma, omega, resonance_rtol=RESONANCE_RTOL):
    """Coefficients (xi, zeta, mu) of the reduced wave operator.

    xi   = 1 + sum Pi^2 / (Omega^2 - omega^2)
    zeta = xi + sum Pi^2 / omega^2 - 1
    mu   = sum Pi^2 Omega / (omega (Omega^2 - omega^2))

    The operator is elliptic only where xi < 0.
    """
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    _check_cyclotron(plasma, omega, resonance_rtol)
    xi = 1.0
    pi2_sum = 0.0
    mu = 0.0
    for sp in plasma.species:
        pi2 = plasma_frequency_squared(sp)
        Om = cyclotron_frequency(sp, plasma.B0)
        xi += pi2 / (Om * Om - omega * omega)
        pi2_sum += pi2
        mu += pi2 * Om / (omega * (Om * Om - omega * omega))
    zeta = xi + pi2_sum / (omega * omega) - 1.0
    return LowerHybridCoefficients(xi, zeta, mu)
