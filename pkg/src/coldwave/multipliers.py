"""Energy-inequality multipliers and boundary sign conditions.

The a-b-c multiplier M u = a u + b u_x + c u_y pairs with L u to bound
the weighted H1 seminorm from above: (Mu, Lu) >= delta ||u||^2 for
compactly supported u.  Two coefficient regimes cover the drift range
kappa in [0, 2]; a matrix multiplier with boundary sign conditions
serves the mixed first-order problem.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SpecInvalid
from .operators import apply_L, gradient
from .quadrature import decompose_cells, integrate_signed, weighted_norms
from .typegeometry import canonical_type_function

SIGN_TOL = 1e-12


@dataclass(frozen=True)
class MultiplierSpec:
    """Scalar multiplier coefficients (a = -1 throughout).

    kappa_high (kappa in [1, 2]): b is the two-branch exponential
    exp(2 delta K / Q1) on K > 0 and exp(6 delta K / Q2) on K < 0 with
    Q1 = exp(2 delta mu1), Q2 = exp(mu2) built from the extreme values
    of K over the domain; c = 2 (2 delta - 1) y.

    kappa_low (kappa in [0, 1)): b = -N K on K > 0 and +N K on K < 0
    (i.e. -N |K|), c = -4 N y, with N strictly inside
    ((1 + dt) / (3 - kappa), (1 - dt) / (kappa + 1)).
    """

    regime: str
    kappa: float
    delta: float = 0.05
    delta_tilde: float = 0.05
    N: float = 0.0
    Q1: float = 1.0
    Q2: float = 1.0
    mu1: float = 0.0
    mu2: float = 0.0
    warnings: tuple = ()

    @classmethod
    def from_kappa(cls, kappa, grid, delta=0.05, delta_tilde=0.05, N=None):
        """Build the regime's coefficients for the grid's domain.

        The exponential-branch bounds b <= Q1 on K>0 and b > Q2 on K<0
        hold only for delta below exp(mu2)/6; with larger delta they are
        reported as warnings (the integral bound itself is what
        ``verify_energy_inequality`` checks).
        """
        if not 0.0 <= kappa <= 2.0:
            raise SpecInvalid(f"kappa={kappa!r} outside [0, 2]")
        if not 0.0 < delta < 0.5:
            raise SpecInvalid(f"delta={delta!r} outside (0, 0.5)")
        K = grid.type_values()[grid.inside]
        kpos = K[K > 0.0]
        kneg = K[K < 0.0]
        if kappa >= 1.0:
            mu1 = float(kpos.max()) if kpos.size else 0.0
            mu2 = float(kneg.min()) if kneg.size else 0.0
            Q1 = math.exp(2.0 * delta * mu1)
            Q2 = math.exp(mu2)
            warnings = []
            if kneg.size and 6.0 * delta >= Q2:
                warnings.append(
                    f"exponential branch bound b > Q2 fails for delta="
                    f"{delta!r} (needs delta < exp(mu2)/6 = {Q2 / 6.0!r})"
                )
            return cls("kappa_high", kappa, delta, delta_tilde,
                       Q1=Q1, Q2=Q2, mu1=mu1, mu2=mu2,
                       warnings=tuple(warnings))
        lo = (1.0 + delta_tilde) / (3.0 - kappa)
        hi = (1.0 - delta_tilde) / (kappa + 1.0)
        if not lo < hi:
            raise SpecInvalid(
                f"admissible N interval empty for kappa={kappa!r}, "
                f"delta_tilde={delta_tilde!r}"
            )
        if N is None:
            N = 0.5 * (lo + hi)
        elif not lo < N < hi:
            raise SpecInvalid(
                f"N={N!r} outside admissible interval ({lo!r}, {hi!r})"
            )
        return cls("kappa_low", kappa, delta, delta_tilde, N=N)

    def b(self, x, y, sign):
        """Branch of b on the side of the sonic curve given by sign."""
        K = canonical_type_function(x, y)
        if self.regime == "kappa_high":
            if sign > 0:
                return np.exp(2.0 * self.delta * K / self.Q1)
            return np.exp(6.0 * self.delta * K / self.Q2)
        return -self.N * K if sign > 0 else self.N * K

    def c(self, y):
        if self.regime == "kappa_high":
            return 2.0 * (2.0 * self.delta - 1.0) * y
        return -4.0 * self.N * y

    @property
    def ratio_bound(self):
        """Lower bound asserted for (Mu, Lu) / ||u||_{H1_0(K)}^2."""
        return self.delta


@dataclass(frozen=True)
class EnergyReport:
    """Result of one energy-inequality evaluation: the multiplier
    pairing, the squared weighted seminorm, and their ratio (None when
    the seminorm vanishes)."""

    lhs: float
    rhs: float
    ratio: float | None
    bound: float
    warnings: tuple = ()

    @property
    def satisfied(self):
        return self.ratio is not None and self.ratio >= self.bound


def verify_energy_inequality(u, kappa, spec, grid, quad_allowance=0.0,
                             decomp=None):
    """Quadrature check of (Mu, Lu) >= delta ||u||_{H1_0(K)}^2.

    ``u`` must vanish on the boundary nodes (discrete compact support).
    The pairing integral splits cells along the sonic curve because b
    switches branch there.  ``quad_allowance`` loosens the reported
    bound multiplicatively (bound = delta * (1 - quad_allowance)).
    """
    u = np.asarray(u, dtype=float)
    if spec.regime == "kappa_high" and not 1.0 <= kappa <= 2.0:
        raise SpecInvalid(f"kappa={kappa!r} outside [1, 2] for kappa_high")
    if spec.regime == "kappa_low" and not 0.0 <= kappa < 1.0:
        raise SpecInvalid(f"kappa={kappa!r} outside [0, 1) for kappa_low")
    boundary_max = float(np.abs(u[grid.boundary]).max()) if grid.boundary.any() else 0.0
    if boundary_max != 0.0:
        raise ValueError("u must vanish on boundary nodes")
    if decomp is None:
        decomp = decompose_cells(grid)
    ux, uy = gradient(u, grid)
    Lu = apply_L(u, grid, kappa)

    def pairing(sign):
        def fn(x, y, uv, uxv, uyv, luv):
            return (-uv + spec.b(x, y, sign) * uxv
                    + spec.c(y) * uyv) * luv
        return fn

    lhs = integrate_signed(decomp, pairing(+1), pairing(-1),
                           (u, ux, uy, Lu))
    norms = weighted_norms(u, grid, include_dual=False, decomp=decomp)
    rhs = norms.h1_weighted ** 2
    ratio = lhs / rhs if rhs > 0.0 else None
    return EnergyReport(lhs, rhs, ratio,
                        bound=spec.ratio_bound * (1.0 - quad_allowance),
                        warnings=spec.warnings)


def random_interior_bump(domain, rng, degree=3):
    """Random smooth field vanishing to second order on the bounding
    box boundary: (1-X^2)^2 (1-Y^2)^2 times a random polynomial in the
    box-normalized coordinates X, Y."""
    x0, x1, y0, y1 = domain.bounding_box
    coeffs = rng.uniform(-1.0, 1.0, size=(degree + 1, degree + 1))

    def bump(x, y):
        X = (2.0 * x - (x0 + x1)) / (x1 - x0)
        Y = (2.0 * y - (y0 + y1)) / (y1 - y0)
        poly = np.zeros_like(X)
        for i in range(degree + 1):
            for j in range(degree + 1):
                poly = poly + coeffs[i, j] * X ** i * Y ** j
        return (1.0 - X ** 2) ** 2 * (1.0 - Y ** 2) ** 2 * poly

    return bump


@dataclass(frozen=True)
class MixedMultiplierSpec:
    """Matrix multiplier M = [[b, c], [-K c, b]] for the mixed problem.

    b = m K + s_const with m = (mu + delta)/2 on K > 0 and
    (mu - delta)/2 on K < 0; c = mu y - t with t chosen so c < 0 on the
    domain; s_const large enough that m K + s_const, 2 c y + s_const,
    and b^2 + K c^2 stay positive (validated by dense sampling).
    """

    mu: float
    t: float
    s_const: float
    delta: float = 0.05

    def __post_init__(self):
        if self.mu <= 0.0:
            raise SpecInvalid("mu must be positive")
        if self.t <= 0.0:
            raise SpecInvalid("t must be positive")
        if self.s_const <= 0.0:
            raise SpecInvalid("s_const must be positive")
        if self.delta <= 0.0 or self.delta >= self.mu:
            raise SpecInvalid("delta must be in (0, mu)")

    def m(self, sign):
        return 0.5 * (self.mu + self.delta) if sign > 0 \
            else 0.5 * (self.mu - self.delta)

    def b(self, x, y):
        K = canonical_type_function(x, y)
        m = np.where(K >= 0.0, self.m(+1), self.m(-1))
        return m * K + self.s_const

    def c(self, y):
        return self.mu * y - self.t

    def matrix(self, x, y):
        """The 2x2 multiplier matrix at a point."""
        K = canonical_type_function(x, y)
        b = self.b(x, y)
        c = self.c(y)
        return np.array([[b, c], [-K * c, b]])

    @classmethod
    def auto(cls, domain, mu=1.0, delta=0.05, t=None, s_const=None,
             samples=101):
        """Choose t and s_const for the domain, then validate the
        positivity requirements by dense sampling."""
        x0, x1, y0, y1 = domain.bounding_box
        xs = np.linspace(x0, x1, samples)
        ys = np.linspace(y0, y1, samples)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        inside = domain.contains(X, Y)
        Xi, Yi = X[inside], Y[inside]
        K = canonical_type_function(Xi, Yi)
        if t is None:
            t = 1.0 + mu * max(0.0, float(Yi.max()))
        c = mu * Yi - t
        m_mag = 0.5 * (mu + delta)
        need = np.maximum.reduce([
            np.abs(m_mag * K),
            2.0 * np.abs(c * Yi),
            np.abs(m_mag * K) + np.sqrt(np.maximum(-K, 0.0)) * np.abs(c),
        ])
        if s_const is None:
            s_const = 1.0 + 2.0 * float(need.max())
        spec = cls(mu, t, s_const, delta)
        if float(spec.c(Yi).max()) >= 0.0:
            raise SpecInvalid("mu y - t must be negative on the domain")
        b = spec.b(Xi, Yi)
        checks = {
            "m K + s_const": b,
            "2 c y + s_const": 2.0 * spec.c(Yi) * Yi + s_const,
            "b^2 + K c^2": b * b + K * spec.c(Yi) ** 2,
        }
        for name, vals in checks.items():
            if float(vals.min()) <= 0.0:
                raise SpecInvalid(f"positivity of {name} fails on the domain")
        return spec


@dataclass(frozen=True)
class SegmentReport:
    """Sign check of one boundary segment: the quantity b dy - c dx on
    G, or K (b dy - c dx) off G, sampled along the segment."""

    name: str
    in_G: bool
    min_value: float
    max_value: float
    admissible: bool


@dataclass(frozen=True)
class BoundaryReport:
    segments: tuple
    admissible: bool


def boundary_admissible(domain, G, spec, n_quad=256, orientation=1,
                        tol=SIGN_TOL):
    """Check the mixed problem's boundary sign conditions per segment.

    On segments in G the requirement is b dy - c dx <= 0; elsewhere
    K (b dy - c dx) >= 0, both to within ``tol``.  ``orientation`` = -1
    traverses the boundary clockwise (flipping every sign).
    """
    G = set(G)
    reports = []
    for seg in domain.boundary_segments():
        dx, dy = seg.delta
        dx, dy = orientation * dx / n_quad, orientation * dy / n_quad
        ts = (np.arange(n_quad) + 0.5) / n_quad
        x = seg.start[0] + ts * (seg.end[0] - seg.start[0])
        y = seg.start[1] + ts * (seg.end[1] - seg.start[1])
        q = spec.b(x, y) * dy - spec.c(y) * dx
        in_g = seg.name in G
        if in_g:
            vals = q
            ok = bool(vals.max() <= tol)
        else:
            vals = canonical_type_function(x, y) * q
            ok = bool(vals.min() >= -tol)
        reports.append(SegmentReport(seg.name, in_g, float(vals.min()),
                                     float(vals.max()), ok))
    return BoundaryReport(tuple(reports), all(r.admissible for r in reports))
