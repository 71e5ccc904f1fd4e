"""Electrostatic-wave equations in layered and 2D-inhomogeneous media.

Covers the plane-layered first-order ODE for psi = phi_x, the
coefficients of the 2D potential equation, type classification from the
K11*K33 product, sonic conditions, singular points of the sonic line,
and the scaled local normal form near such a point.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularCoefficient
from .fields import Field1D

TYPE_PRODUCT_TOL = 1e-14
SONIC_TOL = 1e-12


def layered_sigma0(k2, k3, tensor, x, z=0.0):
    """First-order coefficient sigma0 = k3 (K13+K31) + k2 (K12+K21) of
    the plane-layered equation, evaluated at x (layering axis)."""
    return (k3 * (tensor.K13(x, z) + tensor.K31(x, z))
            + k2 * (tensor.K12(x, z) + tensor.K21(x, z)))


@dataclass(frozen=True)
class LayeredProblem:
    """Plane-layered medium: leading coefficient K11(x), constant
    sigma0, and an interval on which K11 must not vanish."""

    K11: Field1D
    sigma0: float
    x_range: tuple

    def __post_init__(self):
        x0, x1 = self.x_range
        if not x0 < x1:
            raise ValueError("x_range must be increasing")
        _require_nonvanishing(self.K11, x0, x1)


def _require_nonvanishing(k11, x0, x1, n=257):
    xs = np.linspace(x0, x1, n)
    vals = np.array([k11(x) for x in xs], dtype=float)
    if np.any(vals == 0.0) or vals.min() < 0.0 < vals.max():
        raise SingularCoefficient(
            f"K11 vanishes on [{x0!r}, {x1!r}]"
        )


@dataclass(frozen=True)
class LayeredSolution:
    """Sampled complex solution psi(x) = phi_x(x)."""

    xs: np.ndarray
    psi: np.ndarray
    steps: int

    @property
    def end_value(self):
        return self.psi[-1]


def integrate_layered(problem, psi0, x0, x1, n0=64, rtol=1e-9,
                      max_halvings=14):
    """Integrate K11 psi' + (K11' + i sigma0) psi = 0 from x0 to x1.

    Classical fixed-step RK4 with step halving until the endpoint value
    changes by less than ``rtol`` (relative).  Returns the solution
    sampled at the accepted resolution.  Raises SingularCoefficient if
    K11 vanishes on [x0, x1]; the closed form is
    psi0 * K11(x0)/K11(x) * exp(-i sigma0 * integral dt/K11).
    """
    lo, hi = problem.x_range
    if not (lo <= x0 < x1 <= hi):
        raise ValueError("[x0, x1] must lie inside the problem's x_range")
    _require_nonvanishing(problem.K11, x0, x1)
    k11, s0 = problem.K11, problem.sigma0

    def rhs(x, psi):
        return -(k11.dx(x) + 1j * s0) * psi / k11(x)

    def run(n):
        h = (x1 - x0) / n
        xs = np.linspace(x0, x1, n + 1)
        psi = np.empty(n + 1, dtype=complex)
        psi[0] = psi0
        y = complex(psi0)
        for i in range(n):
            x = xs[i]
            k1 = rhs(x, y)
            k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(x + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            psi[i + 1] = y
        return xs, psi

    n = n0
    xs, psi = run(n)
    for _ in range(max_halvings):
        n *= 2
        xs2, psi2 = run(n)
        ref = max(abs(psi2[-1]), abs(psi0), 1e-300)
        if abs(psi2[-1] - psi[-1]) <= rtol * ref:
            return LayeredSolution(xs2, psi2, n)
        xs, psi = xs2, psi2
    return LayeredSolution(xs, psi, n)


@dataclass(frozen=True)
class PDECoefficients:
    """Coefficients of the 2D potential equation
    K11 phi_xx + 2 sigma phi_xz + K33 phi_zz + alpha1 phi_x
    + alpha2 phi_z = 0 at one point."""

    sigma: complex
    alpha1: complex
    alpha2: complex
    K11: complex
    K33: complex


def pde_coefficients(tensor, k2, x, z):
    """Pointwise coefficients of the 2D electrostatic equation:
    2 sigma = K13 + K31,
    alpha1 = K11_x + i k2 (K12 + K21) + K31_z,
    alpha2 = K13_x + i k2 (K23 + K32) + K33_z.
    """
    sigma = 0.5 * (tensor.K13(x, z) + tensor.K31(x, z))
    alpha1 = (tensor.K11.dx(x, z)
              + 1j * k2 * (tensor.K12(x, z) + tensor.K21(x, z))
              + tensor.K31.dz(x, z))
    alpha2 = (tensor.K13.dx(x, z)
              + 1j * k2 * (tensor.K23(x, z) + tensor.K32(x, z))
              + tensor.K33.dz(x, z))
    return PDECoefficients(sigma, alpha1, alpha2,
                           tensor.K11(x, z), tensor.K33(x, z))


def type_from_product(K11, K33, tol=TYPE_PRODUCT_TOL):
    """Equation type from the sign of K11*K33: 'elliptic' (> 0),
    'hyperbolic' (< 0), or 'parabolic' (zero within tol)."""
    product = K11 * K33
    if abs(product) <= tol:
        return "parabolic"
    return "elliptic" if product > 0.0 else "hyperbolic"


def sonic_condition(K, eta, theta, tol=SONIC_TOL):
    """Which sonic alternative holds: 'sonic_K' if K = 0,
    'sonic_angle' if K sin^2(theta) + eta cos^2(theta) = 0, else 'none'."""
    if abs(K) <= tol:
        return "sonic_K"
    value = K * math.sin(theta) ** 2 + eta * math.cos(theta) ** 2
    if abs(value) <= tol:
        return "sonic_angle"
    return "none"


@dataclass(frozen=True)
class SonicPointSearch:
    """Singular points of the sonic line K11 = 0 (where additionally
    K11_z = 0).  ``degenerate`` marks plane-layered fields whose
    z-derivative vanishes identically: there the tangency condition
    holds along entire sonic lines and no discrete list is meaningful."""

    points: tuple
    degenerate: bool = False


def singular_points_on_sonic_line(k11, box, grid=(64, 64), residual_tol=1e-8,
                                  max_newton=50):
    """Points in the box where K11 = 0 and K11_z = 0 simultaneously.

    Candidate cells come from grid sign changes of both functions; each
    is refined by damped 2D Newton until both residuals drop below
    ``residual_tol``.  Duplicates within half a cell are merged.
    """
    x0, x1, z0, z1 = box
    nx, nz = grid
    xs = np.linspace(x0, x1, nx + 1)
    zs = np.linspace(z0, z1, nz + 1)
    f = np.array([[k11(x, z) for z in zs] for x in xs], dtype=float)
    g = np.array([[k11.dz(x, z) for z in zs] for x in xs], dtype=float)

    fx_scale = max(abs(k11.dx(x, z)) for x in xs[:: max(1, nx // 8)]
                   for z in zs[:: max(1, nz // 8)])
    if np.max(np.abs(g)) <= 1e-12 * max(1.0, fx_scale):
        return SonicPointSearch((), degenerate=True)

    def straddles(block):
        return block.min() <= 0.0 <= block.max()

    def newton(x, z):
        h = 1e-6 * max(abs(x1 - x0), abs(z1 - z0))
        for _ in range(max_newton):
            F = np.array([k11(x, z), k11.dz(x, z)])
            if abs(F[0]) < residual_tol and abs(F[1]) < residual_tol:
                return x, z
            J = np.array([
                [k11.dx(x, z), k11.dz(x, z)],
                [(k11.dz(x + h, z) - k11.dz(x - h, z)) / (2 * h),
                 (k11.dz(x, z + h) - k11.dz(x, z - h)) / (2 * h)],
            ])
            try:
                step = np.linalg.solve(J, F)
            except np.linalg.LinAlgError:
                return None
            t = 1.0
            norm0 = np.abs(F).max()
            while t > 1e-6:
                xn, zn = x - t * step[0], z - t * step[1]
                if max(abs(k11(xn, zn)), abs(k11.dz(xn, zn))) < norm0:
                    x, z = xn, zn
                    break
                t *= 0.5
            else:
                return None
        F = np.array([k11(x, z), k11.dz(x, z)])
        if abs(F[0]) < residual_tol and abs(F[1]) < residual_tol:
            return x, z
        return None

    found = []
    min_sep = 0.5 * min((x1 - x0) / nx, (z1 - z0) / nz)
    for i in range(nx):
        for j in range(nz):
            fb = f[i:i + 2, j:j + 2]
            gb = g[i:i + 2, j:j + 2]
            if not (straddles(fb) and straddles(gb)):
                continue
            res = newton(0.5 * (xs[i] + xs[i + 1]), 0.5 * (zs[j] + zs[j + 1]))
            if res is None:
                continue
            x, z = res
            if not (x0 - min_sep <= x <= x1 + min_sep
                    and z0 - min_sep <= z <= z1 + min_sep):
                continue
            if all(math.hypot(x - px, z - pz) > min_sep for px, pz in found):
                found.append((x, z))
    found.sort()
    return SonicPointSearch(tuple(found))


@dataclass(frozen=True)
class NormalFormModel:
    """Local model near a singular sonic point: K11 = x/a + z^2/b with
    K33 = -eta0 < 0, plus the constant of the scaled equation."""

    a: float
    b: float
    eta0: float
    A_const: float = 1.0
    orientation: str = "standard"

    def __post_init__(self):
        if self.a == 0.0:
            raise ValueError("a must be nonzero")
        if self.eta0 <= 0.0:
            raise ValueError("eta0 must be positive")
        if self.orientation not in ("standard", "flipped"):
            raise ValueError("orientation must be 'standard' or 'flipped'")


@dataclass(frozen=True)
class NormalFormDescriptor:
    """Scaled model equation near the singular sonic point.

    In standard orientation the operator is
        -(xt + A zt^2) d_xtxt + d_ztzt - d_xt,      xt = x/a,
    and in flipped orientation (xt = -x/a)
        (xt - A zt^2) d_xtxt + d_ztzt + d_xt,
    whose highest-order part with A = 1 is the canonical model
    (x - y^2) u_xx + u_yy.  In both, zt = z / (a sqrt(eta0)).
    """

    orientation: str
    A_const: float
    x_scale: float      # xt = x / x_scale (sign included)
    z_scale: float      # zt = z / z_scale
    drift: float        # coefficient of d_xt

    def xx_coefficient(self, xt, zt):
        """Coefficient of the second xt-derivative in scaled coordinates."""
        if self.orientation == "standard":
            return -(xt + self.A_const * zt * zt)
        return xt - self.A_const * zt * zt

    def to_scaled(self, x, z):
        return x / self.x_scale, z / self.z_scale

    def from_scaled(self, xt, zt):
        return xt * self.x_scale, zt * self.z_scale


def normal_form(model):
    """Scaled-equation descriptor for the given local model."""
    sign = 1.0 if model.orientation == "standard" else -1.0
    return NormalFormDescriptor(
        orientation=model.orientation,
        A_const=model.A_const,
        x_scale=sign * model.a,
        z_scale=model.a * math.sqrt(model.eta0),
        drift=-1.0 if model.orientation == "standard" else 1.0,
    )
