"""Cellwise midpoint quadrature with cells split along the sonic curve.

Integrands may take different branches on the two sides of K = x - y^2
(the energy-inequality multipliers do); cells whose corners straddle the
curve are split into polygonal pieces by linear interpolation of K along
the cell edges, and each piece is integrated at its own centroid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DualNormSingular
from .operators import gradient
from .typegeometry import canonical_type_function


def _polygon_area_centroid(poly):
    """Signed shoelace area and centroid of a simple polygon."""
    x = np.array([p[0] for p in poly])
    y = np.array([p[1] for p in poly])
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * cross.sum()
    if area == 0.0:
        return 0.0, x.mean(), y.mean()
    cx = ((x + xn) * cross).sum() / (6.0 * area)
    cy = ((y + yn) * cross).sum() / (6.0 * area)
    return abs(area), cx, cy


def _split_cell(corners, values):
    """Split a ccw quad along the zero set of the linearly interpolated
    corner values; yields (sign, area, cx, cy) pieces."""
    pos, neg = [], []
    for k in range(4):
        p0, f0 = corners[k], values[k]
        p1, f1 = corners[(k + 1) % 4], values[(k + 1) % 4]
        if f0 >= 0.0:
            pos.append(p0)
        if f0 <= 0.0:
            neg.append(p0)
        if (f0 > 0.0 > f1) or (f0 < 0.0 < f1):
            t = f0 / (f0 - f1)
            crossing = (p0[0] + t * (p1[0] - p0[0]),
                        p0[1] + t * (p1[1] - p0[1]))
            pos.append(crossing)
            neg.append(crossing)
    pieces = []
    for sign, poly in ((1, pos), (-1, neg)):
        if len(poly) >= 3:
            area, cx, cy = _polygon_area_centroid(poly)
            if area > 0.0:
                pieces.append((sign, area, cx, cy))
    return pieces


@dataclass(frozen=True)
class CellDecomposition:
    """Grid cells sorted by the sign of K: uncut positive, uncut
    negative, and cut cells with their polygon pieces."""

    grid: object
    pos_cells: np.ndarray
    neg_cells: np.ndarray
    cut_cells: tuple          # (i, j, pieces)
    cut_mask: np.ndarray
    cell_area: float


def decompose_cells(grid, kfun=canonical_type_function):
    """Classify every domain cell (all four corners inside) against the
    sign of kfun and split the straddling ones."""
    X, Y = grid.meshgrid()
    K = kfun(X, Y)
    inside = grid.inside
    cell_inside = (inside[:-1, :-1] & inside[1:, :-1]
                   & inside[:-1, 1:] & inside[1:, 1:])
    c00, c10, c11, c01 = K[:-1, :-1], K[1:, :-1], K[1:, 1:], K[:-1, 1:]
    cmin = np.minimum(np.minimum(c00, c10), np.minimum(c11, c01))
    cmax = np.maximum(np.maximum(c00, c10), np.maximum(c11, c01))
    cut = cell_inside & (cmin < 0.0) & (cmax > 0.0)
    pos = cell_inside & ~cut & (cmin >= 0.0)
    neg = cell_inside & ~cut & ~pos
    pieces = []
    xs, ys = grid.xs, grid.ys
    for i, j in zip(*np.nonzero(cut)):
        corners = ((xs[i], ys[j]), (xs[i + 1], ys[j]),
                   (xs[i + 1], ys[j + 1]), (xs[i], ys[j + 1]))
        vals = (K[i, j], K[i + 1, j], K[i + 1, j + 1], K[i, j + 1])
        pieces.append((int(i), int(j), tuple(_split_cell(corners, vals))))
    return CellDecomposition(grid, pos, neg, tuple(pieces), cut,
                             grid.hx * grid.hy)


def _cell_centers(grid):
    xc = 0.5 * (grid.xs[:-1] + grid.xs[1:])
    yc = 0.5 * (grid.ys[:-1] + grid.ys[1:])
    return np.meshgrid(xc, yc, indexing="ij")


def _center_value(F):
    return 0.25 * (F[:-1, :-1] + F[1:, :-1] + F[:-1, 1:] + F[1:, 1:])


def _bilinear(F, grid, i, j, x, y):
    tx = (x - grid.xs[i]) / grid.hx
    ty = (y - grid.ys[j]) / grid.hy
    return ((1 - tx) * (1 - ty) * F[i, j] + tx * (1 - ty) * F[i + 1, j]
            + (1 - tx) * ty * F[i, j + 1] + tx * ty * F[i + 1, j + 1])


def integrate_uncut(decomp, fn, fields=()):
    """Midpoint integral of a vectorized integrand (x, y, *field_values)
    over the uncut cells only (cells straddling K = 0 are skipped)."""
    grid = decomp.grid
    XC, YC = _cell_centers(grid)
    centered = [_center_value(F) for F in fields]
    total = 0.0
    for mask in (decomp.pos_cells, decomp.neg_cells):
        if mask.any():
            vals = fn(XC[mask], YC[mask], *(c[mask] for c in centered))
            total += decomp.cell_area * float(np.sum(vals))
    return total


def integrate_signed(decomp, fn_pos, fn_neg, fields=()):
    """Integrate a sign-branched integrand over the decomposed cells.

    ``fn_pos``/``fn_neg`` are vectorized callables (x, y, *field_values);
    ``fields`` are nodal arrays interpolated bilinearly to evaluation
    points (cell centers for uncut cells, piece centroids for cut ones).
    """
    grid = decomp.grid
    XC, YC = _cell_centers(grid)
    centered = [_center_value(F) for F in fields]
    total = 0.0
    for mask, fn in ((decomp.pos_cells, fn_pos), (decomp.neg_cells, fn_neg)):
        if mask.any():
            vals = fn(XC[mask], YC[mask], *(c[mask] for c in centered))
            total += decomp.cell_area * float(np.sum(vals))
    for i, j, pieces in decomp.cut_cells:
        for sign, area, cx, cy in pieces:
            vals = [_bilinear(F, grid, i, j, cx, cy) for F in fields]
            fn = fn_pos if sign > 0 else fn_neg
            total += area * float(fn(cx, cy, *vals))
    return total


@dataclass(frozen=True)
class WeightedNorms:
    """Weighted norms of a grid field: L2(|K|), dual L2(1/|K|), and the
    H1_0(K) seminorm.  The dual norm is None unless requested; cut-cell
    area excluded from it is reported."""

    l2_weighted: float
    h1_weighted: float
    l2_dual_weighted: float | None = None
    excluded_measure: float = 0.0


def weighted_norms(u, grid, kfun=canonical_type_function,
                   include_dual=True, decomp=None):
    """Quadrature of (int |K| u^2)^1/2, (int 1/|K| u^2)^1/2, and
    (int |K| u_x^2 + u_y^2)^1/2.

    The dual norm skips cells straddling K = 0 (their total area is
    reported) and raises DualNormSingular if u is supported there.
    """
    u = np.asarray(u, dtype=float)
    if decomp is None:
        decomp = decompose_cells(grid, kfun)
    ux, uy = gradient(u, grid)

    def absk_u2(x, y, uv):
        return np.abs(kfun(x, y)) * uv * uv

    def h1_density(x, y, uxv, uyv):
        return np.abs(kfun(x, y)) * uxv * uxv + uyv * uyv

    l2sq = integrate_signed(decomp, absk_u2, absk_u2, (u,))
    h1sq = integrate_signed(decomp, h1_density, h1_density, (ux, uy))
    dual = None
    excluded = 0.0
    if include_dual:
        u_scale = float(np.abs(u).max())
        for i, j, _ in decomp.cut_cells:
            excluded += decomp.cell_area
            corner_max = float(np.abs(u[i:i + 2, j:j + 2]).max())
            if corner_max > 1e-12 * max(u_scale, 1e-300):
                raise DualNormSingular(
                    f"field is supported on cell ({i}, {j}) straddling the "
                    "sonic curve"
                )

        def inv_absk_u2(x, y, uv):
            return uv * uv / np.abs(kfun(x, y))

        dual = np.sqrt(max(integrate_uncut(decomp, inv_absk_u2, (u,)), 0.0))
    return WeightedNorms(
        l2_weighted=np.sqrt(max(l2sq, 0.0)),
        h1_weighted=np.sqrt(max(h1sq, 0.0)),
        l2_dual_weighted=dual,
        excluded_measure=excluded,
    )
