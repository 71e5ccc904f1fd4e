"""Pole-aware bracketed root finding on frequency intervals.

The Stix functions R, L, s have simple poles at the cyclotron
frequencies, so derivative-based root finders are unsafe.  The scanner
splits a bracket at the known pole locations (with small guard gaps),
samples each pole-free piece on a geometric grid, and bisects every sign
change.
"""

import math

from .errors import BracketTooWide

MAX_SUBINTERVALS = 2 ** 16
POLE_GUARD_RTOL = 1e-9


def bisect(f, a, b, rtol=1e-12, max_iter=200):
    """Root of f in [a, b] by plain bisection; f(a) and f(b) must differ
    in sign (either may be zero)."""
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("root is not bracketed")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if b - a <= rtol * abs(m):
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0.0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def split_at_poles(a, b, poles, guard_rtol=POLE_GUARD_RTOL):
    """Pole-free closed subintervals of [a, b].

    Each pole inside (a, b) is excised with a relative guard gap.  Raises
    BracketTooWide if the guard gaps cannot be separated (poles too close
    together, or more pieces than MAX_SUBINTERVALS).
    """
    if not a < b:
        raise ValueError("bracket endpoints must be increasing")
    inside = sorted(p for p in poles if a - guard_rtol * abs(p) < p < b + guard_rtol * abs(p))
    if len(inside) + 1 > MAX_SUBINTERVALS:
        raise BracketTooWide(f"{len(inside)} poles inside bracket")
    pieces = []
    lo = a
    for p in inside:
        gap = guard_rtol * abs(p)
        hi = p - gap
        if hi <= lo:
            # pole guard swallows the whole piece (pole at/near an
            # endpoint, or two poles closer than their guards)
            lo = max(lo, p + gap)
            continue
        pieces.append((lo, hi))
        lo = p + gap
    if lo < b:
        pieces.append((lo, b))
    if not pieces:
        raise BracketTooWide("bracket reduces to pole guards only")
    return pieces


def scan_roots(f, a, b, poles=(), n_grid=2048, rtol=1e-12):
    """All sign-change roots of f on [a, b], avoiding the given poles.

    Samples each pole-free piece on a geometric grid (a, b must be
    positive) and bisects every bracketed sign change.  Returns roots in
    increasing order; tangent (non-sign-changing) roots are not found.
    """
    if a <= 0.0:
        raise ValueError("bracket must be positive")
    roots = []
    for lo, hi in split_at_poles(a, b, poles):
        ratio = hi / lo
        n = max(8, min(n_grid, int(n_grid * math.log(ratio) / math.log(b / a)) if b > a else n_grid))
        xs = [lo * ratio ** (i / n) for i in range(n + 1)]
        fs = [f(x) for x in xs]
        for i in range(n):
            f0, f1 = fs[i], fs[i + 1]
            if f0 == 0.0:
                if not roots or abs(roots[-1] - xs[i]) > rtol * xs[i]:
                    roots.append(xs[i])
                continue
            if f0 * f1 < 0.0:
                r = bisect(f, xs[i], xs[i + 1], rtol=rtol)
                if not roots or abs(roots[-1] - r) > rtol * abs(r):
                    roots.append(r)
        if fs[-1] == 0.0:
            if not roots or abs(roots[-1] - xs[-1]) > rtol * xs[-1]:
                roots.append(xs[-1])
    return roots
