"""JSON configuration ingestion and validation.

Plasma configuration:
    {"B0": <tesla>, "species": [{"name": str, "mass_kg": num,
     "charge_sign": -1|1, "Z": int, "density_m3": num}, ...]}
Species named "electron" or "proton" may omit mass/charge fields.

Problem configuration:
    {"kappa": num, "domain": {"rects": [[x0,x1,y0,y1], ...]},
     "grid": {"nx": int, "ny": int},
     "bc": {"type": "closed_dirichlet"} | {"type": "mixed", "G": [...]},
     "forcing": {"kind": <expression id> | "samples" | "samples2", ...}}

Field definitions (type maps, layered runs):
    {"K11": {"kind": "affine_quadratic", "a": .., "b": ..}
            | {"kind": "constant", "value": ..}
            | {"kind": "expression-table", "xs": [...], "zs": [...],
               "values": [[...], ...]},
     "K33": {...}}   # optional, defaults to constant 1
"""

import json
import math

import numpy as np

from .constants import M_ELECTRON, M_PROTON
from .fields import Field2D
from .grid import Domain
from .plasma import PlasmaState, Species

SPECIES_ALIASES = {
    "electron": {"mass_kg": M_ELECTRON, "charge_sign": -1, "Z": 1},
    "proton": {"mass_kg": M_PROTON, "charge_sign": +1, "Z": 1},
}

GRID_MIN = 8


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def parse_plasma(data):
    """PlasmaState from a plasma-configuration mapping."""
    diags = validate_plasma(data)
    if diags:
        raise ValueError("invalid plasma configuration: " + "; ".join(diags))
    species = []
    for entry in data.get("species", []):
        merged = dict(SPECIES_ALIASES.get(entry.get("name", ""), {}))
        merged.update(entry)
        species.append(Species(
            name=merged.get("name", "species"),
            mass=float(merged["mass_kg"]),
            charge_sign=int(merged["charge_sign"]),
            charge_number=int(merged.get("Z", 1)),
            density=float(merged.get("density_m3", 0.0)),
        ))
    return PlasmaState(tuple(species), float(data.get("B0", 0.0)))


def validate_plasma(data):
    """Schema and range diagnostics for a plasma configuration."""
    diags = []
    if not isinstance(data, dict):
        return ["plasma configuration must be a JSON object"]
    b0 = data.get("B0", 0.0)
    if not isinstance(b0, (int, float)) or b0 < 0.0:
        diags.append("B0 must be a number >= 0")
    species = data.get("species", [])
    if not isinstance(species, list):
        return diags + ["species must be a list"]
    for k, entry in enumerate(species):
        if not isinstance(entry, dict):
            diags.append(f"species[{k}] must be an object")
            continue
        name = entry.get("name", "")
        merged = dict(SPECIES_ALIASES.get(name, {}))
        merged.update(entry)
        if "mass_kg" not in merged:
            diags.append(f"species[{k}] ({name!r}): missing mass_kg")
        elif not merged["mass_kg"] > 0.0:
            diags.append(f"species[{k}] ({name!r}): mass_kg must be > 0")
        if merged.get("charge_sign") not in (-1, 1):
            diags.append(f"species[{k}] ({name!r}): charge_sign must be -1 or 1")
        if merged.get("Z", 1) < 1:
            diags.append(f"species[{k}] ({name!r}): Z must be >= 1")
        if merged.get("density_m3", 0.0) < 0.0:
            diags.append(f"species[{k}] ({name!r}): density_m3 must be >= 0")
    return diags


def _box_normalized(domain):
    x0, x1, y0, y1 = domain.bounding_box

    def norm(x, y):
        return (x - x0) / (x1 - x0), (y - y0) / (y1 - y0)

    return norm


def scalar_forcing(kind, domain, params=None):
    """Vectorized forcing callable from an expression id."""
    params = params or {}
    if kind == "zero":
        return lambda x, y: np.zeros_like(np.asarray(x, dtype=float))
    if kind == "one":
        return lambda x, y: np.ones_like(np.asarray(x, dtype=float))
    if kind == "sine_bump":
        norm = _box_normalized(domain)

        def f(x, y):
            X, Y = norm(x, y)
            return np.sin(np.pi * X) * np.sin(np.pi * Y)

        return f
    if kind == "gauss":
        x0, x1, y0, y1 = domain.bounding_box
        cx = params.get("cx", 0.5 * (x0 + x1))
        cy = params.get("cy", 0.5 * (y0 + y1))
        w = params.get("w", (x1 - x0) / 6.0)

        def f(x, y):
            return np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * w * w))

        return f
    raise ValueError(f"unknown scalar forcing kind {kind!r}")


def vector_forcing(kind, domain, params=None):
    """Pair of forcing callables for the mixed first-order system."""
    if kind == "zero2":
        z = scalar_forcing("zero", domain)
        return z, z
    if kind == "smooth2":
        norm = _box_normalized(domain)

        def f1(x, y):
            X, Y = norm(x, y)
            return np.sin(np.pi * X) * np.cos(0.5 * np.pi * Y)

        def f2(x, y):
            X, Y = norm(x, y)
            return np.cos(np.pi * X) * np.sin(np.pi * Y) + 0.3

        return f1, f2
    raise ValueError(f"unknown vector forcing kind {kind!r}")


def parse_problem(data):
    """(ModelProblem, (nx, ny)) from a problem-configuration mapping."""
    from .solvers import ModelProblem

    diags = validate_problem(data)
    if diags:
        raise ValueError("invalid problem configuration: " + "; ".join(diags))
    domain = Domain(tuple(tuple(r) for r in data["domain"]["rects"]))
    bc = data.get("bc", {"type": "closed_dirichlet"})
    grid = data.get("grid", {"nx": 33, "ny": 33})
    forcing_cfg = data.get("forcing", {"kind": "zero"})
    kind = forcing_cfg.get("kind", "zero")
    if bc["type"] == "mixed":
        if kind == "samples2":
            forcing = (np.asarray(forcing_cfg["values1"], dtype=float),
                       np.asarray(forcing_cfg["values2"], dtype=float))
        else:
            forcing = vector_forcing(kind, domain, forcing_cfg.get("params"))
        problem = ModelProblem(float(data["kappa"]), domain, forcing=forcing,
                               bc="mixed", G=tuple(bc.get("G", ())))
    else:
        if kind == "samples":
            forcing = np.asarray(forcing_cfg["values"], dtype=float)
        else:
            forcing = scalar_forcing(kind, domain, forcing_cfg.get("params"))
        problem = ModelProblem(float(data["kappa"]), domain, forcing=forcing)
    return problem, (int(grid["nx"]), int(grid["ny"]))


def validate_problem(data):
    """Schema and range diagnostics for a problem configuration."""
    diags = []
    if not isinstance(data, dict):
        return ["problem configuration must be a JSON object"]
    kappa = data.get("kappa")
    if not isinstance(kappa, (int, float)):
        diags.append("kappa must be a number")
    else:
        bc_type = data.get("bc", {}).get("type", "closed_dirichlet")
        hi = 1.0 if bc_type == "mixed" else 2.0
        if not 0.0 <= kappa <= hi:
            diags.append(f"kappa out of range [0, {hi:g}] for {bc_type}")
    rects = data.get("domain", {}).get("rects")
    if not rects:
        diags.append("domain.rects must be a nonempty list")
    else:
        for r in rects:
            if len(r) != 4 or not (r[0] < r[1] and r[2] < r[3]):
                diags.append(f"rectangle {r} must satisfy x0 < x1, y0 < y1")
    grid = data.get("grid", {})
    for key in ("nx", "ny"):
        n = grid.get(key, 33)
        if not isinstance(n, int) or n < GRID_MIN:
            diags.append(f"grid.{key} must be an integer >= {GRID_MIN}")
    bc = data.get("bc", {"type": "closed_dirichlet"})
    if bc.get("type") not in ("closed_dirichlet", "mixed"):
        diags.append("bc.type must be 'closed_dirichlet' or 'mixed'")
    if bc.get("type") == "mixed":
        valid = {"bottom", "right", "top", "left"}
        for name in bc.get("G", ()):
            if name not in valid:
                diags.append(f"unknown boundary segment {name!r} in G")
        if rects and len(rects) != 1:
            diags.append("mixed problems need a single-rectangle domain")
    return diags


def parse_field(entry, default=None):
    """Field2D from a field-definition mapping."""
    if entry is None:
        if default is None:
            raise ValueError("missing field definition")
        return Field2D.constant(default)
    kind = entry.get("kind")
    if kind == "constant":
        return Field2D.constant(float(entry["value"]))
    if kind == "affine_quadratic":
        return Field2D.affine_quadratic(float(entry["a"]), float(entry["b"]))
    if kind == "expression-table":
        return Field2D.from_table(entry["xs"], entry["zs"], entry["values"])
    raise ValueError(f"unknown field kind {kind!r}")


def parse_bracket(text):
    """'W0:W1' -> (float, float) with ordering enforced."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"bracket {text!r} must be 'low:high'")
    lo, hi = float(parts[0]), float(parts[1])
    if not 0.0 < lo < hi:
        raise ValueError(f"bracket {text!r} must satisfy 0 < low < high")
    return lo, hi


def parse_angle(text):
    """Angle in radians from '1.2', '1.2rad', or '60deg'."""
    text = str(text).strip()
    if text.endswith("deg"):
        return math.radians(float(text[:-3]))
    if text.endswith("rad"):
        return float(text[:-3])
    return float(text)


def parse_grid_spec(text, angle=False):
    """Grid values from 'a,b,c' or 'start:stop:count[:log]'."""
    conv = parse_angle if angle else float
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(f"range {text!r} must be start:stop:count[:log]")
        start, stop = conv(parts[0]), conv(parts[1])
        count = int(parts[2])
        if count < 1:
            raise ValueError("count must be >= 1")
        spacing = parts[3] if len(parts) == 4 else "lin"
        if spacing == "log":
            if start <= 0.0 or stop <= 0.0:
                raise ValueError("log spacing needs positive endpoints")
            return list(np.geomspace(start, stop, count))
        if spacing != "lin":
            raise ValueError(f"unknown spacing {spacing!r}")
        return list(np.linspace(start, stop, count))
    return [conv(tok) for tok in text.split(",") if tok.strip()]
