"""Command-line front end.

Subcommands cover every module: stix, dispersion, cutoffs, resonances,
typemap, characteristics, origin-chars, symbol-check, layered, solve,
solve-mixed, energy-check, illposedness.  Outputs are deterministic:
identical configuration and seed give byte-identical files.

Exit codes: 0 success; 1 invalid input or configuration; 2 numerical
failure (singularity, factorization failure); 3 a check failed (energy
ratio below bound, inadmissible boundary, symbol-check failure).
"""

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from . import config as cfg
from . import dispersion, electrostatics, output, plasma, typegeometry
from .errors import (BracketTooWide, ColdwaveError, CyclotronResonance,
                     DegenerateQuartic, DualNormSingular,
                     FactorizationFailure, InadmissibleBoundary,
                     InsufficientLevels, LengthMismatch, MissingElectrons,
                     SingularCoefficient, SpecInvalid, StartNotHyperbolic)
from .fields import Field1D
from .grid import Domain, Grid2D
from .multipliers import (MixedMultiplierSpec, MultiplierSpec,
                          random_interior_bump, verify_energy_inequality)
from .quadrature import decompose_cells
from .solvers import (illposedness_diagnostic, solve_closed_dirichlet,
                      solve_mixed)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
EXIT_CHECK_FAILED = 3

_NUMERICAL_ERRORS = (CyclotronResonance, BracketTooWide,
                     SingularCoefficient, DegenerateQuartic,
                     FactorizationFailure, StartNotHyperbolic,
                     DualNormSingular)
_CHECK_ERRORS = (InadmissibleBoundary,)
_INVALID_ERRORS = (SpecInvalid, InsufficientLevels, MissingElectrons,
                   LengthMismatch)


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by all subcommands."""

    subcommand: str
    out: str | None
    fmt: str
    seed: int
    tol: float
    quiet: bool
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("--tol must be positive")
        if self.fmt not in ("csv", "json"):
            raise ValueError("--format must be csv or json")


def _note(run, message):
    if not run.quiet:
        print(message, file=sys.stderr)


def _box(text):
    parts = [float(v) for v in text.split(":")]
    if len(parts) != 4 or not (parts[0] < parts[1] and parts[2] < parts[3]):
        raise ValueError(f"box {text!r} must be x0:x1:y0:y1 with x0<x1, y0<y1")
    return tuple(parts)


def cmd_stix(run):
    pl = cfg.parse_plasma(cfg.load_json(run.options["plasma"]))
    st = plasma.stix_parameters(pl, run.options["omega"],
                                resonance_rtol=run.tol)
    output.write_json(
        {"R": st.R, "L": st.L, "s": st.s, "d": st.d, "p": st.p}, run.out)
    return EXIT_OK


def cmd_dispersion(run):
    pl = cfg.parse_plasma(cfg.load_json(run.options["plasma"]))
    omegas = cfg.parse_grid_spec(run.options["omegas"])
    thetas = cfg.parse_grid_spec(run.options["thetas"], angle=True)
    if not omegas or not thetas:
        raise ValueError("omega and theta grids must be nonempty")
    if min(omegas) <= 0.0:
        raise ValueError("omega grid values must be positive")
    rows = dispersion.dispersion_scan(pl, omegas, thetas,
                                      resonance_rtol=run.tol)
    output.write_csv(
        dispersion.SCAN_HEADER,
        [(r.omega, r.theta, r.A, r.B, r.C, r.F2, r.n2_plus, r.n2_minus,
          r.class_plus, r.class_minus, r.flag) for r in rows],
        run.out)
    return EXIT_OK


def cmd_cutoffs(run):
    pl = cfg.parse_plasma(cfg.load_json(run.options["plasma"]))
    bracket = cfg.parse_bracket(run.options["bracket"])
    found = dispersion.cutoff_frequencies(pl, bracket)
    if run.fmt == "csv":
        output.write_csv("omega,which", found, run.out)
    else:
        output.write_json(
            [{"omega": w, "which": which} for w, which in found], run.out)
    return EXIT_OK


def cmd_resonances(run):
    pl = cfg.parse_plasma(cfg.load_json(run.options["plasma"]))
    bracket = cfg.parse_bracket(run.options["bracket"])
    res = dispersion.hybrid_resonances(pl, bracket)
    if run.fmt == "csv":
        output.write_csv("omega", [(w,) for w in res.roots], run.out)
    else:
        output.write_json(
            {"roots": list(res.roots),
             "lower_hybrid_estimate": res.lower_hybrid_estimate}, run.out)
    return EXIT_OK


def cmd_typemap(run):
    data = cfg.load_json(run.options["fields"])
    k11 = cfg.parse_field(data.get("K11"))
    k33 = cfg.parse_field(data.get("K33"), default=1.0)
    x0, x1, z0, z1 = _box(run.options["box"])
    nx, nz = run.options["nx"], run.options["nz"]
    xs = np.linspace(x0, x1, nx)
    zs = np.linspace(z0, z1, nz)
    rows = []
    k33_min = np.inf
    for x in xs:
        for z in zs:
            v11 = float(np.real(k11(x, z)))
            v33 = float(np.real(k33(x, z)))
            k33_min = min(k33_min, v33)
            rows.append((x, z, v11, v33,
                         electrostatics.type_from_product(v11, v33)))
    if k33_min <= 0.0:
        _note(run, f"warning: K33 reaches {k33_min:g} <= 0; the type map "
                   "assumes strictly positive K33")
    output.write_csv("x,z,K11,K33,type", rows, run.out)
    return EXIT_OK


def cmd_characteristics(run):
    x, y = (float(v) for v in run.options["start"].split(","))
    branch = run.options["branch"]
    domain = _box(run.options["box"]) if run.options.get("box") else None
    path = typegeometry.trace_characteristic(
        (x, y), branch, run.options["step"], domain=domain,
        max_steps=run.options["max_steps"])
    rows = [(path.branch, i, px, py)
            for i, (px, py) in enumerate(path.points)]
    output.write_csv("branch,step,x,y", rows, run.out)
    _note(run, f"termination: {path.termination} "
               f"({len(path.points)} points)")
    return EXIT_OK


def cmd_origin_chars(run):
    oc = typegeometry.origin_characteristics()
    output.write_json({
        "coefficients": list(oc.polynomial),
        "roots": list(oc.roots),
        "count": oc.count,
    }, run.out)
    return EXIT_OK


def cmd_symbol_check(run):
    if run.options.get("plasma"):
        pl = cfg.parse_plasma(cfg.load_json(run.options["plasma"]))
        omega = run.options.get("omega")
        if omega is None:
            raise ValueError("--omega is required with --plasma")
        K = plasma.dielectric_tensor(plasma.stix_parameters(pl, omega))
    else:
        K = plasma.dielectric_tensor(plasma.StixParameters.vacuum())
    rng = np.random.default_rng(run.seed)
    kmax = run.options["kmax"]
    records = []
    all_pass = True
    for _ in range(run.options["trials"]):
        k = rng.uniform(-kmax, kmax, 3)
        _, det = typegeometry.curl_curl_symbol(k)
        sigma = typegeometry.coulomb_gauge_symbol(K, k)
        sigma2 = typegeometry.coulomb_gauge_symbol(K, 2.0 * k)
        nk = float(np.linalg.norm(k))
        det_ok = abs(det) <= 1e-12 * max(1.0, nk ** 6)
        hom_ok = abs(sigma2 - 64.0 * sigma) <= 1e-10 * max(abs(64.0 * sigma),
                                                           1e-300)
        ok = bool(det_ok and hom_ok)
        all_pass &= ok
        records.append({"k": list(k), "det": det,
                        "sigma": float(sigma.real), "pass": ok})
    output.write_json(records, run.out)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def cmd_layered(run):
    data = cfg.load_json(run.options["layered"])
    f2d = cfg.parse_field(data.get("K11"))
    k11 = Field1D(lambda x: float(np.real(f2d(x, 0.0))),
                  lambda x: float(np.real(f2d.dx(x, 0.0))))
    problem = electrostatics.LayeredProblem(
        k11, float(data.get("sigma0", 0.0)), tuple(data["x_range"]))
    re_im = [float(v) for v in run.options["psi0"].split(",")]
    psi0 = complex(re_im[0], re_im[1] if len(re_im) > 1 else 0.0)
    sol = electrostatics.integrate_layered(
        problem, psi0, run.options["x0"], run.options["x1"])
    rows = [(x, p.real, p.imag) for x, p in zip(sol.xs, sol.psi)]
    output.write_csv("x,psi_re,psi_im", rows, run.out)
    _note(run, f"accepted at {sol.steps} steps")
    return EXIT_OK


def _solution_rows(grid, arrays):
    rows = []
    for i in range(grid.nx):
        for j in range(grid.ny):
            if grid.inside[i, j]:
                rows.append((grid.xs[i], grid.ys[j],
                             *(a[i, j] for a in arrays)))
    return rows


def cmd_solve(run):
    problem, (nx, ny) = cfg.parse_problem(cfg.load_json(run.options["problem"]))
    if problem.bc != "closed_dirichlet":
        raise ValueError("solve expects a closed_dirichlet problem; "
                         "use solve-mixed")
    grid = Grid2D(problem.domain, nx, ny)
    sol = solve_closed_dirichlet(problem, grid)
    output.write_csv("x,y,u", _solution_rows(grid, [sol.values]), run.out)
    summary = {"residual_norm": sol.residual_norm,
               "condition_estimate": sol.condition_estimate,
               "rank": sol.rank, **sol.norms}
    if run.options.get("summary"):
        output.write_json(summary, run.options["summary"])
    else:
        _note(run, output.json_text(summary))
    return EXIT_OK


def cmd_solve_mixed(run):
    problem, (nx, ny) = cfg.parse_problem(cfg.load_json(run.options["problem"]))
    if problem.bc != "mixed":
        raise ValueError("solve-mixed expects a mixed problem")
    spec = MixedMultiplierSpec.auto(problem.domain,
                                    mu=run.options["mu"],
                                    delta=run.options["mdelta"])
    grid = Grid2D(problem.domain, nx, ny)
    sol = solve_mixed(problem, grid, spec)
    u1, u2 = sol.values
    output.write_csv("x,y,u1,u2", _solution_rows(grid, [u1, u2]), run.out)
    summary = {"residual_norm": sol.residual_norm,
               "condition_estimate": sol.condition_estimate,
               "rank": sol.rank, **sol.norms, **sol.diagnostics}
    if run.options.get("summary"):
        output.write_json(summary, run.options["summary"])
    else:
        _note(run, output.json_text(summary))
    return EXIT_OK


def cmd_energy_check(run):
    kappa = run.options["kappa"]
    delta = run.options["delta"]
    box = _box(run.options["box"])
    nx = run.options["nx"]
    domain = Domain.rectangle(*box)
    rng = np.random.default_rng(run.seed)
    grids = [Grid2D(domain, nx, nx), Grid2D(domain, 2 * nx - 1, 2 * nx - 1)]
    decomps = [decompose_cells(g) for g in grids]
    specs = [MultiplierSpec.from_kappa(kappa, g, delta=delta,
                                       delta_tilde=run.options["delta_tilde"])
             for g in grids]
    bound = delta * run.options["bound_factor"]
    ratios = []
    allowances = []
    for _ in range(run.options["trials"]):
        bump = random_interior_bump(domain, rng)
        pair = []
        for g, dec, spec in zip(grids, decomps, specs):
            X, Y = g.meshgrid()
            u = bump(X, Y)
            u[g.boundary] = 0.0
            rep = verify_energy_inequality(u, kappa, spec, g, decomp=dec)
            pair.append(rep.ratio)
        ratios.append(min(pair))
        allowances.append(abs(pair[0] - pair[1]))
    ok = bool(min(ratios) >= bound)
    output.write_json({
        "kappa": kappa, "delta": delta, "trials": run.options["trials"],
        "bound": bound, "min_ratio": min(ratios),
        "max_two_resolution_gap": max(allowances),
        "warnings": list(specs[0].warnings),
        "pass": ok, "ratios": ratios,
    }, run.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_illposedness(run):
    problem, _ = cfg.parse_problem(cfg.load_json(run.options["problem"]))
    levels = [int(v) for v in run.options["levels"].split(",")]
    if any(n < cfg.GRID_MIN for n in levels):
        raise ValueError(f"levels must be >= {cfg.GRID_MIN}")
    diag = illposedness_diagnostic(problem, levels)
    output.write_json([{"h": h, "cond": c} for h, c in diag], run.out)
    return EXIT_OK


def _add_global_flags(parser, suppress=False):
    """Shared flags; subcommands re-declare them with SUPPRESS defaults so
    they may appear on either side of the subcommand name."""
    d = (lambda _: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d(None),
                        help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"),
                        default=d("json"),
                        help="output format where both are supported")
    parser.add_argument("--seed", type=int, default=d(42))
    parser.add_argument("--tol", type=float, default=d(1e-9),
                        help="cyclotron-resonance guard (relative)")
    parser.add_argument("--quiet", action="store_true", default=d(False))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coldwave",
        description="Cold-plasma wave numerics: Stix parameters, dispersion "
                    "scans, type geometry, and degenerate-operator solvers.")
    _add_global_flags(parser)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("stix", help="Stix parameters at one frequency")
    p.add_argument("--plasma", required=True)
    p.add_argument("--omega", type=float, required=True)

    p = sub.add_parser("dispersion", help="dispersion scan to CSV")
    p.add_argument("--plasma", required=True)
    p.add_argument("--omegas", required=True,
                   help="'a,b,c' or start:stop:count[:log]")
    p.add_argument("--thetas", required=True,
                   help="angles; accepts 90deg / 1.57rad forms")

    p = sub.add_parser("cutoffs", help="cutoff frequencies in a bracket")
    p.add_argument("--plasma", required=True)
    p.add_argument("--bracket", required=True, help="'low:high' in rad/s")

    p = sub.add_parser("resonances", help="hybrid resonances in a bracket")
    p.add_argument("--plasma", required=True)
    p.add_argument("--bracket", required=True)

    p = sub.add_parser("typemap", help="elliptic/hyperbolic type map to CSV")
    p.add_argument("--fields", required=True, help="field-definition JSON")
    p.add_argument("--box", required=True, help="x0:x1:z0:z1")
    p.add_argument("--nx", type=int, default=33)
    p.add_argument("--nz", type=int, default=33)

    p = sub.add_parser("characteristics", help="trace one characteristic")
    p.add_argument("--start", required=True, help="'x,y'")
    p.add_argument("--branch", type=int, choices=(-1, 1), required=True)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--box", help="stop box x0:x1:y0:y1")
    p.add_argument("--max-steps", type=int, default=200000)

    sub.add_parser("origin-chars",
                   help="characteristic slopes through the origin")

    p = sub.add_parser("symbol-check",
                       help="curl-curl degeneracy and gauge-symbol checks")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--kmax", type=float, default=10.0)
    p.add_argument("--plasma")
    p.add_argument("--omega", type=float)

    p = sub.add_parser("layered", help="integrate the plane-layered ODE")
    p.add_argument("--layered", required=True,
                   help="JSON with K11, sigma0, x_range")
    p.add_argument("--psi0", default="1,0", help="'re,im'")
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--x1", type=float, required=True)

    p = sub.add_parser("solve", help="closed Dirichlet least-squares solve")
    p.add_argument("--problem", required=True)
    p.add_argument("--summary", help="write run summary JSON here")

    p = sub.add_parser("solve-mixed", help="mixed-problem least squares")
    p.add_argument("--problem", required=True)
    p.add_argument("--summary")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--mdelta", type=float, default=0.05,
                   help="multiplier delta (piecewise m)")

    p = sub.add_parser("energy-check",
                       help="multiplier energy-inequality trials")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--delta-tilde", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--box", default="-1:1:-1:1")
    p.add_argument("--nx", type=int, default=65)
    p.add_argument("--bound-factor", type=float, default=0.9)

    p = sub.add_parser("illposedness",
                       help="condition growth across refinements")
    p.add_argument("--problem", required=True)
    p.add_argument("--levels", default="13,33,49")

    for action in sub.choices.values():
        _add_global_flags(action, suppress=True)
    return parser


_COMMANDS = {
    "stix": cmd_stix,
    "dispersion": cmd_dispersion,
    "cutoffs": cmd_cutoffs,
    "resonances": cmd_resonances,
    "typemap": cmd_typemap,
    "characteristics": cmd_characteristics,
    "origin-chars": cmd_origin_chars,
    "symbol-check": cmd_symbol_check,
    "layered": cmd_layered,
    "solve": cmd_solve,
    "solve-mixed": cmd_solve_mixed,
    "energy-check": cmd_energy_check,
    "illposedness": cmd_illposedness,
}


def main(argv=None):
    parser = build_parser()
    parser.error = lambda message: (_parser_fail(parser, message))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    options = {k: v for k, v in vars(args).items()
               if k not in ("out", "format", "seed", "tol", "quiet",
                            "subcommand")}
    try:
        run = RunConfig(args.subcommand, args.out, args.format, args.seed,
                        args.tol, args.quiet, options)
        return _COMMANDS[args.subcommand](run)
    except _CHECK_ERRORS as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _INVALID_ERRORS as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ColdwaveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _parser_fail(parser, message):
    parser.print_usage(sys.stderr)
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
