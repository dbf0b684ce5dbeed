"""Command-line front end.

Subcommands: project, norm, rpk-check, dual-extremal, d2-scan,
dirichlet, search, figures, selftest.

Exit codes: 0 success, 2 validation/usage error, 3 a series or solver
failed to converge.  Settings resolve as defaults < config file
(``key=value`` lines, ``#`` comments) < flags; ``RIESZ_LAB_THREADS``
caps worker threads.

Polynomials travel as JSON ({"dim": d, "terms": [{"alpha": [...],
"re": x, "im": y}, ...]}); grid samples as the RLGF binary dump.
Tabular results are CSV by default, ``--format json`` switches to a
single JSON document.  Fixed seed means byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .config import RunConfig, make_config
from .dirichlet import DirichletSpec, dirichlet_norm, growth_fit, lattice_count
from .extremal import dual_extremal_solve
from .figures import figure_tables, table_csv
from .fourier import (
    GRID_MAGIC,
    TrigPoly,
    load_grid,
    partial_project,
    riesz_project,
    riesz_project_minus,
    sample,
    save_grid,
)
from .homog2 import threshold_scan
from .kernels import coefficient_check, szego_kernel_grid, szego_norm, truncated_szego_poly
from .norms import conjugate, lp_norm
from .search import violation_search
from .selftest import run_selftest
from .series import NonconvergenceError


def _float_list(text: str) -> list[float]:
    vals = [float(tok) for tok in text.split(",") if tok.strip()]
    if not vals:
        raise ValueError(f"empty list: {text!r}")
    return vals


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_sanitize(doc):
    """Replace non-finite floats (invalid in strict JSON) with strings."""
    if isinstance(doc, dict):
        return {k: _json_sanitize(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_json_sanitize(v) for v in doc]
    if isinstance(doc, float) and not math.isfinite(doc):
        return repr(doc)  # 'inf', '-inf', 'nan'
    return doc


def _json_text(doc) -> str:
    return json.dumps(_json_sanitize(doc), indent=2, sort_keys=True) + "\n"


def _csv_text(header: str, rows: list[str]) -> str:
    return "\n".join([header, *rows]) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    return str(x)


def _is_grid_file(path: str) -> bool:
    if path == "-":
        return False
    try:
        with open(path, "rb") as fh:
            return fh.read(4) == GRID_MAGIC
    except OSError:
        return False


def _load_poly(path: str) -> TrigPoly:
    return TrigPoly.from_json(_read_text(path))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_project(args, cfg: RunConfig) -> int:
    if _is_grid_file(args.infile):
        if args.axes:
            raise ValueError("partial projection is only defined for polynomial input")
        grid = load_grid(args.infile)
        proj = riesz_project_minus(grid) if args.minus else riesz_project(grid)
        if not cfg.out:
            raise ValueError("grid input requires --out for the binary result")
        save_grid(proj, cfg.out)
        if proj.aliasing_bound:
            print(f"aliasing_bound {proj.aliasing_bound!r}", file=sys.stderr)
        return 0
    poly = _load_poly(args.infile)
    if args.axes:
        proj = partial_project(poly, _int_list(args.axes))
    elif args.minus:
        proj = riesz_project_minus(poly)
    else:
        proj = riesz_project(poly)
    _write_text(_json_text(proj.to_json_dict()), cfg.out)
    return 0


def cmd_norm(args, cfg: RunConfig) -> int:
    p = float(args.p)
    if _is_grid_file(args.infile):
        grid = load_grid(args.infile)
    else:
        poly = _load_poly(args.infile)
        n = max(cfg.grid_for(poly.dim), 2 * poly.bandwidth() + 2)
        n += n % 2
        grid = sample(poly, n, cfg.offset)
    value = lp_norm(grid, p)
    if cfg.fmt == "json":
        _write_text(_json_text({"p": p, "norm": value, "n_per_axis": grid.n_per_axis}), cfg.out)
    else:
        _write_text(_csv_text("p,norm", [f"{_cell(p)},{_cell(value)}"]), cfg.out)
    return 0


def cmd_rpk_check(args, cfg: RunConfig) -> int:
    q = float(args.q)
    p = float(args.p) if args.p is not None else 4.0 / conjugate(q)
    report = coefficient_check(q=q, p=p, n_max=args.n_max)
    doc = report.to_json_dict()
    if args.r:
        ctl = cfg.series_control()
        checks = []
        for r in _float_list(args.r):
            w = math.sqrt(r)
            series = szego_norm(w, p, ctl)
            grid = szego_kernel_grid(w, n_per_axis=4096)
            quad = lp_norm(grid, p)
            checks.append({"r": r, "series": series, "quadrature": quad, "diff": abs(series - quad)})
        doc["quadrature_checks"] = checks
    if cfg.fmt == "json":
        _write_text(_json_text(doc), cfg.out)
    else:
        rows = [
            f"{n + 1},{_cell(m)},{_cell(fm)}"
            for n, (m, fm) in enumerate(zip(report.margins, report.factor_margins))
        ]
        _write_text(_csv_text("n,margin,factor_margin", rows), cfg.out)
    status = "passed" if report.passed else f"violation at n={report.first_violation}"
    print(f"rpk-check q={q} p={p}: {status}", file=sys.stderr)
    return 0


def cmd_dual_extremal(args, cfg: RunConfig) -> int:
    if (args.kernel is None) == (args.infile is None):
        raise ValueError("give exactly one of --kernel W or --in FILE")
    if args.kernel is not None:
        phi = truncated_szego_poly(complex(args.kernel), args.degree)
    else:
        phi = _load_poly(args.infile)
    triple = dual_extremal_solve(
        phi,
        q=float(args.q),
        trunc_degree=args.trunc_degree,
        tol=args.tol if args.tol is not None else 1e-6,
        n_per_axis=args.grid,
        max_iter=args.max_iter,
    )
    _write_text(_json_text(triple.to_json_dict()), cfg.out)
    return 0


def cmd_d2_scan(args, cfg: RunConfig) -> int:
    qs = _float_list(args.q)
    eps_list = tuple(_float_list(args.eps))
    ctl = cfg.series_control()
    scans = [
        threshold_scan(
            q,
            eps_list=eps_list,
            p_lo=args.p_lo,
            p_hi=args.p_hi,
            resolution=args.resolution,
            ctl=ctl,
        )
        for q in qs
    ]
    if cfg.fmt == "json":
        _write_text(_json_text({"scans": [s.to_json_dict() for s in scans]}), cfg.out)
        return 0
    rows = []
    for scan in scans:
        for row in scan.rows:
            rows.append(
                ",".join(
                    _cell(v)
                    for v in (scan.q, row.eps, row.threshold_p, row.a, row.b, row.psi_norm)
                )
            )
    _write_text(_csv_text("q,eps,threshold_p,a,b,psi_norm", rows), cfg.out)
    meta = {
        "eps": list(eps_list),
        "p_window": [args.p_lo, args.p_hi],
        "resolution": args.resolution,
        "series": {"max_terms": cfg.max_terms, "rel_tol": cfg.rel_tol},
        "scans": [
            {"q": s.q, "q_star": s.q_star, "extrapolated": s.extrapolated, **s.metadata}
            for s in scans
        ],
    }
    if cfg.out:
        _write_text(_json_text(meta), cfg.out + ".meta.json")
    else:
        print(_json_text(meta), end="", file=sys.stderr)
    return 0


def cmd_dirichlet(args, cfg: RunConfig) -> int:
    dim = args.d
    ps = _float_list(args.p)
    radii = _float_list(args.radii) if args.radii else _default_radii(dim)
    rows = []
    row_docs = []
    for p in ps:
        for radius in radii:
            spec = DirichletSpec(radius=radius, dim=dim)
            norm = dirichlet_norm(spec, p, n_per_axis=args.grid)
            count = lattice_count(radius, dim)
            rows.append(",".join(_cell(v) for v in (dim, p, radius, norm, count)))
            row_docs.append(
                {"d": dim, "p": p, "R": radius, "norm": norm, "lattice_count": count}
            )
    fits = []
    if args.fit:
        for p in ps:
            fit = growth_fit(dim, p, radii, n_per_axis=args.grid, threads=cfg.threads)
            fits.append(
                {
                    "d": dim,
                    "p": p,
                    "exponent": fit.exponent,
                    "c_hat": fit.c_hat,
                    "target": fit.target,
                    "radii": list(fit.radii),
                    "method": "log-log least squares, smallest radius dropped",
                    "note": "empirical rate only; absolute constants are not certified",
                }
            )
    if cfg.fmt == "json":
        doc = {"rows": row_docs}
        if fits:
            doc["fits"] = fits
        _write_text(_json_text(doc), cfg.out)
        return 0
    _write_text(_csv_text("d,p,R,norm,lattice_count", rows), cfg.out)
    if fits:
        text = _json_text({"fits": fits})
        if cfg.out:
            _write_text(text, cfg.out + ".fit.json")
        else:
            print(text, end="", file=sys.stderr)
    return 0


def _default_radii(dim: int) -> list[float]:
    return [3.0, 6.0, 9.0, 12.0] if dim == 3 else [5.0, 10.0, 20.0, 40.0]


def cmd_search(args, cfg: RunConfig) -> int:
    result = violation_search(
        args.d,
        q=float(args.q),
        p=float(args.p),
        budget=cfg.budget,
        config=cfg,
        seed=cfg.seed,
    )
    _write_text(_json_text(result.to_json_dict()), cfg.out)
    return 0


def cmd_figures(args, cfg: RunConfig) -> int:
    table = figure_tables(args.d)
    if cfg.fmt == "json":
        doc = {
            "dim": table.dim,
            "rows": [
                {
                    "q": None if math.isinf(r.q) else r.q,
                    "upper": r.upper,
                    "lower": r.lower,
                    "upper_source": r.upper_source,
                    "lower_source": r.lower_source,
                }
                for r in table.rows
            ],
        }
        _write_text(_json_text(doc), cfg.out)
    else:
        _write_text(table_csv(table), cfg.out)
    return 0


def cmd_selftest(args, cfg: RunConfig) -> int:
    _, failed = run_selftest()
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key=value settings file")
    common.add_argument("--grid", type=int, help="points per axis for quadrature grids")
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--seed", type=int, help="RNG seed")
    common.add_argument("--budget", type=int, help="evaluation budget for searches")
    common.add_argument("--threads", type=int, help="worker-thread cap")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format")

    parser = argparse.ArgumentParser(
        prog="rieszlab",
        description="Numerical laboratory for Riesz projections on the torus.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("project", parents=[common], help="analytic projection of a polynomial or grid dump")
    sp.add_argument("--in", dest="infile", default="-", help="TrigPoly JSON or RLGF file ('-' = stdin)")
    sp.add_argument("--minus", action="store_true", help="strictly-negative part instead (d=1)")
    sp.add_argument("--axes", help="project these axes only, e.g. 1,2")
    sp.set_defaults(fn=cmd_project)

    sp = sub.add_parser("norm", parents=[common], help="L^p norm, 0 <= p <= inf")
    sp.add_argument("--in", dest="infile", default="-", help="TrigPoly JSON or RLGF file ('-' = stdin)")
    sp.add_argument("--p", required=True, help="exponent (0, inf allowed)")
    sp.set_defaults(fn=cmd_norm)

    sp = sub.add_parser("rpk-check", parents=[common], help="coefficientwise kernel-norm comparison")
    sp.add_argument("--q", required=True, help="constraint exponent (q > 1 or inf)")
    sp.add_argument("--p", help="norm exponent (default 4/q*)")
    sp.add_argument("--n-max", type=int, default=50, help="compare coefficients up to this index")
    sp.add_argument("--r", help="also check the norm series against quadrature at these r=|w|^2")
    sp.set_defaults(fn=cmd_rpk_check)

    sp = sub.add_parser("dual-extremal", parents=[common], help="minimal-norm extension solver")
    sp.add_argument("--q", required=True, help="norm exponent (1 < q < inf)")
    sp.add_argument("--kernel", help="use a truncated point-evaluation kernel at this w")
    sp.add_argument("--degree", type=int, default=40, help="kernel truncation degree")
    sp.add_argument("--in", dest="infile", help="analytic TrigPoly JSON to extend")
    sp.add_argument("--trunc-degree", type=int, help="degree cap for the co-analytic part")
    sp.add_argument("--max-iter", type=int, default=4000)
    sp.set_defaults(fn=cmd_dual_extremal)

    sp = sub.add_parser("d2-scan", parents=[common], help="threshold scan for the 2-d perturbed family")
    sp.add_argument("--q", required=True, help="comma list of q values (inf allowed)")
    sp.add_argument("--eps", default="0.08,0.04,0.02", help="comma list of perturbation sizes")
    sp.add_argument("--p-lo", type=float, default=0.05)
    sp.add_argument("--p-hi", type=float, default=4.5)
    sp.add_argument("--resolution", type=float, default=1e-4)
    sp.set_defaults(fn=cmd_d2_scan)

    sp = sub.add_parser("dirichlet", parents=[common], help="spherical Dirichlet kernel norms")
    sp.add_argument("--d", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--p", default="1", help="comma list of exponents")
    sp.add_argument("--radii", help="comma list of radii")
    sp.add_argument("--fit", action="store_true", help="also fit log-norm vs log-R growth")
    sp.set_defaults(fn=cmd_dirichlet)

    sp = sub.add_parser("search", parents=[common], help="search for norm-inflation certificates")
    sp.add_argument("--d", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--q", required=True)
    sp.add_argument("--p", required=True)
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("figures", parents=[common], help="bound tables over q")
    sp.add_argument("--d", type=int, required=True, choices=(1, 2))
    sp.set_defaults(fn=cmd_figures)

    sp = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    sp.set_defaults(fn=cmd_selftest)
    return parser


def _config_from_args(args) -> RunConfig:
    overrides: dict = {}
    if getattr(args, "grid", None) is not None:
        overrides.update(grid_1d=args.grid, grid_2d=args.grid, grid_3d=args.grid)
    for flag, key in (("tol", "tol"), ("seed", "seed"), ("budget", "budget"),
                      ("threads", "threads"), ("out", "out"), ("fmt", "fmt")):
        val = getattr(args, flag, None)
        if val is not None:
            overrides[key] = val
    return make_config(getattr(args, "config", None), **overrides)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return args.fn(args, cfg)
    except NonconvergenceError as exc:
        print(f"nonconvergence: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
