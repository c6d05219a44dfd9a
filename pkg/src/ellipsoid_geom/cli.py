"""Command-line front end.

Exit codes: 0 success, 2 invalid input or usage, 3 verification failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .area import ellipse_perimeter, surface_area
from .core import TAXONOMY_FIXTURES, SurfacePoint, classify, make_ellipsoid, shape_params, volume
from .curvature import (
    axis_endpoint_curvatures,
    fundamental_forms,
    gauss_bonnet_total,
    point_summary,
    principal_curvatures,
    umbilics,
)
from .errors import DomainError, QuadratureError
from .quadrature import (
    QuadratureSpec,
    area_by_eq_s,
    area_by_eq_seta,
    area_by_eq_ss,
    ellipse_ratio_identity,
    mean_inverse_radius_identity,
    r3_over_h_identity,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

THREADS_ENV = "ELLIPSOID_GEOM_THREADS"


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


# -- formatting ---------------------------------------------------------------


def _fmt_number(v, digits):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    if v == 0:
        v = 0.0  # drop the sign of -0.0
    return f"{v:.{digits}g}"


def _human_value(v):
    if v is None:
        return "indet."
    if isinstance(v, (int, float)):
        return _fmt_number(v, 12)
    return str(v)


def _json_value(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_number(v, 17) if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(v)


def _csv_value(v):
    if v is None:
        return "indet."
    if isinstance(v, (int, float)):
        return _fmt_number(v, 17)
    return str(v)


def render(rows, fmt):
    """Render a list of flat dicts.  Keys of the first row fix the column order."""
    if fmt == "json":
        items = [
            "  {" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in row.items()) + "}"
            for row in rows
        ]
        return "[\n" + ",\n".join(items) + "\n]\n" if items else "[]\n"
    if fmt == "csv":
        if not rows:
            return ""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for row in rows:
            writer.writerow([_csv_value(v) for v in row.values()])
        return buf.getvalue()
    if not rows:
        return "(no rows)\n"
    if len(rows) == 1:
        width = max(len(k) for k in rows[0])
        return "".join(f"{k:<{width}}  {_human_value(v)}\n" for k, v in rows[0].items())
    keys = list(rows[0])
    cells = [[_human_value(row[k]) for k in keys] for row in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(cell, widths)) for cell in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- row builders -----------------------------------------------------------------


def _permutation_text(ell):
    return " ".join(str(i) for i in ell.permutation)


def shape_row(ell):
    """Taxonomy, shape parameters and area of one ellipsoid as a flat dict."""
    kind = classify(ell)
    row = {
        "a": ell.a,
        "b": ell.b,
        "c": ell.c,
        "permutation": _permutation_text(ell),
        "shape_class": kind.label,
    }
    if kind.label == "point":
        row.update(e=None, m=None, b_star=None, m_star=None, gamma=None)
    else:
        p = shape_params(ell)
        row.update(e=p.e, m=p.m, b_star=p.b_star, m_star=p.m_star, gamma=p.gamma)
    row["surface_area"] = surface_area(ell)
    return row


def area_report(a, b, c, verify=False, tol=1e-8, quad_tol=1e-10):
    ell = make_ellipsoid(a, b, c)
    row = shape_row(ell)
    S = row["surface_area"]
    vol = volume(ell)
    row["volume"] = vol
    row["s_over_volume"] = S / vol if vol > 0 else None
    ok = True
    if verify:
        try:
            res = area_by_eq_s(ell, QuadratureSpec(rel_tol=quad_tol))
            converged = True
        except QuadratureError as exc:
            res = exc.result
            converged = False
        dev = abs(res.value - S) / S if S > 0 else abs(res.value - S)
        ok = converged and dev <= tol
        row.update(
            oracle_area=res.value,
            oracle_error_estimate=res.error_estimate,
            rel_deviation=dev,
            verified=ok,
        )
    return row, ok


def curvature_report(a, b, c, theta, phi):
    """Curvature report at eccentric anomalies (theta, phi) of the canonical frame."""
    ell = make_ellipsoid(a, b, c)
    if not ell.is_positive:
        raise DomainError(f"curvature needs strictly positive semi-axes, got {(a, b, c)}")
    pt = SurfacePoint(float(theta), float(phi))
    row = {"a": ell.a, "b": ell.b, "c": ell.c, "permutation": _permutation_text(ell)}
    row.update(theta=pt.theta, phi=pt.phi)
    row.update(point_summary(ell, pt.theta, pt.phi))
    ff = fundamental_forms(ell, pt.theta, pt.phi)
    row.update(U=ff.U, V=ff.V, W=ff.W, kappa=ff.kappa, lambda_=ff.lambda_, mu=ff.mu)
    notice = None
    if pt.is_pole:
        sign = 1 if pt.theta == 0.0 else -1
        rep = axis_endpoint_curvatures(ell, axis=0, sign=sign)
        notice = "chart pole: evaluated at the a-axis endpoint from the sum and product formulas"
        row["path"] = "axis-endpoint"
    else:
        rep = principal_curvatures(ell, pt.theta, pt.phi)
        row["path"] = "eigenproblem"
    row.update(chi1=rep.chi1, chi2=rep.chi2, mean=rep.mean, gaussian=rep.gaussian)
    for name, vec in (("dir1", rep.dir1), ("dir2", rep.dir2), ("normal", rep.normal)):
        for axis, comp in zip("xyz", vec):
            row[f"{name}_{axis}"] = float(comp)
    row["umbilic"] = bool(rep.umbilic)
    row["sum_deviation"] = abs(rep.chi1 + rep.chi2 - row["sum_formula"]) / row["sum_formula"]
    row["product_deviation"] = abs(rep.gaussian - row["product_formula"]) / row["product_formula"]
    return row, notice


def umbilic_rows(a, b, c):
    ell = make_ellipsoid(a, b, c)
    u = umbilics(ell)
    return [
        {
            "x": float(p[0]),
            "y": float(p[1]),
            "z": float(p[2]),
            "radius": u.radius,
            "height": u.height,
            "curvature": u.curvature,
            "residual": abs(p[0] ** 2 / ell.a**2 + p[1] ** 2 / ell.b**2 + p[2] ** 2 / ell.c**2 - 1.0),
        }
        for p in u.points
    ]


def parse_batch(text):
    """Parse ``a b c`` triples, one per line; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 3 numbers, got {len(parts)}: {line.strip()!r}")
        try:
            vals = tuple(float(p) for p in parts)
        except ValueError:
            raise InputError(f"line {lineno}: not a number: {line.strip()!r}") from None
        if not all(math.isfinite(v) and v >= 0 for v in vals):
            raise InputError(f"line {lineno}: semi-axes must be finite and non-negative: {line.strip()!r}")
        out.append((lineno, vals))
    return out


def classify_rows(text):
    rows = []
    for lineno, (a, b, c) in parse_batch(text):
        row = {"line": lineno, "input_a": a, "input_b": b, "input_c": c}
        row.update(shape_row(make_ellipsoid(a, b, c)))
        rows.append(row)
    return rows


def table_rows():
    rows = []
    for name, axes, kind, formula in TAXONOMY_FIXTURES:
        row = {"row": name}
        row.update(shape_row(make_ellipsoid(*axes)))
        row["area_formula"] = formula
        row["class_matches"] = row["shape_class"] == kind.label
        rows.append(row)
    return rows


# -- identity suite -----------------------------------------------------------------

IDENTITIES = (
    "eccentric_double_integral",
    "central_double_integral",
    "single_integral",
    "mean_inverse_radius",
    "r3_over_h",
    "ellipse_ratio",
    "gauss_bonnet",
)


def random_axes(rng):
    """Log-uniform axis ratios in [1e-3, 1] and a log-uniform scale in [0.5, 2]."""
    scale = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    r = np.exp(rng.uniform(math.log(1e-3), 0.0, size=2))
    return (scale, scale * float(max(r)), scale * float(min(r)))


def _identity_case(axes, spec):
    """Relative deviation of every identity for one ellipsoid (None when not applicable)."""
    ell = make_ellipsoid(*axes)
    S = surface_area(ell)
    checks = {
        "eccentric_double_integral": (lambda: area_by_eq_s(ell, spec), S),
        "central_double_integral": (lambda: area_by_eq_ss(ell, spec), S),
        "single_integral": (lambda: area_by_eq_seta(ell, spec), S),
        "mean_inverse_radius": (lambda: mean_inverse_radius_identity(ell, spec), S),
        "r3_over_h": (lambda: r3_over_h_identity(ell, spec), S),
        "ellipse_ratio": (lambda: ellipse_ratio_identity(ell.a, ell.b, spec), ellipse_perimeter(ell.a, ell.b)),
        "gauss_bonnet": (lambda: gauss_bonnet_total(ell, spec), 4.0 * math.pi),
    }
    out = {}
    for name in IDENTITIES:
        if name == "single_integral" and not (ell.a > ell.b > ell.c > 0):
            out[name] = None
            continue
        fn, expected = checks[name]
        try:
            value = fn().value
        except QuadratureError as exc:
            out[name] = (math.inf, exc.result.value if exc.result else math.nan)
            continue
        out[name] = (abs(value - expected) / expected, value)
    return out


def _worker_count():
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 0:
        raise InputError(f"{THREADS_ENV} must be >= 0, got {n}")
    return n or (os.cpu_count() or 1)


def run_identity_suite(cases=50, seed=0, tol=1e-8, quad_tol=1e-10, workers=1):
    """Run every identity on ``cases`` random ellipsoids.

    Returns (rows, failures) where rows holds one summary per identity and
    failures lists ``(identity, axes, deviation)`` in case order.
    """
    rng = np.random.default_rng(seed)
    all_axes = [random_axes(rng) for _ in range(cases)]
    spec = QuadratureSpec(rel_tol=quad_tol)
    if workers > 1 and cases > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda ax: _identity_case(ax, spec), all_axes))
    else:
        results = [_identity_case(ax, spec) for ax in all_axes]
    rows, failures = [], []
    for name in IDENTITIES:
        worst, worst_axes, n = 0.0, None, 0
        for axes, res in zip(all_axes, results):
            if res[name] is None:
                continue
            n += 1
            dev = res[name][0]
            if dev > tol:
                failures.append((name, axes, dev))
            if worst_axes is None or dev > worst:
                worst, worst_axes = dev, axes
        rows.append(
            {
                "identity": name,
                "cases": n,
                "max_rel_deviation": worst if n else 0.0,
                "worst_a": worst_axes[0] if worst_axes else None,
                "worst_b": worst_axes[1] if worst_axes else None,
                "worst_c": worst_axes[2] if worst_axes else None,
                "passed": all(f[0] != name for f in failures),
            }
        )
    return rows, failures


# -- argument parsing -----------------------------------------------------------------


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"must be finite and non-negative: {text!r}")
    return v


def _pos_float(text):
    v = _nonneg_float(text)
    if v == 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ellipsoid-geom",
        description="Surface area and curvature of the triaxial ellipsoid.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("human", "json", "csv"), default="human")
    axes = argparse.ArgumentParser(add_help=False)
    for name in ("a", "b", "c"):
        axes.add_argument(name, type=_nonneg_float, help=f"semi-axis (any order)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("area", parents=[axes, fmt], help="surface area, volume and shape parameters")
    p.add_argument("--verify", action="store_true", help="cross-check against the double-integral oracle")
    p.add_argument("--tol", type=_pos_float, default=1e-8, help="max relative deviation for --verify")
    p.add_argument("--quad-tol", type=_pos_float, default=1e-10, help="oracle relative tolerance")

    p = sub.add_parser("curvature", parents=[axes, fmt], help="curvature at a surface point")
    p.add_argument("theta", type=_finite_float, help="eccentric anomaly from the a-axis, [0, pi]")
    p.add_argument("phi", type=_finite_float, help="eccentric anomaly from the b-axis, [0, 2 pi)")

    sub.add_parser("umbilics", parents=[axes, fmt], help="the four umbilic points")

    p = sub.add_parser("classify", parents=[fmt], help="classify a batch file of 'a b c' lines")
    p.add_argument("file", help="batch file, or '-' for stdin")

    p = sub.add_parser("verify", parents=[fmt], help="run the identity suite on random ellipsoids")
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--cases", type=_count, default=50)
    p.add_argument("--tol", type=_pos_float, default=1e-8)
    p.add_argument("--quad-tol", type=_pos_float, default=1e-10)

    sub.add_parser("table", parents=[fmt], help="print the built-in shape taxonomy fixtures")
    return parser


def _cmd_area(args, out, err):
    row, ok = area_report(args.a, args.b, args.c, args.verify, args.tol, args.quad_tol)
    out.write(render([row], args.format))
    if not ok:
        err.write(f"verification failed: relative deviation {row['rel_deviation']:.3e} > tol {args.tol:.3e}\n")
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_curvature(args, out, err):
    row, notice = curvature_report(args.a, args.b, args.c, args.theta, args.phi)
    if notice:
        err.write(f"note: {notice}\n")
    out.write(render([row], args.format))
    return EXIT_OK


def _cmd_umbilics(args, out, err):
    out.write(render(umbilic_rows(args.a, args.b, args.c), args.format))
    return EXIT_OK


def _cmd_classify(args, out, err):
    if args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    out.write(render(classify_rows(text), args.format))
    return EXIT_OK


def _cmd_verify(args, out, err):
    rows, failures = run_identity_suite(
        args.cases, args.seed, args.tol, args.quad_tol, workers=_worker_count()
    )
    out.write(render(rows, args.format))
    if failures:
        for name, axes, dev in failures:
            err.write(f"FAIL {name}: axes=({axes[0]:.17g}, {axes[1]:.17g}, {axes[2]:.17g}) deviation={dev:.3e}\n")
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_table(args, out, err):
    out.write(render(table_rows(), args.format))
    return EXIT_OK


COMMANDS = {
    "area": _cmd_area,
    "curvature": _cmd_curvature,
    "umbilics": _cmd_umbilics,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "table": _cmd_table,
}


def main(argv=None, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out, err)
    except (InputError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
