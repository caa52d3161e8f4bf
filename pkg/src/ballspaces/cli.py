"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 parse errors
(arguments, series or measure files), 3 parameter validation, 4 unknown
suite.  Reports go to stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .carleson import (DiscreteMeasure, ProbeGrid, berezin_sup, carleson_constant, forelli_rudin,
                       forelli_rudin_mc, random_measure)
from .gamma import GammaPoleError, InvalidParameters
from .kernels import KernelSpec, TailBoundError, kernel_eval, kernel_series, natural_kernel_eval
from .lacunary import (BlockGrowth, GeometricGaps, MonomialBlocks, NonLacunaryError, lacunary_bergman_test,
                       lacunary_lipschitz_test, lacunary_monomial_test)
from .norms import SpaceParams, bergman_norm, bergman_norm_p2
from .quadrature import DEFAULT_SEED, QuadratureSpec
from .series import SeriesFormatError, evaluate, series_from_json
from .structure import (InadmissibleExponent, atomic_synthesize, classify_pairs, eq12_bound,
                        lattice_generate)
from .verify import SUITES, UnknownSuite, VerifyConfig, render, run_suite

EXIT_FAIL, EXIT_PARSE, EXIT_VALIDATION, EXIT_SUITE = 1, 2, 3, 4


class ValidationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return "" if x is None else str(x)


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.generic):
        return x.item()
    return x


def emit(command: str, rows: list[dict], args) -> str:
    """Render rows as CSV (17 significant digits, seed column) or JSON."""
    if args.format == "json":
        doc = {"command": command, "seed": args.seed,
               "rows": [{k: _jsonable(v) for k, v in r.items()} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = list(rows[0]) if rows else []
    w.writerow(cols + ["seed"])
    for r in rows:
        w.writerow([_cell(r[c]) for c in cols] + [args.seed])
    return buf.getvalue()


def _write(text: str, args):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _point(text: str, n: int | None = None) -> tuple[complex, ...]:
    """``"0.3,0.1+0.2j"`` -> coordinates."""
    try:
        z = tuple(complex(s.strip().replace(" ", "")) for s in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse point {text!r}") from None
    if n is not None and len(z) != n:
        raise ValidationError(f"point {text!r} has {len(z)} coordinates, expected {n}")
    if sum(abs(c) ** 2 for c in z) >= 1:
        raise ValidationError(f"point {text!r} is not inside the unit ball")
    return z


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(samples=args.samples, seed=args.seed)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_norm(args) -> int:
    f = series_from_json(_read(args.input))
    if args.n is not None and args.n != f.n:
        raise ValidationError(f"--n {args.n} does not match the series dimension {f.n}")
    sp = SpaceParams(f.n, args.p, args.alpha)
    if args.normalized and args.alpha <= -1:
        raise ValidationError("--normalized requires alpha > -1")
    methods = {"exact": ["exact"], "quad": ["quad"], "mc": ["mc"],
               "both": ["exact", "mc"] if args.p == 2 else ["quad", "mc"]}[args.method]
    rows = []
    for m in methods:
        if m == "exact":
            if args.p != 2:
                raise ValidationError("the exact method needs p = 2")
            rows.append({"method": "exact", "backend": "exact", "value": bergman_norm_p2(f, sp, args.normalized),
                         "stderr": 0.0})
            continue
        q = _quad(args)
        if m == "mc":
            q = QuadratureSpec(samples=args.samples, seed=args.seed, rule="qmc")
        est = bergman_norm(f, sp, q, normalized=args.normalized)
        rows.append({"method": m, "backend": est.method, "value": est.value, "stderr": est.stderr})
    for r in rows:
        r.update(n=sp.n, p=sp.p, alpha=sp.alpha, N=sp.N)
    _write(emit("norm", rows, args), args)
    return 0


def cmd_member(args) -> int:
    sp = SpaceParams(args.n, args.p, args.alpha)
    gaps = GeometricGaps(args.m0, args.gap_ratio)
    growth = BlockGrowth(0.0, -args.log_power, args.exponent)
    rows = []
    if args.direction:
        direction = tuple(float(x) for x in args.direction.split(","))
        blocks = MonomialBlocks(gaps, direction, growth)
        rows.append({"space": f"A^{sp.p:g}_{sp.alpha:g}", "verdict": lacunary_monomial_test(blocks, sp).value})
        lip = blocks
    else:
        rows.append({"space": f"A^{sp.p:g}_{sp.alpha:g}",
                     "verdict": lacunary_bergman_test(gaps, growth, sp).value})
        lip = gaps
    if args.beta is not None:
        rows.append({"space": f"Lambda_{args.beta:g}",
                     "verdict": lacunary_lipschitz_test(lip, growth, args.beta).value})
    _write(emit("member", rows, args), args)
    return 0


def cmd_kernel(args) -> int:
    z, w = _point(args.z, args.n), _point(args.w, args.n)
    spec = KernelSpec.make(args.n, args.alpha)
    closed = kernel_eval(spec, z, w)
    series = evaluate(kernel_series(spec, w, args.degree), z)
    rows = [{"regime": str(spec.regime), "closed_form": closed, "series": series,
             "degree": args.degree, "abs_diff": abs(closed - series)}]
    _write(emit("kernel", rows, args), args)
    return 0


def cmd_natural_kernel(args) -> int:
    z, w = _point(args.z, args.n), _point(args.w, args.n)
    v = natural_kernel_eval(args.n, args.alpha, args.k, z, w)
    rows = [{"value": v.value, "tail_bound": v.tail_bound, "terms": v.terms, "k": args.k}]
    _write(emit("natural-kernel", rows, args), args)
    return 0


def _measure(args) -> DiscreteMeasure:
    if args.input:
        return DiscreteMeasure.from_json(_read(args.input))
    return random_measure(args.n, args.atoms, np.random.default_rng(args.seed))


def cmd_carleson(args) -> int:
    mu = _measure(args)
    grid = ProbeGrid.default(mu.n, seed=args.seed).with_atoms(mu)
    rows = [{"statistic": "carleson_constant", "grid-id": grid.grid_id,
             "value": carleson_constant(mu, args.alpha, grid)}]
    _write(emit("carleson", rows, args), args)
    return 0


def cmd_berezin(args) -> int:
    mu = _measure(args)
    grid = ProbeGrid.default(mu.n, seed=args.seed).with_atoms(mu)
    rows = [{"statistic": f"berezin_sup(s={args.s:g})", "grid-id": grid.grid_id,
             "value": berezin_sup(mu, args.s, args.alpha, grid)}]
    _write(emit("berezin", rows, args), args)
    return 0


def cmd_forelli_rudin(args) -> int:
    rows = []
    for rho in args.rho:
        if args.method in ("exact", "both"):
            v = forelli_rudin(rho, args.s, args.t, args.n)
            rows.append({"rho": rho, "method": "series", "value": v.value, "error": v.tail_bound, "terms": v.terms})
        if args.method in ("quad", "mc", "both"):
            q = QuadratureSpec(samples=args.samples, seed=args.seed, rule="qmc" if args.method == "mc" else "auto")
            e = forelli_rudin_mc(rho, args.s, args.t, args.n, q)
            rows.append({"rho": rho, "method": e.method, "value": e.value, "error": e.stderr, "terms": ""})
    _write(emit("forelli-rudin", rows, args), args)
    return 0


def _space(text: str) -> tuple[float, float]:
    try:
        p, a = (float(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"space must be 'p,alpha', got {text!r}") from None
    if not p > 0:
        raise ValidationError(f"p must be positive in {text!r}")
    return p, a


def cmd_classify(args) -> int:
    if args.space:
        spaces = [_space(s) for s in args.space]
        pairs = [(a, b) for a in spaces for b in spaces]
    else:
        if args.q is None or args.beta is None:
            raise ValidationError("give --space P,ALPHA (repeatable) or --p/--alpha/--q/--beta")
        _space(f"{args.q},{args.beta}")
        _space(f"{args.p},{args.alpha}")
        pairs = [((args.p, args.alpha), (args.q, args.beta))]
    rows = [{"p1": r.p1, "alpha1": r.alpha1, "p2": r.p2, "alpha2": r.alpha2, "relation": r.relation.value,
             "witness-id": r.witness, "stretch1": r.stretch1, "stretch2": r.stretch2}
            for r in classify_pairs(pairs, args.n)]
    _write(emit("classify", rows, args), args)
    return 0


def cmd_synthesize(args) -> int:
    sp = SpaceParams(args.n, args.p, args.alpha)
    b = args.b if args.b is not None else math.floor(eq12_bound(sp)) + 1.0
    lat = lattice_generate(args.n, args.delta, args.shells, seed=args.seed)
    if args.atoms > len(lat):
        raise ValidationError(f"lattice has only {len(lat)} points; raise --shells or lower --atoms")
    rng = np.random.default_rng(args.seed)
    c = rng.standard_normal(args.atoms) + 1j * rng.standard_normal(args.atoms)
    syn = atomic_synthesize(c, lat, b, sp, _quad(args))
    rows = [{"n": sp.n, "p": sp.p, "alpha": sp.alpha, "b": b, "atoms": args.atoms, "lattice_points": len(lat),
             "lp_sum": syn.lp_sum, "norm": syn.norm.value, "norm_stderr": syn.norm.stderr,
             "method": syn.norm.method, "ratio": syn.ratio}]
    _write(emit("synthesize", rows, args), args)
    return 0


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UnknownSuite(name)
    cfg = VerifyConfig(seed=args.seed)
    out, ok = [], True
    for name in names:
        rows = run_suite(name, cfg)
        ok &= all(r.passed for r in rows)
        out.append(render(name, rows, cfg, args.format))
    if args.format == "csv" and len(out) > 1:
        # one header for the whole table
        text = out[0] + "".join(o.split("\n", 1)[1] for o in out[1:])
    else:
        text = "".join(out)
    _write(text, args)
    return 0 if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=1, help="complex dimension")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--degree", type=int, default=60)
    p.add_argument("--method", choices=["exact", "quad", "mc", "both"], default="exact")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ballspaces", description="Function spaces on the unit ball of C^n.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="A^p_alpha norm of a series file")
    _common(p)
    p.set_defaults(n=None)
    p.add_argument("input", help="series JSON path or '-'")
    p.add_argument("--normalized", action="store_true", help="use the probability measure c_alpha dv_alpha")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("member", help="lacunary series membership (symbolic growth data)")
    _common(p)
    p.add_argument("--m0", type=float, default=1.0)
    p.add_argument("--gap-ratio", type=float, default=2.0)
    p.add_argument("--exponent", type=float, default=0.0, help="block size ~ m_k^exponent")
    p.add_argument("--log-power", type=float, default=0.0, help="extra factor k^-log_power")
    p.add_argument("--direction", default=None, help="monomial blocks z^{m_k} with this proportion vector")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("kernel", help="reproducing kernel of A^2_alpha")
    _common(p)
    p.add_argument("--z", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("natural-kernel", help="kernel for the natural A^2_alpha inner product")
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_natural_kernel)

    for name, func in (("carleson", cmd_carleson), ("berezin", cmd_berezin)):
        p = sub.add_parser(name, help=f"{name} statistic of a discrete measure")
        _common(p)
        p.add_argument("--input", default=None, help="measure JSON (default: seeded random measure)")
        p.add_argument("--atoms", type=int, default=40)
        if name == "berezin":
            p.add_argument("--s", type=float, default=1.0)
        p.set_defaults(func=func)

    p = sub.add_parser("forelli-rudin", help="the integral of (1-|w|^2)^s / |1-<z,w>|^(n+1+s+t)")
    _common(p)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--rho", type=float, nargs="+", default=[0.9, 0.95, 0.99, 0.995, 0.999])
    p.set_defaults(func=cmd_forelli_rudin)

    p = sub.add_parser("classify", help="inclusion relations between Bergman spaces")
    _common(p)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--space", action="append", default=None, metavar="P,ALPHA",
                   help="repeatable; all ordered pairs are tabulated")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synthesize", help="atomic synthesis over a seeded lattice")
    _common(p)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--atoms", type=int, default=100)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--shells", type=int, default=5)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("suite", help="suite name or 'all': " + ", ".join(SUITES))
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)   # exits with 2 on bad arguments
    try:
        return args.func(args)
    except (SeriesFormatError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownSuite as exc:
        print(f"unknown suite {exc.args[0]!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_SUITE
    except (ValidationError, InvalidParameters, InadmissibleExponent, GammaPoleError, NonLacunaryError,
            TailBoundError, ValueError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
