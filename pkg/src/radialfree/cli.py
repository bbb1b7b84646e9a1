"""
Command-line front end.

Every subcommand writes data to standard output as CSV (default) or JSON
and diagnostics to standard error. Exit codes: 0 success, 1 a failed
selftest criterion, 2 domain error, 3 numeric error, 4 resource cap,
64 usage error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import acceptance
from . import group_algebra as ga
from . import primtop as pt
from .errors import DomainError, NumericError, ResourceError
from .radial import (
    RadialElement,
    classify_parameter,
    haagerup_function,
    is_positive_definite_on_ball,
    l1_growth_verdict,
    pn_table,
    radial_from_json,
    radial_to_json,
    spherical_function,
)
from .spectra import (
    cyclic_weights,
    haagerup_measure,
    kesten_measure,
    measure_table,
    moments_table,
    radial_jacobi_matrix,
    spectral_histogram_distance,
    tridiag_eigenvalues,
)
from .words import DEFAULT_CAP, Rank, format_word, parse_word, sphere

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_RESOURCE = 4
EXIT_USAGE = 64

DEFAULT_L = 2


@dataclass(frozen=True)
class RunConfig:
    l: int = DEFAULT_L
    nodes: int = 512
    cap: int = DEFAULT_CAP
    tol: float = 1e-8
    seed: int = 0
    output: str = "csv"

    def __post_init__(self):
        if self.l < 1:
            raise DomainError(f"--l must be at least 1, got {self.l}")
        if self.nodes < 64:
            raise DomainError(f"--nodes must be at least 64, got {self.nodes}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise DomainError(f"--tol must be positive, got {self.tol}")
        if self.cap < 1:
            raise DomainError(f"--cap must be positive, got {self.cap}")
        if self.output not in ("csv", "json"):
            raise DomainError(f"unknown output format {self.output!r}")

    @property
    def rank(self) -> Rank:
        return Rank(self.l)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot read {text!r} as a rational number") from exc


def resolve_l(l: Optional[int], r: Optional[str]) -> int:
    """Combine ``--l`` and ``--r``; ``r`` must equal ``1/(2l)``."""
    if r is None:
        return DEFAULT_L if l is None else l
    rv = _fraction(r)
    if rv <= 0:
        raise DomainError(f"--r must be positive, got {r}")
    implied = 1 / (2 * rv)
    if implied.denominator != 1:
        raise DomainError(f"--r {r} is not 1/(2l) for an integer l")
    if l is not None and l != implied:
        raise DomainError(f"--r {r} is inconsistent with --l {l} (expected r = 1/{2 * l})")
    return int(implied)


def config_from_args(args) -> RunConfig:
    return RunConfig(
        l=resolve_l(args.l, args.r),
        nodes=args.nodes,
        cap=args.cap,
        tol=args.tol,
        seed=args.seed,
        output=args.output,
    )


# -- output --------------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, complex):
        return repr(x)
    return str(x)


def _json_value(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def write_table(out, cfg: RunConfig, header: Sequence[str], rows) -> None:
    if cfg.output == "json":
        records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
        out.write(json.dumps(records) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(x) for x in row])


def read_table(text: str) -> List[dict]:
    """Read a CSV table written by :func:`write_table`, values left as text."""
    return list(csv.DictReader(io.StringIO(text)))


def element_from_text(text: str, rank: Optional[Rank] = None) -> ga.AlgebraElement:
    """Read an element in JSON or in the ``word,num,den`` CSV form."""
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            f = ga.from_json(text)
        else:
            if rank is None:
                raise DomainError("CSV elements need --l for the rank")
            rows = read_table(text)
            f = ga.AlgebraElement(
                rank, [(parse_word(row["word"], rank), Fraction(int(row["num"]), int(row["den"]))) for row in rows]
            )
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed element: {exc}") from exc
    if rank is not None and f.rank != rank:
        raise DomainError(f"element has l={f.rank.l}, expected l={rank.l}")
    return f


def radial_from_text(text: str, rank: Rank) -> RadialElement:
    if text.lstrip().startswith("{"):
        return radial_from_json(text)
    try:
        rows = read_table(text)
        return RadialElement(rank, [Fraction(int(row["num"]), int(row["den"])) for row in rows])
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed radial element: {exc}") from exc


def _write_element(out, cfg: RunConfig, f: ga.AlgebraElement) -> None:
    if cfg.output == "json":
        out.write(ga.to_json(f) + "\n")
        return
    rows = [(row["word"], row["num"], row["den"]) for row in ga.to_json_dict(f)["terms"]]
    write_table(out, cfg, ("word", "num", "den"), rows)


def _write_radial(out, cfg: RunConfig, a: RadialElement) -> None:
    if cfg.output == "json":
        out.write(radial_to_json(a) + "\n")
        return
    rows = [(n, c.numerator, c.denominator) for n, c in enumerate(a.coeffs)]
    write_table(out, cfg, ("n", "num", "den"), rows)


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from exc


# -- subcommands ---------------------------------------------------------------


def cmd_sphere(args, cfg, out):
    words = sphere(cfg.rank, args.n, cap=cfg.cap)
    write_table(out, cfg, ("word",), [(format_word(w),) for w in words])


def cmd_convolve(args, cfg, out):
    rank = cfg.rank if args.l is not None or args.r is not None else None
    f = element_from_text(_read_file(args.left), rank)
    g = element_from_text(_read_file(args.right), rank or f.rank)
    _write_element(out, cfg, ga.convolve(f, g))


def cmd_radialize(args, cfg, out):
    rank = cfg.rank if args.l is not None or args.r is not None else None
    f = element_from_text(_read_file(args.element), rank)
    _write_radial(out, cfg, ga.radialize(f))


def cmd_pn(args, cfg, out):
    if args.n < 0:
        raise DomainError(f"--n must be nonnegative, got {args.n}")
    rows = pn_table(cfg.rank, args.c, args.n)
    write_table(out, cfg, ("n", "c", "p_n(c)"), rows)


def cmd_classify(args, cfg, out):
    try:
        c = complex(args.c.replace(" ", ""))
    except ValueError as exc:
        raise DomainError(f"cannot read {args.c!r} as a complex number") from exc
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise DomainError(f"spectral parameter must be finite, got {args.c}")
    pc = classify_parameter(cfg.rank, c)
    verdict = l1_growth_verdict(cfg.rank, c)
    header = ("c_re", "c_im", "series", "l1_bounded", "cstar_bounded", "positive_definite", "growth")
    row = (c.real, c.imag, pc.series.value, pc.l1_bounded, pc.cstar_bounded, pc.positive_definite, verdict)
    write_table(out, cfg, header, [row])


def cmd_pdcheck(args, cfg, out):
    if (args.c is None) == (args.u is None):
        raise DomainError("pdcheck needs exactly one of --c (spherical) or --u (Haagerup)")
    if args.c is not None:
        kind, value, phi = "spherical", args.c, spherical_function(cfg.rank, args.c)
    else:
        kind, value, phi = "haagerup", args.u, haagerup_function(args.u)
    ok, lam_min = is_positive_definite_on_ball(cfg.rank, phi, args.R, tol=cfg.tol, cap=cfg.cap)
    write_table(out, cfg, ("function", "parameter", "R", "min_eigenvalue", "positive_definite"),
                [(kind, value, args.R, lam_min, ok)])


def cmd_measure(args, cfg, out):
    measure = kesten_measure(cfg.rank) if args.u is None else haagerup_measure(cfg.rank, args.u)
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    write_table(out, cfg, ("t", "density", "atom", "mass"), measure_table(measure, args.points))


def cmd_moments(args, cfg, out):
    if args.n < 0:
        raise DomainError(f"--n must be nonnegative, got {args.n}")
    rows = moments_table(cfg.rank, args.u, [args.n], nodes=cfg.nodes)
    write_table(out, cfg, ("u", "n", "moment", "expected", "abs_error"), rows)


def cmd_jacobi(args, cfg, out):
    if args.N < 1:
        raise DomainError(f"--N must be positive, got {args.N}")
    J = radial_jacobi_matrix(cfg.rank, args.N)
    ev = tridiag_eigenvalues(J)
    w = cyclic_weights(J, ev)
    write_table(out, cfg, ("k", "eigenvalue", "weight"), [(k, x, y) for k, (x, y) in enumerate(zip(ev, w))])


def cmd_histdist(args, cfg, out):
    J = radial_jacobi_matrix(cfg.rank, args.N)
    ev = tridiag_eigenvalues(J)
    rows = []
    for weighting in ("uniform", "cyclic"):
        d = spectral_histogram_distance(cfg.rank, args.N, bins=args.bins, weighting=weighting, eigenvalues=ev)
        rows.append((args.N, args.bins, weighting, d))
    write_table(out, cfg, ("N", "bins", "weighting", "sup_distance"), rows)


def _descriptor_from_json(rank: Rank, data) -> pt.FunctionDescriptor:
    """``{"bot", "char+", "char-", "pieces": [{"interval", "value" | "samples"}]}``."""
    try:
        pieces = []
        for item in data["pieces"]:
            S = pt.parse_prim_set(rank, item["interval"])
            if len(S.params) != 1 or S.has_bot or S.has_char_plus or S.has_char_minus:
                raise DomainError(f"piece interval {item['interval']!r} is not a single interval")
            if "samples" in item:
                ts = [float(t) for t, _ in item["samples"]]
                vs = [float(v) for _, v in item["samples"]]
                values = (ts, vs)
            else:
                values = float(item["value"])
            pieces.append(pt.Piece(S.params[0], values))
        return pt.FunctionDescriptor(
            float(data["bot"]), float(data["char+"]), float(data["char-"]), tuple(pieces)
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed descriptor: {exc!r}") from exc


def cmd_topology(args, cfg, out):
    rank = cfg.rank
    if args.topology_command == "closure":
        S = pt.closure(rank, pt.parse_prim_set(rank, args.set))
        text = pt.format_prim_set(S)
        if cfg.output == "json":
            out.write(json.dumps({"closure": text}) + "\n")
        else:
            out.write(text + "\n")
    elif args.topology_command == "specializes":
        p, q = pt.parse_point(rank, args.p), pt.parse_point(rank, args.q)
        write_table(out, cfg, ("p", "q", "q_in_closure_of_p"), [(str(p), str(q), pt.specializes(rank, p, q))])
    else:
        try:
            data = json.loads(_read_file(args.descriptor))
        except json.JSONDecodeError as exc:
            raise DomainError(f"descriptor is not JSON: {exc}") from exc
        f = _descriptor_from_json(rank, data)
        ok, cert = pt.is_continuous_function(rank, f, tol=cfg.tol)
        write_table(out, cfg, ("continuous", "certificate"), [(ok, "" if cert is None else str(cert))])


def cmd_selftest(args, cfg, out):
    only = None if args.only is None else [int(x) for x in args.only.split(",") if x.strip()]
    if only is not None and not set(only) <= set(range(1, 10)):
        raise DomainError("--only takes criterion numbers between 1 and 9")
    results = acceptance.run_all(seed=cfg.seed, only=only)
    out.write(acceptance.report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


# -- parser --------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--l", type=int, default=None, help=f"number of generators (default {DEFAULT_L})")
    g.add_argument("--r", default=None, help="the constant 1/(2l), as a fraction or decimal")
    g.add_argument("--nodes", type=int, default=512, help="quadrature nodes per panel (>= 64)")
    g.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest word set to enumerate")
    g.add_argument("--tol", type=float, default=1e-8, help="tolerance for pass/fail verdicts")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    g.add_argument("--output", choices=("csv", "json"), default="csv")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="radialfree", description="Radial harmonic analysis on free groups.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text, flags=True):
        p = sub.add_parser(name, parents=[common] if flags else [], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("sphere", cmd_sphere, "list the reduced words of length n")
    p.add_argument("--n", type=int, required=True)

    p = add("convolve", cmd_convolve, "convolve two group algebra elements read from files")
    p.add_argument("left")
    p.add_argument("right")

    p = add("radialize", cmd_radialize, "average an element over spheres")
    p.add_argument("element")

    p = add("pn", cmd_pn, "table of p_k(c) for k = 0..n")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("classify", cmd_classify, "classify a spectral parameter (complex allowed, e.g. 0.5+0.1j)")
    p.add_argument("--c", required=True)

    p = add("pdcheck", cmd_pdcheck, "Gram test of positive definiteness on a ball")
    p.add_argument("--c", type=float, help="spherical function parameter")
    p.add_argument("--u", type=float, help="Haagerup function parameter")
    p.add_argument("--R", type=int, default=3, help="ball radius")

    p = add("measure", cmd_measure, "density grid and atoms of a spectral measure")
    p.add_argument("--u", type=float, help="Haagerup parameter (omit for the Kesten measure)")
    p.add_argument("--points", type=int, default=201)

    p = add("moments", cmd_moments, "integral of p_n against the Haagerup measure, against u^n")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("jacobi", cmd_jacobi, "eigenvalues and weights of the radial truncation of size N")
    p.add_argument("--N", type=int, required=True)

    p = add("histdist", cmd_histdist, "CDF distance between truncation eigenvalues and the Kesten law")
    p.add_argument("--N", type=int, default=2000)
    p.add_argument("--bins", type=int, default=40)

    p = add("topology", cmd_topology, "closure, specialization and continuity in the primitive ideal space", flags=False)
    tsub = p.add_subparsers(dest="topology_command", required=True, metavar="query")
    q = tsub.add_parser("closure", parents=[common], help="closure of a set")
    q.add_argument("--set", required=True, help="e.g. point:0.9,interval:(0.87,0.95],bot")
    q = tsub.add_parser("specializes", parents=[common], help="is q in the closure of p")
    q.add_argument("--p", required=True)
    q.add_argument("--q", required=True)
    q = tsub.add_parser("continuity", parents=[common], help="decide continuity of a function descriptor")
    q.add_argument("descriptor", help="JSON file")

    p = add("selftest", cmd_selftest, "run the acceptance criteria and print the report")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers 1-9")
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = config_from_args(args)
        code = args.func(args, cfg, stdout)
        return EXIT_OK if code is None else code
    except DomainError as exc:
        print(f"radialfree: domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"radialfree: numeric error: {exc}", file=stderr)
        return EXIT_NUMERIC
    except ResourceError as exc:
        print(f"radialfree: resource cap: {exc}", file=stderr)
        return EXIT_RESOURCE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
