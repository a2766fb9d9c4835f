"""Command-line front end.

Subcommands::

    threepoint gf NAME ...          series coefficients as exact "p/q" strings
    threepoint verify SUITE ...     exact identity suites, oracle, bijection fuzz
    threepoint continuum KIND ...   scaling densities on grids
    threepoint sample KIND ...      Monte Carlo on uniform random quadrangulations
    threepoint geodesic KIND ...    geodesic-point profiles and laws

Tables go to stdout or, with ``--out``, to a file written atomically.  Floats
are printed with 12 significant digits.  Bad flags exit with status 2; a
failed verification exits with status 1 after printing its first
counterexample.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
import time
from contextlib import contextmanager
from fractions import Fraction

__all__ = ["main", "build_parser"]


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, complex):
        x = x.real
    return format(float(x), ".12g")


def write_table(path: str | None, header: list[str], rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    text = buf.getvalue()
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    @contextmanager
    def __call__(self, name: str):
        t0 = time.perf_counter()
        yield
        if self.enabled:
            print(f"[profile] {name}: {time.perf_counter() - t0:.3f} s", file=sys.stderr)


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0 or stop < start:
        raise ValueError("grid needs step > 0 and stop >= start")
    k = int(round((stop - start) / step))
    return [start + i * step for i in range(k + 1)]


# -- gf --------------------------------------------------------------------


GF_ARGS = {
    "r": ("i",),
    "two": ("i",),
    "x": ("s", "t"),
    "y": ("s", "t", "u"),
    "f3": ("s", "t", "u"),
    "g3": ("d",),
    "xc": ("s", "t", "c"),
    "ddx": ("s", "t"),
}


def cmd_gf(args, parser) -> int:
    from . import gf

    N = args.order
    need = GF_ARGS[args.name]
    for name in need:
        if getattr(args, name) is None:
            parser.error(f"gf {args.name} needs --{name}")
    try:
        if args.name == "r":
            ser = gf.r_series(args.i, N, args.method or "closed")
        elif args.name == "two":
            ser = gf.two_point(args.i, N)
        elif args.name == "x":
            ser = gf.x_series(args.s, args.t, N, args.method or "closed")
        elif args.name == "y":
            ser = gf.y_series(args.s, args.t, args.u, N, args.method or "closed")
        elif args.name == "f3":
            ser = gf.f_three(args.s, args.t, args.u, N)
        elif args.name == "g3":
            if len(args.d) != 3:
                parser.error("--d needs three distances d12,d23,d31")
            ser = gf.g_three(tuple(args.d), N)
        elif args.name == "xc":
            ser = gf.x_c(args.s, args.t, args.c, N)
        else:
            ser = gf.delta_st_x(args.s, args.t, N)
    except ValueError as exc:
        parser.error(str(exc))
    write_table(args.out, ["k", "coefficient"], enumerate(ser.coeffs))
    return 0


# -- verify ------------------------------------------------------------------


def cmd_verify(args, parser) -> int:
    from .verify import bijection_suite, oracle_suite, series_suite

    timer = Timer(args.profile)
    wanted = ("series", "oracle", "bijection") if args.suite == "all" else (args.suite,)
    for name in wanted:
        with timer(name):
            if name == "series":
                res = series_suite(args.order, args.max_stu, args.max_i)
            elif name == "oracle":
                res = oracle_suite(args.oracle_n, args.total_n)
            else:
                res = bijection_suite(args.fuzz, args.max_n, args.seed)
        print(res.line())
        if not res.passed:
            print(f"counterexample: {res.counterexample}", file=sys.stderr)
            return 1
    return 0


# -- continuum -----------------------------------------------------------------


def cmd_continuum(args, parser) -> int:
    from . import continuum as c

    timer = Timer(args.profile)
    try:
        with timer(f"continuum {args.kind}"):
            if args.kind == "rho2":
                xs = grid(args.step, args.dmax, args.step)
                rows = [(D, c.rho2(D), c.phi2(D)) for D in xs]
                header = ["D", "rho2", "Phi2"]
            elif args.kind in ("rho3", "rho_cond"):
                D12 = args.d12
                xs = grid(args.step, args.dmax, args.step)
                rows = []
                for D23 in xs:
                    for D31 in xs:
                        if D23 + D31 < D12 or abs(D23 - D31) > D12:
                            continue
                        fn = c.rho3(D12, D23, D31) if args.kind == "rho3" else c.rho_cond(D23, D31, D12)
                        rows.append((D12, D23, D31, fn))
                header = ["D12", "D23", "D31", args.kind]
            elif args.kind == "psi":
                rows = [(w, c.psi(w)) for w in grid(-args.dmax, args.dmax, args.step)]
                header = ["omega", "psi"]
            else:
                rows = [(v, c.phi_nu(v)) for v in grid(args.step, args.dmax, args.step)]
                header = ["nu", "phi"]
    except (ValueError, c.ContinuumError) as exc:
        parser.error(str(exc))
    write_table(args.out, header, rows)
    return 0


# -- sample ----------------------------------------------------------------------


def cmd_sample(args, parser) -> int:
    import numpy as np

    from . import sampler as sm

    timer = Timer(args.profile)
    try:
        with timer(f"sample {args.kind}"):
            if args.kind == "two":
                from .continuum import phi2

                d = sm.empirical_two_point(args.n, args.samples, args.seed, args.threads)
                counts = np.bincount(d)
                rows = [(i, int(k), (i + 1.5) / args.n**0.25) for i, k in enumerate(counts)]
                header = ["distance", "count", "D_centered"]
                cdf = lambda g: np.array([phi2(x) for x in g])  # noqa: E731
                print(f"KS distance to Phi2 (centered): {fmt(sm.ks_two_point(d, args.n, cdf))}", file=sys.stderr)
            elif args.kind == "three":
                tri = sm.empirical_three_point(args.n, args.samples, args.seed, args.threads)
                keys, counts = np.unique(tri, axis=0, return_counts=True)
                rows = [(int(a), int(b), int(e), int(k)) for (a, b, e), k in zip(keys, counts)]
                header = ["d12", "d23", "d31", "count"]
            elif args.kind == "geodesic":
                from .geodesic import p_inf

                g = sm.empirical_geodesic_counts(
                    args.s, args.d_min, args.n, args.samples, args.seed,
                    pairs_per_map=args.pairs_per_map, threads=args.threads,
                )
                rows = []
                for s in g.s_values:
                    pm = g.pmf(s)
                    for cc in range(1, len(pm) - 1):
                        rows.append((s, cc, int(g.counts[s][cc]), pm[cc], p_inf(cc, s)))
                    exact = np.array([0.0] + [float(p_inf(cc, s)) for cc in range(1, len(pm) - 1)])
                    tv = sm.total_variation(pm[:-1], exact)
                    print(f"s={s}: accepted {g.accepted}, TV to the local limit {fmt(tv)}", file=sys.stderr)
                header = ["s", "c", "count", "empirical", "p_inf"]
            else:
                if not 1 <= args.n <= 3:
                    parser.error("sample uniformity supports --n 1, 2 or 3")
                res = sm.uniformity_chi_square(args.n, args.samples, args.seed, args.threads)
                rows = [(k, o, e) for k, (o, e) in enumerate(zip(res["observed"], res["expected"]))]
                header = ["class", "observed", "expected"]
                print(f"chi-square {fmt(res['statistic'])}, p-value {fmt(res['pvalue'])}", file=sys.stderr)
    except sm.SamplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    write_table(args.out, header, rows)
    return 0


# -- geodesic ----------------------------------------------------------------------


def cmd_geodesic(args, parser) -> int:
    from . import geodesic as geo

    try:
        if args.kind == "profile":
            rows = []
            for d in args.d:
                for s in range(1, d):
                    v = geo.geodesic_profile(s, d)
                    rows.append((d, s, v, float(v)))
            header = ["d", "s", "mean_count", "mean_count_float"]
        elif args.kind == "pmf":
            if args.t is None:
                law = geo.p_inf_terms(args.s)
            else:
                law = geo.p_geodesic_terms(args.s, args.t)
            rows = [(c, law(c), float(law(c))) for c in range(1, args.cmax + 1)]
            header = ["c", "p", "p_float"]
        elif args.kind == "far":
            law = geo.p_inf_far_terms()
            rows = [(c, law(c), float(law(c))) for c in range(1, args.cmax + 1)]
            header = ["c", "p", "p_float"]
        else:
            if args.t is None:
                parser.error("geodesic finite needs --t")
            rows = []
            for c in range(1, args.cmax + 1):
                v = geo.p_finite_n(c, args.s, args.t, args.size)
                rows.append((c, v, float(v)))
            header = ["c", "p", "p_float"]
    except geo.GeodesicError as exc:
        parser.error(str(exc))
    write_table(args.out, header, rows)
    return 0


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .sampler import default_threads

    p = argparse.ArgumentParser(prog="threepoint", description="Distance statistics of random planar quadrangulations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (atomic write); stdout when omitted")
    common.add_argument("--profile", action="store_true", help="print timings to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gf", parents=[common], help="series coefficients")
    g.add_argument("name", choices=sorted(GF_ARGS))
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--i", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--u", type=int)
    g.add_argument("--c", type=int)
    g.add_argument("--d", type=int_list, help="d12,d23,d31")
    g.add_argument("--method", choices=["closed", "recursive", "path_sum", "sum_form"])
    g.set_defaults(func=cmd_gf)

    v = sub.add_parser("verify", parents=[common], help="exact verification suites")
    v.add_argument("suite", choices=["all", "series", "oracle", "bijection"])
    v.add_argument("--order", type=int, default=16)
    v.add_argument("--max-stu", type=int, default=4)
    v.add_argument("--max-i", type=int, default=10)
    v.add_argument("--oracle-n", type=int, default=3)
    v.add_argument("--total-n", type=int, default=8)
    v.add_argument("--fuzz", type=int, default=200, help="bijection round trips")
    v.add_argument("--max-n", type=int, default=30)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("continuum", parents=[common], help="continuum densities on grids")
    c.add_argument("kind", choices=["rho2", "rho3", "rho_cond", "psi", "phi"])
    c.add_argument("--dmax", type=float, default=6.0)
    c.add_argument("--step", type=float, default=0.1)
    c.add_argument("--d12", type=float, default=1.0)
    c.set_defaults(func=cmd_continuum)

    s = sub.add_parser("sample", parents=[common], help="Monte Carlo")
    s.add_argument("kind", choices=["two", "three", "geodesic", "uniformity"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--s", type=int_list, default=[1, 2])
    s.add_argument("--d-min", type=int, default=30)
    s.add_argument("--pairs-per-map", type=int, default=4)
    s.add_argument("--threads", type=int, default=default_threads())
    s.set_defaults(func=cmd_sample)

    q = sub.add_parser("geodesic", parents=[common], help="geodesic-point statistics")
    q.add_argument("kind", choices=["profile", "pmf", "far", "finite"])
    q.add_argument("--s", type=int, default=1)
    q.add_argument("--t", type=int)
    q.add_argument("--d", type=int_list, default=[10, 20, 40])
    q.add_argument("--cmax", type=int, default=20)
    q.add_argument("--size", type=int, default=20, help="number of faces for 'finite'")
    q.set_defaults(func=cmd_geodesic)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    return args.func(args, sub)


if __name__ == "__main__":
    sys.exit(main())
