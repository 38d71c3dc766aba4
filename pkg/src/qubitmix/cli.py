"""Command-line entry point: ``qubitmix <subcommand> [flags]``.

Exit codes: 0 success/pass, 1 usage or contract error, 2 expected result
absent (failed verification, no violation found), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, stats
from .divergences import MODES, triangle_delta, violation_search
from .ensembles import SeededSampler
from .errors import NumericalFailureError, QubitMixError
from .mixing import MixCurve
from .verification import KIND_PARAMS, KINDS, pdf_for, support_for, verify_density

EXIT_OK, EXIT_USAGE, EXIT_ABSENT, EXIT_NUMERIC = 0, 1, 2, 3

AVERAGE_METHODS = {
    "entropy-equi": ("quadrature", "mc"),
    "entropy-qadd": ("quadrature", "mc"),
    "fidelity2": ("exact", "quadrature", "mc"),
    "page": ("exact",),
    "entropy-mean-n": ("mc",),
    "coherence-n": ("mc",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunManifest:
    subcommand: str
    params: dict
    seed: int | None
    version: str = __version__
    duration_s: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        if not d["extra"]:
            d.pop("extra")
        return d


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qubitmix", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--seed", type=_seed, default=0)
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    def orbit_params(sp, prefix=""):
        for name in ("mu", "nu", "r1", "r2"):
            sp.add_argument(f"--{prefix}{name}", type=float, default=None)

    d = sub.add_parser("density", help="emit a closed-form density curve as CSV/JSON")
    d.add_argument("--kind", required=True, choices=KINDS)
    orbit_params(d)
    d.add_argument("--grid", type=_positive_int, default=1001)
    d.add_argument("--format", choices=("csv", "json"), default="csv")
    common(d)

    v = sub.add_parser("verify", help="Monte Carlo vs closed-form KS check")
    v.add_argument("--kind", required=True, choices=KINDS)
    orbit_params(v)
    orbit_params(v, prefix="sample-")
    v.add_argument("--samples", type=_positive_int, default=1_000_000)
    v.add_argument("--threshold", type=float, default=None)
    common(v)

    a = sub.add_parser("averages", help="average entropies, fidelity and Page's formula")
    a.add_argument("--which", required=True, choices=tuple(AVERAGE_METHODS))
    a.add_argument("--method", default=None, choices=("quadrature", "mc", "exact"))
    a.add_argument("--samples", type=_positive_int, default=1_000_000)
    a.add_argument("--m", type=int, default=2)
    a.add_argument("--n", type=int, default=2)
    a.add_argument("--n-mix", type=int, default=2, help="number of states averaged (entropy-mean-n, coherence-n)")
    a.add_argument("--bits", action="store_true", help="report Page's value in bits instead of nats")
    a.add_argument("--epsabs", type=float, default=1e-7)
    common(a)

    s = sub.add_parser("search-violations", help="random search for triangle-inequality violations")
    s.add_argument("--mode", choices=MODES, default="mixed")
    s.add_argument("--n-triples", type=_positive_int, default=10_000)
    s.add_argument("--samples", type=_positive_int, default=None, help="alias for --n-triples")
    s.add_argument("--check-triple", type=float, nargs=9, default=None, metavar="X",
                   help="evaluate Delta for three Bloch vectors instead of searching")
    common(s)

    g = sub.add_parser("gsweep", help="sweep S(a[+]_t b)+S(b[+]_t a) and g2(t) over t")
    g.add_argument("--r1", type=float, required=True)
    g.add_argument("--r2", type=float, required=True)
    g.add_argument("--theta", type=float, required=True)
    g.add_argument("--grid", type=_positive_int, default=101)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    common(g)
    return p


# --- output helpers ------------------------------------------------------------------------------


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _write_text(path, text: str) -> None:
    fh, close = _open_out(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def _csv(manifest: RunManifest, header: list[str], rows: np.ndarray, comments: list[str] = ()) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(manifest.as_dict(), sort_keys=True) + "\n")
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(repr(float(x)) for x in row) + "\n")
    return buf.getvalue()


def _json(manifest: RunManifest, result) -> str:
    return json.dumps({"manifest": manifest.as_dict(), "result": result}, indent=2, sort_keys=True) + "\n"


def _params(args, names) -> dict:
    return {n: getattr(args, n) for n in names}


# --- subcommands ---------------------------------------------------------------------------------


def cmd_density(args, t0: float) -> int:
    params = _params(args, KIND_PARAMS[args.kind])
    pdf = pdf_for(args.kind, params)
    support = support_for(args.kind, params)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    upper = math.pi if args.kind == "angle" else 1.0
    xs = np.union1d(np.linspace(0.0, upper, args.grid), np.array(support.endpoints))
    ys = np.asarray(pdf(xs), dtype=float)
    manifest = RunManifest("density", {"kind": args.kind, "grid": args.grid, **params}, args.seed,
                           duration_s=time.perf_counter() - t0,
                           extra={"support": [list(iv) for iv in support.intervals]})
    xlabel = "theta" if args.kind == "angle" else ("lambda" if args.kind.startswith("lambda") or args.kind == "maxeig" else "r")
    if args.format == "csv":
        _write_text(args.out, _csv(manifest, [xlabel, "density"], np.column_stack([xs, ys])))
    else:
        _write_text(args.out, _json(manifest, {xlabel: xs.tolist(), "density": ys.tolist()}))
    return EXIT_OK


def cmd_verify(args, t0: float) -> int:
    if args.samples < 10_000:
        raise UsageError("--samples must be at least 10^4")
    names = KIND_PARAMS[args.kind]
    params = _params(args, names)
    sample_params = {n: (getattr(args, f"sample_{n}") if getattr(args, f"sample_{n}") is not None else params[n])
                     for n in names}
    report = verify_density(args.kind, params, args.samples, SeededSampler(args.seed),
                            sample_params=sample_params, threshold=args.threshold)
    manifest = RunManifest("verify", {"kind": args.kind, "samples": args.samples, **params,
                                      **{f"sample_{k}": v for k, v in sample_params.items()}},
                           args.seed, duration_s=time.perf_counter() - t0)
    _write_text(args.out, _json(manifest, report.as_dict()))
    return EXIT_OK if report.passed else EXIT_ABSENT


def cmd_averages(args, t0: float) -> int:
    allowed = AVERAGE_METHODS[args.which]
    method = args.method or allowed[0]
    if method not in allowed:
        raise UsageError(f"--which {args.which} supports methods {', '.join(allowed)}, not {method!r}")
    cfg = stats.QuadratureConfig(epsabs=args.epsabs, epsrel=args.epsabs)
    sampler = SeededSampler(args.seed)
    w = args.workers
    result: dict = {"which": args.which, "method": method}
    params: dict = {"which": args.which, "method": method}

    if method == "mc":
        params.update(samples=args.samples, workers=w)
        if args.which in ("entropy-mean-n", "coherence-n"):
            params["n_mix"] = args.n_mix
        est = {
            "entropy-equi": lambda: stats.mc_avg_entropy_equi_hs(args.samples, sampler, w),
            "entropy-qadd": lambda: stats.mc_avg_entropy_qadd_hs(args.samples, sampler, w),
            "fidelity2": lambda: stats.mc_avg_fidelity_squared(args.samples, sampler, w),
            "entropy-mean-n": lambda: stats.mc_avg_entropy_mean_n(args.n_mix, args.samples, sampler, w),
            "coherence-n": lambda: stats.mc_avg_coherence_n(args.n_mix, args.samples, sampler, w),
        }[args.which]()
        result.update(value=est.value, error=est.std_error, n_samples=est.n_samples, seed=est.seed)
    elif method == "quadrature":
        params.update(epsabs=cfg.epsabs, inner_epsabs=cfg.inner_epsabs, rule=cfg.rule)
        fn = {
            "entropy-equi": stats.avg_entropy_equi_hs,
            "entropy-qadd": stats.avg_entropy_qadd_hs,
            "fidelity2": stats.avg_fidelity_squared_quadrature,
        }[args.which]
        result.update(value=fn(cfg), error=cfg.epsabs)
    elif args.which == "fidelity2":
        result.update(value=stats.avg_fidelity_squared_exact(), error=0.0, formula="(1 + (3*pi/16)**2) / 2")
    else:
        exact = stats.page_entropy_exact(args.m, args.n)
        params.update(m=args.m, n=args.n, bits=args.bits)
        result.update(value=stats.page_entropy(args.m, args.n, bits=args.bits), error=0.0,
                      exact=str(exact), unit="bits" if args.bits else "nats",
                      value_nats=float(exact), value_bits=float(exact) / stats.LN2)

    manifest = RunManifest("averages", params, args.seed,
                           duration_s=time.perf_counter() - t0)
    _write_text(args.out, _json(manifest, result))
    return EXIT_OK


def cmd_search_violations(args, t0: float) -> int:
    if args.check_triple is not None:
        v = np.array(args.check_triple, dtype=float).reshape(3, 3)
        delta, delta_p = triangle_delta(v[0], v[1], v[2])
        manifest = RunManifest("search-violations", {"check_triple": args.check_triple}, args.seed,
                               duration_s=time.perf_counter() - t0)
        _write_text(args.out, _json(manifest, {"vectors": v.tolist(), "delta": delta, "delta_prime": delta_p}))
        return EXIT_OK
    n = args.samples if args.samples is not None else args.n_triples
    if n < 1:
        raise UsageError("--n-triples must be at least 1")
    reports = violation_search(args.mode, n, SeededSampler(args.seed))
    n_d = sum(r.violates_delta for r in reports)
    n_dp = sum(r.violates_delta_prime for r in reports)
    manifest = RunManifest("search-violations", {"mode": args.mode, "n_triples": n}, args.seed,
                           duration_s=time.perf_counter() - t0)
    lines = [r.to_json() for r in reports]
    summary = {"summary": {"n_triples": n, "delta_violations": n_d, "delta_prime_violations": n_dp,
                           "manifest": manifest.as_dict()}}
    lines.append(json.dumps(summary, sort_keys=True))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if reports else EXIT_ABSENT


def cmd_gsweep(args, t0: float) -> int:
    if args.grid < 3:
        raise UsageError("--grid must be at least 3")
    curve = MixCurve(args.r1, args.r2, args.theta)
    ts = np.linspace(0.0, 1.0, args.grid)
    s = np.asarray(curve.s(ts))
    g = np.asarray(curve.g2(ts))
    step = 1.0 / (args.grid - 1)
    # ties (flat curves) resolve to the grid point closest to 1/2
    best = np.flatnonzero(s >= s.max() - 1e-15)
    t_star = float(ts[best[np.argmin(np.abs(ts[best] - 0.5))]])
    ok = abs(t_star - 0.5) <= step + 1e-12
    summary = {"argmax_t": t_star, "max_s": float(s.max()), "g2_half": float(curve.g2(0.5)),
               "grid_step": step, "argmax_near_half": ok}
    manifest = RunManifest("gsweep", {"r1": args.r1, "r2": args.r2, "theta": args.theta, "grid": args.grid},
                           args.seed, duration_s=time.perf_counter() - t0)
    if args.format == "csv":
        text = _csv(manifest, ["t", "s", "g2"], np.column_stack([ts, s, g]),
                    comments=[json.dumps(summary, sort_keys=True)])
    else:
        text = _json(manifest, {"t": ts.tolist(), "s": s.tolist(), "g2": g.tolist(), **summary})
    _write_text(args.out, text)
    if args.out not in (None, "-"):
        print(json.dumps(summary, sort_keys=True))
    return EXIT_OK if ok else EXIT_ABSENT


COMMANDS = {
    "density": cmd_density,
    "verify": cmd_verify,
    "averages": cmd_averages,
    "search-violations": cmd_search_violations,
    "gsweep": cmd_gsweep,
}


def main(argv=None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be at least 1")
        return COMMANDS[args.command](args, t0)
    except UsageError as e:
        print(f"qubitmix: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailureError as e:
        print(f"qubitmix: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QubitMixError, ValueError) as e:
        print(f"qubitmix: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"qubitmix: I/O error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
