"""Command line entry point.

    instanton4 gen-config --n 5 --seed 7
    instanton4 check sigma-epi --seed 3 --out report.json
    instanton4 check five-secant --config lines.json
    instanton4 verify all --seed 42 --p 32003
    instanton4 report report.json

Every flag has an environment default with prefix INSTANTON4_ (for example
INSTANTON4_SEED=5 or INSTANTON4_RATIONALS=1); explicit flags win.
Exit codes: 0 all checks pass, 1 some check fails, 2 unparseable
configuration, 3 precondition failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import constructions as C
from .field import Field, FieldError
from .geometry import GeometryError, LineConfiguration, random_skew_config
from .io import ConfigError, dumps, load_reports, read_config, write_json

ENV_PREFIX = "INSTANTON4_"
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_PRECONDITION = 0, 1, 2, 3
SIGMA_RETRIES = 3


# ---------------------------------------------------------------------------
# checks: (config, seed, options) -> VerificationReport


def _five_secant(cfg: LineConfiguration, seed: int, opts) -> C.VerificationReport:
    if len(cfg) != 5:
        raise C.PreconditionError("five lines are required")
    if not cfg.is_skew:
        raise C.PreconditionError("lines are not pairwise skew")
    res = cfg.five_secant_status
    details = {"status": res.status, "witness": res.witness.to_json() if res.witness is not None else None}
    return C.VerificationReport("five-secant", cfg.field, "pass" if res.status == "none" else "fail", details, seed)


def _draw_a(seed: int, field: Field, attempt: int) -> tuple:
    return C.random_coefficients(random.Random(f"{seed}:{attempt}"), field)


def _sigma_epi(cfg, seed, opts) -> C.VerificationReport:
    """σ-epi with random nonzero a, re-drawn up to SIGMA_RETRIES times on failure."""
    tried = []
    rep = None
    IY = cfg.union_ideal()
    fixed = opts.a is not None
    for attempt in range(1 if fixed else SIGMA_RETRIES):
        a = tuple(cfg.field(x) for x in opts.a) if fixed else _draw_a(seed, cfg.field, attempt)
        rep = C.sigma_is_epi(C.sigma(cfg, a), IY)
        tried.append([str(cfg.field.lift(x)) for x in a])
        if rep.passed:
            break
    rep.seed = seed
    rep.details["attempts"] = tried
    return rep


def _sigma_for(cfg, seed, opts):
    a = tuple(cfg.field(x) for x in opts.a) if opts.a is not None else _draw_a(seed, cfg.field, 0)
    return C.sigma(cfg, a)


def _build_g(cfg, seed, opts):
    _, rep = C.build_G(_sigma_for(cfg, seed, opts))
    rep.seed = seed
    return rep


def _claims(cfg, seed, opts):
    rep = C.verify_claims(_sigma_for(cfg, seed, opts), samples=opts.samples, seed=seed)
    rep.seed = seed
    return rep


def _thooft(cfg, seed, opts):
    lines = cfg.lines if opts.config else random_skew_config(opts.n + 1, seed, cfg.field).lines
    _, rep = C.thooft_instanton(lines, class_seed=seed, field=cfg.field)
    return rep


def _with_seed(fn):
    def run(cfg, seed, opts):
        rep = fn(cfg)
        rep.seed = seed
        return rep

    return run


CHECKS = {
    "build-g": _build_g,
    "claims": _claims,
    "cohomology-iy3": _with_seed(C.check_cohomology_IY3),
    "degeneracy": _with_seed(C.check_degeneracy),
    "five-secant": _five_secant,
    "l1l4x": _with_seed(C.check_l1l4x_resolution),
    "sigma-epi": _sigma_epi,
    "thooft": _thooft,
    "triple-quadric": _with_seed(C.triple_quadric),
}
SUITE = ("build-g", "cohomology-iy3", "degeneracy", "five-secant", "l1l4x", "sigma-epi", "thooft", "triple-quadric")


# ---------------------------------------------------------------------------
# argument handling


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=int, default=None, help="prime field GF(p) (default 32003)")
    g.add_argument("--rationals", action="store_true", default=None, help="work over QQ")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON line configuration")
    p.add_argument("--out", default=None, help="write JSON here")
    p.add_argument("--samples", type=int, default=None, help="sampled lines per quadric (claims)")
    p.add_argument("--n", type=int, default=None, help="number of lines (gen-config) or instanton charge (thooft)")
    p.add_argument("--a", type=int, nargs=3, default=None, metavar=("A1", "A2", "A3"), help="fixed σ coefficients")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="instanton4", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gen-config", help="random pairwise skew lines (no 5-secant when n = 5)")
    _add_common(p)
    p = sub.add_parser("check", help="run one verifier")
    p.add_argument("name", choices=sorted(CHECKS))
    _add_common(p)
    p = sub.add_parser("verify", help="run a suite of verifiers")
    p.add_argument("suite", choices=["all"])
    _add_common(p)
    p = sub.add_parser("report", help="summarize JSON report files")
    p.add_argument("files", nargs="+")
    return parser


def _resolve(args) -> argparse.Namespace:
    """Fill unset flags from the environment, then from defaults."""
    if args.command == "report":
        return args
    if args.p is None and not args.rationals:
        if _env("RATIONALS", "") not in ("", "0"):
            args.rationals = True
        elif _env("P"):
            args.p = int(_env("P"))
    args.seed = args.seed if args.seed is not None else int(_env("SEED", 0))
    args.config = args.config or _env("CONFIG")
    args.out = args.out or _env("OUT")
    args.samples = args.samples if args.samples is not None else int(_env("SAMPLES", 20))
    default_n = 5 if args.command == "gen-config" else 4
    args.n = args.n if args.n is not None else int(_env("N", default_n))
    return args


def _field(args) -> Field | None:
    """The requested field, or None to use the config file's (default GF(32003))."""
    if args.rationals:
        return Field.rationals()
    return Field(args.p) if args.p is not None else None


def _config(args, field: Field | None, n: int = 5) -> LineConfiguration:
    if args.config:
        return read_config(args.config, field)
    return random_skew_config(n, args.seed, field or Field())


def _summary_line(rep: dict) -> str:
    return f"{rep['check']:<16} {rep['status'].upper():<5} field={_field_str(rep['field'])} seed={rep.get('seed')}"


def _field_str(data: dict) -> str:
    return "QQ" if data.get("rationals") else f"GF({data.get('p')})"


def run(argv=None) -> int:
    args = _resolve(build_parser().parse_args(argv))
    if args.command == "report":
        status = EXIT_PASS
        for path in args.files:
            for rep in load_reports(path):
                print(_summary_line(rep))
                if rep["status"] != "pass":
                    status = EXIT_FAIL
        return status
    try:
        field = _field(args)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "gen-config":
            cfg = random_skew_config(args.n, args.seed, field or Field())
            out = cfg.to_json(canonical=True)
            if args.out:
                write_json(args.out, out)
            print(dumps(out))
            return EXIT_PASS
        names = [args.name] if args.command == "check" else list(SUITE)
        cfg = _config(args, field)
        reports = []
        for name in sorted(names):
            rep = CHECKS[name](cfg, args.seed, args).to_json()
            reports.append(rep)
            print(_summary_line(rep))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (C.PreconditionError, GeometryError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    ok = all(r["status"] == "pass" for r in reports)
    if args.out:
        if args.command == "check":
            write_json(args.out, reports[0])
        else:
            suite = {"field": cfg.field.to_json(), "seed": args.seed, "status": "pass" if ok else "fail", "reports": reports}
            write_json(args.out, suite)
    return EXIT_PASS if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
